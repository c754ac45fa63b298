"""Tests, error probabilities, the pinched threshold test and the optimal trade-off.

A test is an operator ``0 <= A <= I``; ``A`` accepts the null hypothesis
``rho_n``.  The threshold test at exponent ``a`` is the projection
``{rho_bar_n - e^{na} sigma_n > 0}`` built from the pinched state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.stats import unitary_group

from .certificates import OrderCertificate, ScalarCertificate, scalar_eq, scalar_leq
from .errors import DimensionError, InvalidTestError
from .pinching import PinchedPair, pinched_pair
from .spectral import (
    DEFAULT_CAP,
    SpectralDecomposition,
    as_hermitian,
    operator_leq,
    operator_norm,
    positive_part_projection,
    sign_projections,
    trace_product as _tr,
)
from .states import StatePair, tensor_power

TEST_TOL = 1e-10


class Test:
    """Acceptance operator ``A`` with ``0 <= A <= I``."""

    __test__ = False  # keep pytest from collecting this class

    def __init__(self, op, tol: float = TEST_TOL):
        op = as_hermitian(op)
        eye = np.eye(op.shape[0])
        self.lower = operator_leq(np.zeros_like(op), op, tol, "0 <= A", "0", "A")
        self.upper = operator_leq(op, eye, tol, "A <= I", "A", "I")
        if not (self.lower.holds and self.upper.holds):
            raise InvalidTestError(
                f"not a test: min eig(A) = {self.lower.margin:.3e}, min eig(I - A) = {self.upper.margin:.3e}"
            )
        self.op = op

    @property
    def dim(self) -> int:
        return self.op.shape[0]

    def __repr__(self):
        return f"Test(dim={self.dim})"


@dataclass(frozen=True)
class ErrorPair:
    alpha: float
    beta: float
    n: int
    a: float | None = None
    raw_alpha: float = float("nan")
    raw_beta: float = float("nan")


def _errors(rho_n: np.ndarray, sigma_n: np.ndarray, a: np.ndarray) -> tuple[float, float]:
    tr_rho_a = _tr(rho_n, a)
    tr_sigma_a = _tr(sigma_n, a)
    alpha = complex(np.trace(rho_n)) - tr_rho_a
    if max(abs(alpha.imag), abs(tr_sigma_a.imag)) > 1e-10:
        raise DimensionError("error probabilities have a non-negligible imaginary part; operators not Hermitian?")
    return alpha.real, tr_sigma_a.real


def error_probabilities(
    pair: StatePair,
    n: int,
    test: Test,
    a: float | None = None,
    cap: int = DEFAULT_CAP,
    pinched: PinchedPair | None = None,
) -> ErrorPair:
    """``alpha = Tr[rho_n (I - A)]``, ``beta = Tr[sigma_n A]``, clamped to ``[0, 1]`` on report."""
    if pinched is not None:
        rho_n, sigma_n = pinched.rho_n.op, pinched.sigma_n.op
    else:
        rho_n = tensor_power(pair.rho, n, cap).op
        sigma_n = tensor_power(pair.sigma, n, cap).op
    if test.dim != rho_n.shape[0]:
        raise DimensionError(f"test has dim {test.dim}, states have dim {rho_n.shape[0]}")
    alpha, beta = _errors(rho_n, sigma_n, test.op)
    return ErrorPair(
        alpha=min(max(alpha, 0.0), 1.0),
        beta=min(max(beta, 0.0), 1.0),
        n=n,
        a=a,
        raw_alpha=alpha,
        raw_beta=beta,
    )


def stein_test(
    pair: StatePair,
    n: int,
    a: float,
    cluster_tol: float | None = None,
    cap: int = DEFAULT_CAP,
    pinched: PinchedPair | None = None,
) -> Test:
    """The projection ``{rho_bar_n - e^{na} sigma_n > 0}``."""
    pp = pinched if pinched is not None else pinched_pair(pair, n, cluster_tol, cap)
    x = pp.rho_bar.op - math.exp(pp.n * a) * pp.sigma_n.op
    return Test(positive_part_projection(x, cluster_tol))


def stein_sweep(
    pair: StatePair,
    n_range: Iterable[int],
    a: float,
    cluster_tol: float | None = None,
    cap: int = DEFAULT_CAP,
) -> list[ErrorPair]:
    out = []
    for n in sorted(n_range):
        pp = pinched_pair(pair, n, cluster_tol, cap)
        test = stein_test(pair, n, a, cluster_tol, pinched=pp)
        out.append(error_probabilities(pair, n, test, a=a, pinched=pp))
    return out


def beta_step_certificate(pp: PinchedPair, a: float, test: Test, slack: float = 1e-8) -> OrderCertificate:
    """``(rho_bar_n - e^{na} sigma_n) S >= 0`` (symmetrized), the step behind ``beta <= e^{-na}``."""
    x = pp.rho_bar.op - math.exp(pp.n * a) * pp.sigma_n.op
    y = x @ test.op
    sym = (y + y.conj().T) / 2
    scaled = slack * max(1.0, operator_norm(x))
    return operator_leq(np.zeros_like(sym), sym, scaled, f"0 <= (rho_bar - e^na sigma) S [n={pp.n}, a={a:g}]", "0", "(rho_bar - e^na sigma) S")


def pinching_exchange_certificate(pp: PinchedPair, test: Test, slack: float = 1e-10) -> ScalarCertificate:
    """``Tr[rho_n (I - S)] = Tr[rho_bar_n (I - S)]`` for a test commuting with ``sigma_n``."""
    lhs, _ = _errors(pp.rho_n.op, pp.sigma_n.op, test.op)
    rhs, _ = _errors(pp.rho_bar.op, pp.sigma_n.op, test.op)
    return scalar_eq(f"Tr[rho_n(I-S)] = Tr[rho_bar_n(I-S)] [n={pp.n}]", lhs, rhs, slack)


@dataclass(frozen=True)
class OptimalTest:
    """Neyman-Pearson test ``{rho_n - t sigma_n > 0} + gamma {rho_n - t sigma_n = 0}``."""

    epsilon: float
    beta: float
    alpha: float
    threshold: float
    gamma: float
    test: Test


def _breakpoints(rho_n, sigma_n) -> np.ndarray:
    """Distinct eigenvalues of ``sigma^{-1/2} rho sigma^{-1/2}``, clustered on a log scale."""
    w = sigma_n.power(-0.5)
    whitened = as_hermitian(w @ rho_n.op @ w)
    ts = np.linalg.eigvalsh(whitened)
    logs = np.log(np.clip(ts, np.finfo(float).tiny, None))
    spec = SpectralDecomposition.from_eigenpairs(logs, np.eye(len(logs)), cluster_tol=1e-9)
    return np.exp(spec.distinct_eigenvalues)


def optimal_beta(
    pair: StatePair,
    n: int,
    epsilon: float,
    cluster_tol: float | None = None,
    cap: int = DEFAULT_CAP,
) -> OptimalTest:
    """Smallest ``beta`` over all tests with ``alpha <= epsilon``.

    Bisects the eigenvalue breakpoints ``t`` of the whitened operator for the
    first threshold whose strict test ``{rho_n - t sigma_n > 0}`` has
    ``alpha >= epsilon``, then randomizes on the boundary eigenspace so that
    ``alpha == epsilon``.
    """
    rho_n = tensor_power(pair.rho, n, cap)
    sigma_n = tensor_power(pair.sigma, n, cap)
    dim = rho_n.dim
    if epsilon >= 1:
        return OptimalTest(epsilon, 0.0, 1.0, math.inf, 0.0, Test(np.zeros((dim, dim))))
    if epsilon <= 0:
        return OptimalTest(epsilon, 1.0, 0.0, 0.0, 0.0, Test(np.eye(dim)))

    ts = _breakpoints(rho_n, sigma_n)
    cache: dict[int, tuple] = {}

    def at(k):
        if k not in cache:
            x = rho_n.op - ts[k] * sigma_n.op
            p_pos, p_zero = sign_projections(x, cluster_tol)
            alpha_strict, beta_strict = _errors(rho_n.op, sigma_n.op, p_pos)
            rho_zero = _tr(rho_n.op, p_zero).real
            sigma_zero = _tr(sigma_n.op, p_zero).real
            cache[k] = (alpha_strict, beta_strict, rho_zero, sigma_zero, p_pos, p_zero)
        return cache[k]

    lo, hi = 0, len(ts) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if at(mid)[0] >= epsilon:
            hi = mid
        else:
            lo = mid + 1
    alpha_strict, beta_strict, rho_zero, sigma_zero, p_pos, p_zero = at(lo)
    gamma = (alpha_strict - epsilon) / rho_zero if rho_zero > 0 else 0.0
    gamma = min(max(gamma, 0.0), 1.0)
    op = p_pos + gamma * p_zero
    alpha = alpha_strict - gamma * rho_zero
    beta = beta_strict + gamma * sigma_zero
    return OptimalTest(epsilon, beta, alpha, float(ts[lo]), gamma, Test(op))


def random_test(dim: int, seed: int) -> Test:
    """``U diag(u) U*`` with Haar ``U`` and ``u`` uniform on ``[0, 1]``."""
    rng = np.random.default_rng(seed)
    u = unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.ones((1, 1))
    return Test((u * rng.uniform(0, 1, dim)) @ u.conj().T)


def np_dominance_certificates(
    pair: StatePair,
    n: int,
    epsilon: float,
    count: int,
    seed: int,
    slack: float = 1e-9,
    cap: int = DEFAULT_CAP,
    optimum: OptimalTest | None = None,
) -> list[ScalarCertificate]:
    """Check ``beta(A) >= beta*`` for ``count`` seeded random tests with ``alpha(A) <= epsilon``.

    Half the samples are random tests pulled toward ``I`` until their
    ``alpha`` drops below ``epsilon``; the other half are small convex
    perturbations of the optimal test itself, which probe the optimum
    closely.
    """
    opt = optimum if optimum is not None else optimal_beta(pair, n, epsilon, cap=cap)
    rho_n = tensor_power(pair.rho, n, cap).op
    sigma_n = tensor_power(pair.sigma, n, cap).op
    dim = rho_n.shape[0]
    eye = np.eye(dim)
    rng = np.random.default_rng(seed)
    out = []
    k = 0
    while len(out) < count:
        r = random_test(dim, int(rng.integers(2**63))).op
        alpha_r, _ = _errors(rho_n, sigma_n, r)
        target = epsilon * rng.uniform(0.0, 1.0)
        lam = 0.0 if alpha_r <= target else 1.0 - target / alpha_r
        cand = (1 - lam) * r + lam * eye
        if k % 2 == 1:
            mu = rng.uniform(0.0, 0.05)
            cand = (1 - mu) * opt.test.op + mu * cand
        k += 1
        alpha_c, beta_c = _errors(rho_n, sigma_n, cand)
        if alpha_c > epsilon:
            # rounding pushed the sample just outside the constraint set
            continue
        out.append(scalar_leq(f"beta* <= beta(A) [n={n}, eps={epsilon:g}, k={k}]", opt.beta, beta_c, slack))
    return out
