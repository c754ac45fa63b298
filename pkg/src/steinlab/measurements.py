"""Measurement statistics and the measured relative entropy.

Covers outcome distributions of POVMs, the classical divergence they induce,
its monotonicity bound, and two finite-n routes showing that the pinched
state's divergence reaches the quantum relative entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .certificates import OrderCertificate, ScalarCertificate, scalar_eq, scalar_leq, skipped
from .errors import DimensionError, InvalidMeasurementError
from .hypothesis import Test, error_probabilities
from .pinching import PVM, PinchedPair, pinched_pair, random_pvm
from .spectral import DEFAULT_CAP, as_hermitian, eig_hermitian, operator_leq, operator_norm
from .states import DensityOperator, StatePair, binary_divergence, kl_divergence, relative_entropy, tensor_power

POVM_TOL = 1e-10


class POVM:
    """Resolution of the identity by positive operators."""

    def __init__(self, elements, labels=None, tol: float = POVM_TOL):
        elements = [as_hermitian(e) for e in elements]
        if not elements:
            raise InvalidMeasurementError("a POVM needs at least one element")
        dim = elements[0].shape[0]
        if any(e.shape != (dim, dim) for e in elements):
            raise DimensionError("POVM elements differ in shape")
        dev = float(np.abs(sum(elements) - np.eye(dim)).max())
        if dev > tol:
            raise InvalidMeasurementError(f"elements sum to I only within {dev:.3e}")
        for i, e in enumerate(elements):
            low = float(np.linalg.eigvalsh(e)[0])
            if low < -tol:
                raise InvalidMeasurementError(f"element {i} has eigenvalue {low:.3e} < 0")
        self.elements = elements
        self.labels = list(labels) if labels is not None else [str(i) for i in range(len(elements))]

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self):
        return len(self.elements)

    @classmethod
    def from_pvm(cls, m: PVM) -> "POVM":
        return cls(m.projections, m.labels)

    @classmethod
    def from_test(cls, test: Test) -> "POVM":
        return cls([test.op, np.eye(test.dim) - test.op], ["accept", "reject"])


def outcome_distribution(rho: DensityOperator, m: POVM) -> np.ndarray:
    """``p_i = Tr[rho M_i]``; rounding negatives down to ``-1e-10`` are clamped to 0."""
    if rho.dim != m.dim:
        raise DimensionError(f"state of dim {rho.dim} vs POVM of dim {m.dim}")
    p = np.array([np.einsum("ij,ji->", rho.op, e).real for e in m.elements])
    if p.min() < -POVM_TOL:
        raise InvalidMeasurementError(f"negative outcome probability {p.min():.3e}")
    return np.clip(p, 0.0, None)


def measured_divergence(rho: DensityOperator, sigma: DensityOperator, m: POVM) -> float:
    """Kullback divergence between the outcome distributions of ``rho`` and ``sigma``."""
    return kl_divergence(outcome_distribution(rho, m), outcome_distribution(sigma, m))


def monotonicity_certificate(pair: StatePair, n: int, m: POVM, cap: int = DEFAULT_CAP, slack: float = 1e-9) -> ScalarCertificate:
    """``(1/n) D_M(rho_n || sigma_n) <= D(rho || sigma)``."""
    rho_n = tensor_power(pair.rho, n, cap)
    sigma_n = tensor_power(pair.sigma, n, cap)
    lhs = measured_divergence(rho_n, sigma_n, m) / n
    return scalar_leq(f"(1/n) D_M(rho_n||sigma_n) <= D [n={n}]", lhs, relative_entropy(pair.rho, pair.sigma), slack)


@dataclass(frozen=True)
class HiaiPetzReport:
    n: int
    d: int
    relative_entropy: float
    per_copy_pinched: float
    bound: float

    @property
    def gap(self) -> float:
        return self.relative_entropy - self.per_copy_pinched

    def certificates(self, slack: float = 1e-9) -> list[ScalarCertificate]:
        return [
            scalar_leq(f"0 <= D - (1/n) D(rho_bar||sigma_n) [n={self.n}]", 0.0, self.gap, slack),
            scalar_leq(f"D - (1/n) D(rho_bar||sigma_n) <= (d/n) log(n+1) [n={self.n}]", self.gap, self.bound, slack),
        ]

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.certificates())


def hiai_petz_gap(
    pair: StatePair,
    n: int,
    cluster_tol: float | None = None,
    cap: int = DEFAULT_CAP,
    pinched: PinchedPair | None = None,
) -> HiaiPetzReport:
    pp = pinched if pinched is not None else pinched_pair(pair, n, cluster_tol, cap)
    return HiaiPetzReport(
        n=n,
        d=pair.d,
        relative_entropy=relative_entropy(pair.rho, pair.sigma),
        per_copy_pinched=relative_entropy(pp.rho_bar, pp.sigma_n) / n,
        bound=pair.d / n * math.log(n + 1),
    )


def joint_eigen_pvm(pp: PinchedPair, cluster_tol: float | None = None) -> PVM:
    """PVM diagonalizing ``sigma_n`` and ``rho_bar_n`` simultaneously.

    Each eigenspace of ``sigma_n`` is split further by the clustered spectrum
    of ``rho_bar_n`` restricted to it.
    """
    bases, labels = [], []
    for j, basis in enumerate(pp.pvm.bases):
        block = basis.conj().T @ pp.rho_bar.op @ basis
        spec = eig_hermitian(block, cluster_tol)
        for i in range(spec.v):
            bases.append(basis @ spec.basis(i))
            labels.append(f"sigma:{pp.pvm.labels[j]}/rho_bar:{spec.distinct_eigenvalues[i]:.17g}")
    return PVM(bases=bases, labels=labels)


def pinched_pvm_equality(
    pair: StatePair,
    n: int,
    cluster_tol: float | None = None,
    cap: int = DEFAULT_CAP,
    slack: float = 1e-8,
    pinched: PinchedPair | None = None,
) -> ScalarCertificate:
    """``(1/n) D(rho_bar_n || sigma_n) = (1/n) D_M(rho_n || sigma_n)`` for the joint eigen-PVM ``M``."""
    pp = pinched if pinched is not None else pinched_pair(pair, n, cluster_tol, cap)
    m = POVM.from_pvm(joint_eigen_pvm(pp, cluster_tol))
    lhs = relative_entropy(pp.rho_bar, pp.sigma_n) / n
    rhs = measured_divergence(pp.rho_n, pp.sigma_n, m) / n
    return scalar_eq(f"(1/n) D(rho_bar||sigma_n) = (1/n) D_M(rho_n||sigma_n) [n={n}]", lhs, rhs, slack)


def divergence_chain_certificate(
    pair: StatePair,
    n: int,
    test: Test,
    cap: int = DEFAULT_CAP,
    slack: float = 1e-9,
    pinched: PinchedPair | None = None,
) -> list[ScalarCertificate]:
    """Two links from data processing on the two-outcome measurement ``{A, I - A}``.

    ``D >= (1/n) d(alpha || 1 - beta) >= -(log 2)/n - (1 - alpha)(1/n) log beta``.
    Skipped when ``beta`` is 0 or 1, where the binary divergence degenerates.
    """
    errs = error_probabilities(pair, n, test, cap=cap, pinched=pinched)
    alpha, beta = errs.alpha, errs.beta
    names = (
        f"(1/n) d(alpha||1-beta) <= D [n={n}]",
        f"-(log 2)/n - (1-alpha)(1/n) log beta <= (1/n) d(alpha||1-beta) [n={n}]",
    )
    if not 0 < beta < 1:
        return [skipped(c, f"degenerate beta = {beta!r}") for c in names]
    dd = binary_divergence(alpha, 1 - beta) / n
    d = relative_entropy(pair.rho, pair.sigma)
    low = -math.log(2) / n - (1 - alpha) * math.log(beta) / n
    return [scalar_leq(names[0], dd, d, slack), scalar_leq(names[1], low, dd, slack)]


def log_monotonicity_certificate(pp: PinchedPair, rel_slack: float = 1e-7) -> OrderCertificate:
    """``log rho_n <= log rho_bar_n + log v(sigma_n) I``."""
    log_rho = pp.rho_n.log()
    rhs = pp.rho_bar.log() + math.log(pp.v) * np.eye(pp.rho_n.dim)
    return operator_leq(
        log_rho, rhs, rel_slack * operator_norm(log_rho), f"log rho_n <= log rho_bar_n + log v [n={pp.n}]", "log rho_n", "log rho_bar_n + log v"
    )


def random_povm(dim: int, seed: int, kind: str | None = None) -> POVM:
    """Seeded random measurement.

    ``kind="pvm"`` gives a Haar-random basis coarse-grained into a random
    number of blocks; ``kind="general"`` normalizes random Wishart operators
    into a POVM.  ``None`` alternates on the seed's parity.
    """
    if kind is None:
        kind = "pvm" if seed % 2 == 0 else "general"
    if kind == "pvm":
        return POVM.from_pvm(random_pvm(dim, seed))
    if kind != "general":
        raise ValueError(f"unknown POVM kind {kind!r}")
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 2 * dim + 1))
    raw = []
    for _ in range(k):
        x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        x = x[:, : int(rng.integers(1, dim + 1))]
        raw.append(x @ x.conj().T)
    w, u = np.linalg.eigh(sum(raw))
    inv_sqrt = (u * w**-0.5) @ u.conj().T
    return POVM([inv_sqrt @ g @ inv_sqrt for g in raw])

