"""The exponent function psi(s) and certified error-exponent bounds.

``psi(s) = -log Tr[rho sigma^{s/2} rho^{-s} sigma^{s/2}]`` is always
evaluated on the single-copy operators.  For the threshold test ``S`` at
exponent ``a`` and every ``0 <= s <= 1``::

    alpha_n(S) <= (n+1)^{sd} exp(n (a s - psi(s)))
    beta_n(S)  <= exp(-n a)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .certificates import ScalarCertificate, scalar_eq, scalar_leq
from .hypothesis import error_probabilities, stein_test
from .pinching import PinchedPair, pinched_pair
from .spectral import DEFAULT_CAP, trace_product as _tr
from .states import StatePair, relative_entropy

ALPHA_SLACK = 1e-10
BETA_SLACK = 1e-12
DEFAULT_S_GRID = tuple(round(0.05 * k, 10) for k in range(21))

_GOLDEN = (math.sqrt(5) - 1) / 2


def psi(pair: StatePair, s: float) -> float:
    if not 0 <= s <= 1:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    rho = pair.rho
    half = pair.sigma.power(s / 2)
    val = _tr(rho.op, half @ rho.power(-s) @ half).real
    return -math.log(val)


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


@dataclass(frozen=True)
class SlopeReport:
    """Finite-difference evidence for ``psi(0) = 0`` and ``psi'(0) = D``."""

    h: float
    relative_entropy: float
    psi0: float
    forward_slope: float
    richardson_slope: float
    certificates: tuple[ScalarCertificate, ...]

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.certificates)


def psi_zero_slope_check(pair: StatePair, h: float = 1e-4) -> SlopeReport:
    """Forward difference at 0 and its Richardson extrapolation over ``(h, h/2)``.

    The forward difference must sit within ``10 (1 + D^2) h`` of ``D``; the
    extrapolated slope within ``1e-6 (1 + |D|)``.
    """
    if not 0 < h <= 1e-3:
        raise ValueError("h must lie in (0, 1e-3]")
    d = relative_entropy(pair.rho, pair.sigma)
    p0 = psi(pair, 0.0)
    fwd = (psi(pair, h) - p0) / h
    fwd_half = (psi(pair, h / 2) - p0) / (h / 2)
    rich = 2 * fwd_half - fwd
    certs = (
        scalar_eq("psi(0) = 0", p0, 0.0, 1e-10),
        scalar_leq("|forward slope - D| <= 10 (1 + D^2) h", abs(fwd - d), 10 * (1 + d * d) * h, 0.0),
        scalar_leq("|Richardson slope - D| <= 1e-6 (1 + |D|)", abs(rich - d), 1e-6 * (1 + abs(d)), 0.0),
    )
    return SlopeReport(h, d, p0, fwd, rich, certs)


def _golden_max(g, lo: float, hi: float, xtol: float) -> float:
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    g1, g2 = g(x1), g(x2)
    while hi - lo > xtol:
        if g1 >= g2:
            hi, x2, g2 = x2, x1, g1
            x1 = hi - _GOLDEN * (hi - lo)
            g1 = g(x1)
        else:
            lo, x1, g1 = x1, x2, g2
            x2 = lo + _GOLDEN * (hi - lo)
            g2 = g(x2)
    return (lo + hi) / 2


def best_exponent(pair: StatePair, a: float, grid_points: int = 101, xtol: float = 1e-6) -> tuple[float, float]:
    """Maximize ``g(s) = -a s + psi(s)`` over ``[0, 1]``.

    A uniform grid locates the best cell, golden-section search refines it.
    The returned point is never worse than the best grid point.
    """

    def g(s):
        return -a * s + psi(pair, s)

    grid = np.linspace(0.0, 1.0, grid_points)
    vals = np.array([g(s) for s in grid])
    k = int(np.argmax(vals))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, grid_points - 1)]
    s_ref = _golden_max(g, lo, hi, xtol)
    g_ref = g(s_ref)
    if g_ref >= vals[k]:
        return float(s_ref), float(g_ref)
    return float(grid[k]), float(vals[k])


@dataclass(frozen=True)
class ExponentReport:
    s: float
    psi: float
    a: float
    n: int
    d: int
    measured_alpha: float
    measured_beta: float
    log_alpha_bound: float
    alpha_bound: float = field(init=False)
    beta_bound: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha_bound", _safe_exp(self.log_alpha_bound))
        object.__setattr__(self, "beta_bound", math.exp(-self.n * self.a))

    @property
    def alpha_certificate(self) -> ScalarCertificate:
        return scalar_leq(
            f"alpha_n <= (n+1)^(sd) e^(n(as-psi(s))) [n={self.n}, a={self.a:g}, s={self.s:g}]",
            self.measured_alpha,
            self.alpha_bound,
            ALPHA_SLACK,
        )

    @property
    def beta_certificate(self) -> ScalarCertificate:
        return scalar_leq(f"beta_n <= e^(-na) [n={self.n}, a={self.a:g}]", self.measured_beta, self.beta_bound, BETA_SLACK)

    @property
    def holds(self) -> bool:
        return self.alpha_certificate.holds and self.beta_certificate.holds


def alpha_bound_log(n: int, d: int, a: float, s: float, psi_s: float) -> float:
    return s * d * math.log(n + 1) + n * (a * s - psi_s)


def certify_theorem3(
    pair: StatePair,
    n: int,
    a: float,
    s_grid: Sequence[float] = DEFAULT_S_GRID,
    cluster_tol: float | None = None,
    cap: int = DEFAULT_CAP,
    pinched: PinchedPair | None = None,
) -> list[ExponentReport]:
    """Build the threshold test once and check both error bounds at every ``s``."""
    if any(not 0 <= s <= 1 for s in s_grid):
        raise ValueError("s grid must lie inside [0, 1]")
    pp = pinched if pinched is not None else pinched_pair(pair, n, cluster_tol, cap)
    test = stein_test(pair, n, a, cluster_tol, pinched=pp)
    errs = error_probabilities(pair, n, test, a=a, pinched=pp)
    out = []
    for s in s_grid:
        p = psi(pair, s)
        out.append(ExponentReport(s, p, a, n, pair.d, errs.alpha, errs.beta, alpha_bound_log(n, pair.d, a, s, p)))
    return out


def _rel_slack(slack: float, *xs: float) -> float:
    return slack * max(1.0, *(abs(x) for x in xs if math.isfinite(x)))


def proof_chain_diagnostics(
    pair: StatePair,
    n: int,
    a: float,
    s: float,
    cluster_tol: float | None = None,
    cap: int = DEFAULT_CAP,
    slack: float = 1e-8,
    pinched: PinchedPair | None = None,
) -> list[ScalarCertificate]:
    """Scalar links bounding ``alpha_n`` of the threshold test, in order.

    0. ``Tr[rho_n (I-S)] = Tr[rho_bar (I-S)]``
    1. ``Tr[rho_bar^{1-s} rho_bar^s (I-S)] <= e^{nas} Tr[rho_bar^{1-s} sigma_n^s (I-S)]``
    2. ``... <= e^{nas} Tr[rho_bar^{1-s} sigma_n^s]``
    3. ``... <= v^s e^{nas} Tr[rho_n sigma_n^{s/2} rho_n^{-s} sigma_n^{s/2}]``
    4. ``... <= (n+1)^{sd} e^{n(as - psi(s))}``
    """
    if not 0 <= s <= 1:
        raise ValueError("s must lie in [0, 1]")
    pp = pinched if pinched is not None else pinched_pair(pair, n, cluster_tol, cap)
    test = stein_test(pair, n, a, cluster_tol, pinched=pp)
    comp = np.eye(pp.rho_n.dim) - test.op
    rb_1ms = pp.rho_bar.power(1 - s)
    sig_s = pp.sigma_n.power(s)
    sig_half = pp.sigma_n.power(s / 2)
    e = _safe_exp(n * a * s)

    alpha = _tr(pp.rho_n.op, comp).real
    alpha_bar = _tr(pp.rho_bar.op, comp).real
    lhs1 = _tr(rb_1ms @ pp.rho_bar.power(s), comp).real
    rhs1 = e * _tr(rb_1ms @ sig_s, comp).real
    rhs2 = e * _tr(rb_1ms, sig_s).real
    sandwich = _tr(pp.rho_n.op, sig_half @ pp.rho_n.power(-s) @ sig_half).real
    rhs3 = pp.v**s * e * sandwich
    rhs4 = _safe_exp(alpha_bound_log(n, pair.d, a, s, psi(pair, s)))

    tag = f"[n={n}, a={a:g}, s={s:g}]"
    return [
        scalar_eq(f"Tr[rho_n(I-S)] = Tr[rho_bar(I-S)] {tag}", alpha, alpha_bar, 1e-10),
        scalar_leq(f"(i) Tr[rho_bar^(1-s) rho_bar^s (I-S)] <= e^(nas) Tr[rho_bar^(1-s) sigma^s (I-S)] {tag}", lhs1, rhs1, _rel_slack(slack, lhs1, rhs1)),
        scalar_leq(f"(ii) <= e^(nas) Tr[rho_bar^(1-s) sigma^s] {tag}", rhs1, rhs2, _rel_slack(slack, rhs1, rhs2)),
        scalar_leq(f"(iii) <= v^s e^(nas) Tr[rho_n sigma^(s/2) rho_n^(-s) sigma^(s/2)] {tag}", rhs2, rhs3, _rel_slack(slack, rhs2, rhs3)),
        scalar_leq(f"(iv) <= (n+1)^(sd) e^(n(as-psi(s))) {tag}", rhs3, rhs4, _rel_slack(slack, rhs3, rhs4)),
    ]
