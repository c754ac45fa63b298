"""Pinching maps and the operator inequality ``rho <= v(M) E_M(rho)``.

Also holds the distinct-eigenvalue count ``v``, the polynomial bound on it for
tensor powers, and the two elementary mechanisms behind the inequality
(Cauchy-Schwarz on the vector of ``<psi|M_i|phi>`` and operator convexity of
``X -> X* A X``) as checkable certificates.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.stats import unitary_group

from .certificates import OrderCertificate, ScalarCertificate, scalar_eq, scalar_leq
from .errors import DimensionError, InvalidMeasurementError, SteinLabError
from .spectral import (
    DEFAULT_CAP,
    SpectralDecomposition,
    as_hermitian,
    commutator_norm,
    eig_hermitian,
    is_projector_family,
    operator_leq,
    operator_norm,
)
from .states import DensityOperator, StatePair, tensor_power


class PVM:
    """A projection-valued measure.

    Built either from explicit projectors (validated) or from orthonormal
    bases of the ranges, in which case the projectors are formed lazily and
    pinching runs blockwise.
    """

    def __init__(self, projections=None, labels=None, *, bases=None, tol: float = 1e-10):
        if (projections is None) == (bases is None):
            raise ValueError("give exactly one of projections or bases")
        if bases is not None:
            self.bases = [np.asarray(b, dtype=np.complex128) for b in bases]
            if sum(b.shape[1] for b in self.bases) != self.bases[0].shape[0]:
                raise InvalidMeasurementError("bases do not span the whole space")
        else:
            projections = [as_hermitian(p) for p in projections]
            if not is_projector_family(projections, tol):
                raise InvalidMeasurementError("projections are not a complete orthogonal family")
            self.bases = None
            self.__dict__["projections"] = projections
        n = len(self.bases) if bases is not None else len(projections)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise ValueError("one label per element required")

    @cached_property
    def projections(self) -> list[np.ndarray]:
        return [b @ b.conj().T for b in self.bases]

    @property
    def v(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        if self.bases is not None:
            return self.bases[0].shape[0]
        return self.projections[0].shape[0]

    def __len__(self):
        return self.v

    def __repr__(self):
        return f"PVM(dim={self.dim}, v={self.v})"

    @classmethod
    def from_spectrum(cls, s: SpectralDecomposition) -> "PVM":
        labels = [f"{a:.17g}" for a in s.distinct_eigenvalues]
        return cls(bases=[s.basis(i) for i in range(s.v)], labels=labels)


def computational_pvm(dim: int) -> PVM:
    eye = np.eye(dim, dtype=np.complex128)
    return PVM(bases=[eye[:, [i]] for i in range(dim)])


def eigen_pvm(a, cluster_tol: float | None = None) -> PVM:
    """PVM of clustered eigenprojections of ``a``; its size is ``v(a)``."""
    return PVM.from_spectrum(eig_hermitian(a, cluster_tol))


def pinch(m: PVM, b) -> np.ndarray:
    """``E_M(B) = sum_i M_i B M_i``."""
    b = np.asarray(b, dtype=np.complex128)
    if b.shape != (m.dim, m.dim):
        raise DimensionError(f"operator of shape {b.shape} vs PVM of dim {m.dim}")
    if m.bases is None:
        return sum(p @ b @ p for p in m.projections)
    u = np.hstack(m.bases)
    c = u.conj().T @ b @ u
    mask = np.zeros(c.shape, dtype=bool)
    start = 0
    for basis in m.bases:
        k = basis.shape[1]
        mask[start : start + k, start : start + k] = True
        start += k
    return u @ np.where(mask, c, 0) @ u.conj().T


def pinch_state(m: PVM, rho: DensityOperator) -> DensityOperator:
    """Pinched state with its spectrum computed block by block.

    The eigenvectors lie exactly inside the ranges of ``M``, so the result
    commutes with ``M`` to working precision.
    """
    if m.bases is None:
        return DensityOperator(pinch(m, rho.op))
    vals, vecs = [], []
    for basis in m.bases:
        block = basis.conj().T @ rho.op @ basis
        w, x = np.linalg.eigh((block + block.conj().T) / 2)
        vals.append(w)
        vecs.append(basis @ x)
    spec = SpectralDecomposition.from_eigenpairs(np.concatenate(vals), np.hstack(vecs))
    return DensityOperator(pinch(m, rho.op), spectrum=spec, trace_tol=1e-9)


def commutant_trace_check(m: PVM, b, c, commute_tol: float = 1e-9) -> ScalarCertificate:
    """``Tr[BC] = Tr[E_M(B) C]`` for ``C`` commuting with every projector of ``M``."""
    b = as_hermitian(b)
    c = as_hermitian(c)
    for i, p in enumerate(m.projections):
        err = commutator_norm(p, c)
        if err > commute_tol:
            raise SteinLabError(f"C does not commute with projector {i} (||[P, C]|| = {err:.3e})")
    lhs = float(np.trace(b @ c).real)
    rhs = float(np.trace(pinch(m, b) @ c).real)
    return scalar_eq("Tr[BC] = Tr[E(B)C]", lhs, rhs, 1e-10 * (1 + abs(lhs)))


def pinch_inequality(m: PVM, rho: DensityOperator, slack: float = 1e-8) -> OrderCertificate:
    """Certificate for ``rho <= v(M) E_M(rho)``."""
    return operator_leq(rho.op, m.v * pinch(m, rho.op), slack, "rho <= v(M) E_M(rho)", "rho", "v(M) E_M(rho)")


def type_count_bound(n: int, d: int) -> int:
    """``(n + 1)**d``, the number of types bound on ``v(sigma^{(x)n})``."""
    if n < 0 or d < 1:
        raise ValueError(f"need n >= 0 and d >= 1, got n={n}, d={d}")
    out = (int(n) + 1) ** int(d)
    if out > sys.maxsize:
        raise OverflowError(f"(n+1)^d = {n + 1}^{d} does not fit in a machine integer")
    return out


@dataclass(frozen=True, eq=False)
class PinchedPair:
    """The n-copy objects every construction is built on."""

    pair: StatePair
    n: int
    rho_n: DensityOperator
    sigma_n: DensityOperator
    pvm: PVM
    rho_bar: DensityOperator

    @property
    def v(self) -> int:
        return self.pvm.v

    @property
    def d(self) -> int:
        return self.pair.d

    @property
    def type_bound(self) -> int:
        return type_count_bound(self.n, self.pair.d)


def pinched_pair(pair: StatePair, n: int, cluster_tol: float | None = None, cap: int = DEFAULT_CAP) -> PinchedPair:
    """Build ``rho_n``, ``sigma_n``, ``M = eigen_pvm(sigma_n)`` and ``rho_bar = E_M(rho_n)``.

    ``v(sigma_n)`` comes from a dense eigensolve of the materialized tensor
    power, not from type combinatorics.
    """
    rho_n = tensor_power(pair.rho, n, cap)
    sigma_n = tensor_power(pair.sigma, n, cap)
    pvm = eigen_pvm(sigma_n.op, cluster_tol)
    return PinchedPair(pair, n, rho_n, sigma_n, pvm, pinch_state(pvm, rho_n))


@dataclass(frozen=True)
class KeyInequalityReport:
    certificate: OrderCertificate
    v: int
    type_bound: int

    @property
    def within_type_bound(self) -> bool:
        return self.v <= self.type_bound

    @property
    def holds(self) -> bool:
        return self.certificate.holds and self.within_type_bound


def key_inequality_certificate(
    pair: StatePair,
    n: int,
    cluster_tol: float | None = None,
    cap: int = DEFAULT_CAP,
    slack: float = 1e-8,
    pinched: PinchedPair | None = None,
) -> KeyInequalityReport:
    """``rho_n <= v(sigma_n) rho_bar_n`` together with ``v(sigma_n) <= (n+1)^d``."""
    pp = pinched if pinched is not None else pinched_pair(pair, n, cluster_tol, cap)
    cert = operator_leq(
        pp.rho_n.op,
        pp.v * pp.rho_bar.op,
        slack,
        f"rho_n <= v(sigma_n) rho_bar_n [n={pp.n}]",
        "rho_n",
        "v(sigma_n) rho_bar_n",
    )
    return KeyInequalityReport(cert, pp.v, pp.type_bound)


def inverse_power_certificate(pp: PinchedPair, s: float, rel_slack: float = 1e-7) -> OrderCertificate:
    """``rho_bar^{-s} <= v^s rho_n^{-s}``, obtained from the key inequality by operator monotonicity."""
    if not 0 <= s <= 1:
        raise ValueError("s must lie in [0, 1]")
    rhs = pp.v**s * pp.rho_n.power(-s)
    lhs = pp.rho_bar.power(-s)
    slack = rel_slack * operator_norm(pp.rho_n.power(-s))
    return operator_leq(lhs, rhs, slack, f"rho_bar^-s <= v^s rho_n^-s [n={pp.n}, s={s:g}]", "rho_bar^-s", "v^s rho_n^-s")


def convexity_certificate(a, x, y, t: float, slack: float = 1e-9) -> OrderCertificate:
    """``f_A(tX + (1-t)Y) <= t f_A(X) + (1-t) f_A(Y)`` for ``f_A(X) = X* A X``, ``A >= 0``."""
    a = as_hermitian(a)
    if np.linalg.eigvalsh(a)[0] < -1e-12 * max(1.0, operator_norm(a)):
        raise SteinLabError("A must be positive semidefinite")
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)

    def f(z):
        return z.conj().T @ a @ z

    mid = t * x + (1 - t) * y
    return operator_leq(f(mid), t * f(x) + (1 - t) * f(y), slack, "f_A(tX+(1-t)Y) <= t f_A(X) + (1-t) f_A(Y)", "f_A(mix)", "mix of f_A")


def schwarz_certificate(m: PVM, phi, psi, slack: float = 1e-10) -> ScalarCertificate:
    """``|sum_i <psi|M_i|phi>|^2 <= v(M) sum_i |<psi|M_i|phi>|^2`` for one pair of vectors."""
    phi = np.asarray(phi, dtype=np.complex128).ravel()
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    amps = np.array([psi.conj() @ p @ phi for p in m.projections])
    lhs = abs(amps.sum()) ** 2
    rhs = m.v * float(np.sum(np.abs(amps) ** 2))
    return scalar_leq("|sum <psi|M_i|phi>|^2 <= v sum |<psi|M_i|phi>|^2", lhs, rhs, slack)


def pinch_convexity_certificate(m: PVM, rho: DensityOperator, slack: float = 1e-9) -> OrderCertificate:
    """``(sum_i M_i / v) rho (sum_i M_i / v) <= E_M(rho) / v``, i.e. ``rho / v^2 <= E_M(rho) / v``."""
    avg = sum(m.projections) / m.v
    return operator_leq(avg @ rho.op @ avg, pinch(m, rho.op) / m.v, slack, "rho/v^2 <= E_M(rho)/v", "avg rho avg", "E_M(rho)/v")


def random_pvm(dim: int, seed: int, n_parts: int | None = None) -> PVM:
    """Haar-random orthonormal basis, columns split into ``n_parts`` contiguous groups."""
    rng = np.random.default_rng(seed)
    u = unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.ones((1, 1), dtype=np.complex128)
    if n_parts is None:
        n_parts = int(rng.integers(1, dim + 1))
    cuts = np.sort(rng.choice(np.arange(1, dim), size=n_parts - 1, replace=False)) if n_parts > 1 else []
    groups = np.split(np.arange(dim), cuts)
    return PVM(bases=[u[:, g] for g in groups])
