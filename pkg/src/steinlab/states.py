"""Density operators, tensor powers and divergences (natural log throughout)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import entr, rel_entr

from .errors import DimensionError, InvalidStateError, SupportError
from .spectral import (
    DEFAULT_CAP,
    SpectralDecomposition,
    as_hermitian,
    eig_hermitian,
    kron_power,
    matrix_function,
    tensor_power_spectrum,
)

TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-12
FAITHFULNESS_FLOOR = 1e-8

# weight of I/2 mixed into |+><+| for the "plus-vs-diag" preset; the smallest
# eigenvalue 1.25e-8 clears the default faithfulness floor
PLUS_REGULARIZATION = 2.5e-8


class DensityOperator:
    """A positive semidefinite, unit-trace operator.

    ``spectrum`` may be supplied when a more accurate decomposition than a
    dense eigensolve is known (tensor powers, pinched states).
    """

    def __init__(self, op, *, spectrum: SpectralDecomposition | None = None, trace_tol: float = TRACE_TOL):
        op = as_hermitian(op)
        tr = float(np.trace(op).real)
        if abs(tr - 1.0) > trace_tol:
            raise InvalidStateError(f"trace is {tr!r}, expected 1 within {trace_tol:g}")
        if spectrum is not None and spectrum.dim != op.shape[0]:
            raise DimensionError("spectrum dimension does not match operator")
        self.op = op
        if spectrum is not None:
            self.__dict__["spectrum"] = spectrum
        if self.min_eigenvalue < -POSITIVITY_TOL:
            raise InvalidStateError(f"not positive semidefinite: smallest eigenvalue {self.min_eigenvalue:.3e}")

    def __repr__(self):
        return f"DensityOperator(dim={self.dim}, min_eigenvalue={self.min_eigenvalue:.3e})"

    @property
    def dim(self) -> int:
        return self.op.shape[0]

    @cached_property
    def spectrum(self) -> SpectralDecomposition:
        return eig_hermitian(self.op)

    @property
    def min_eigenvalue(self) -> float:
        return float(self.spectrum.eigenvalues[0])

    def is_faithful(self, floor: float = FAITHFULNESS_FLOOR) -> bool:
        return self.min_eigenvalue >= floor

    def power(self, p: float) -> np.ndarray:
        """``rho**p`` from the raw spectrum; rounding negatives are set to zero for ``p >= 0``."""
        if p >= 0:
            return matrix_function(self.spectrum, lambda x: np.power(np.clip(x, 0.0, None), p), clustered=False)
        return matrix_function(self.spectrum, lambda x: np.where(x > 0, np.power(np.abs(x), p), np.nan), clustered=False)

    def log(self) -> np.ndarray:
        return matrix_function(self.spectrum, lambda x: np.where(x > 0, np.log(np.abs(x)), np.nan), clustered=False)


@dataclass(frozen=True, eq=False)
class StatePair:
    """The two hypotheses ``rho`` (null) and ``sigma`` (alternative)."""

    rho: DensityOperator
    sigma: DensityOperator
    faithfulness_floor: float = FAITHFULNESS_FLOOR
    name: str = ""

    def __post_init__(self):
        if self.rho.dim != self.sigma.dim:
            raise DimensionError(f"rho has dim {self.rho.dim}, sigma has dim {self.sigma.dim}")
        for label, st in (("rho", self.rho), ("sigma", self.sigma)):
            if not st.is_faithful(self.faithfulness_floor):
                raise SupportError(
                    f"{label} is not faithful: smallest eigenvalue {st.min_eigenvalue:.3e} "
                    f"< floor {self.faithfulness_floor:g}; see mix_identity()"
                )

    @property
    def d(self) -> int:
        return self.rho.dim

    @classmethod
    def from_arrays(cls, rho, sigma, faithfulness_floor: float = FAITHFULNESS_FLOOR, name: str = "") -> "StatePair":
        return cls(DensityOperator(rho), DensityOperator(sigma), faithfulness_floor, name)


def mix_identity(rho: DensityOperator, weight: float) -> DensityOperator:
    """Regularize a state: ``(1 - weight) rho + weight I/d``."""
    if not 0 <= weight <= 1:
        raise ValueError("weight must lie in [0, 1]")
    d = rho.dim
    return DensityOperator((1 - weight) * rho.op + weight * np.eye(d) / d)


def tensor_power(rho: DensityOperator, n: int, cap: int = DEFAULT_CAP) -> DensityOperator:
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return rho
    op = kron_power(rho.op, n, cap)
    spec = tensor_power_spectrum(rho.spectrum, n, cap)
    return DensityOperator(op, spectrum=spec, trace_tol=1e-9)


def relative_entropy(rho: DensityOperator, sigma: DensityOperator) -> float:
    """Quantum relative entropy ``Tr[rho (log rho - log sigma)]`` in nats.

    ``sigma`` must have full support; ``rho`` may be singular (``0 log 0 = 0``).
    """
    if rho.dim != sigma.dim:
        raise DimensionError(f"dims {rho.dim} and {sigma.dim} differ")
    if sigma.min_eigenvalue <= 0:
        raise SupportError(f"sigma is singular (smallest eigenvalue {sigma.min_eigenvalue:.3e}); D is not finite")
    lam = np.clip(rho.spectrum.eigenvalues, 0.0, None)
    neg_entropy = -float(entr(lam).sum())
    mu = sigma.spectrum.eigenvalues
    v = sigma.spectrum.eigenvectors
    weights = np.einsum("ij,ik,kj->j", v.conj(), rho.op, v).real
    cross = float(np.dot(weights, np.log(mu)))
    return neg_entropy - cross


def kl_divergence(p, q) -> float:
    """Classical relative entropy with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise DimensionError(f"distributions of shapes {p.shape} and {q.shape}")
    terms = rel_entr(p, q)
    if not np.all(np.isfinite(terms)):
        k = int(np.argmax(~np.isfinite(terms)))
        raise SupportError(f"p[{k}] = {p[k]:.3e} > 0 but q[{k}] = {q[k]:.3e}")
    return float(terms.sum())


def binary_divergence(p: float, q: float) -> float:
    """``d(p||q) = p log(p/q) + (1-p) log((1-p)/(1-q))``."""
    if not (0 <= p <= 1 and 0 <= q <= 1):
        raise ValueError(f"probabilities out of range: p={p}, q={q}")
    return kl_divergence([p, 1 - p], [q, 1 - q])


def binary_entropy(p: float) -> float:
    if not 0 <= p <= 1:
        raise ValueError(f"probability out of range: {p}")
    return float(entr(p) + entr(1 - p))


def random_density(d: int, seed: int, faithfulness_floor: float = FAITHFULNESS_FLOOR) -> DensityOperator:
    """Hilbert-Schmidt random state, mixed with ``I/d`` only if needed to reach the floor."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return DensityOperator(np.ones((1, 1)))
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    lam = float(np.linalg.eigvalsh(rho)[0])
    if lam < faithfulness_floor:
        target = 2 * faithfulness_floor
        w = (target - lam) / (1.0 / d - lam)
        rho = (1 - w) * rho + w * np.eye(d) / d
    return DensityOperator(rho)


def random_pair(seed: int, d: int = 2, faithfulness_floor: float = FAITHFULNESS_FLOOR) -> StatePair:
    s_rho, s_sigma = np.random.SeedSequence(seed).generate_state(2)
    return StatePair(
        random_density(d, int(s_rho), faithfulness_floor),
        random_density(d, int(s_sigma), faithfulness_floor),
        faithfulness_floor,
        name=f"random:{seed}",
    )


def plus_state() -> np.ndarray:
    return np.full((2, 2), 0.5, dtype=np.complex128)


PRESETS = ("commuting-qubit", "plus-vs-diag")


def preset_pair(name: str) -> StatePair:
    """The two worked examples: a commuting qubit pair and a non-commuting one."""
    if name == "commuting-qubit":
        return StatePair.from_arrays(np.diag([0.75, 0.25]), np.diag([0.5, 0.5]), name=name)
    if name == "plus-vs-diag":
        rho = mix_identity(DensityOperator(plus_state()), PLUS_REGULARIZATION)
        return StatePair(rho, DensityOperator(np.diag([0.75, 0.25])), name=name)
    raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
