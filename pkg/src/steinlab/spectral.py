"""Dense Hermitian linear algebra.

Eigendecompositions with deterministic eigenvalue clustering, spectral
matrix functions, positive-part projections, Kronecker products and
semidefinite-order witnesses.  Operators are plain ``numpy`` arrays of dtype
``complex128``; :func:`as_hermitian` is the single validation gate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Callable, Sequence

import numpy as np

from .certificates import OrderCertificate
from .errors import DimensionCapError, DimensionError, NonFiniteFunctionError, NotHermitianError

DEFAULT_CAP = 4096
HERMITIAN_ATOL = 1e-12
CLUSTER_RTOL = 1e-9


def as_hermitian(a, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate ``a`` as a square Hermitian matrix and return it symmetrized.

    The tolerance is absolute for operators of size O(1) and scales with the
    largest entry otherwise, so that products of large-norm operators are not
    rejected for rounding noise.
    """
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise NotHermitianError("dimension must be at least 1")
    if not np.all(np.isfinite(arr)):
        raise NotHermitianError("matrix has non-finite entries")
    dev = np.abs(arr - arr.conj().T)
    tol = atol * max(1.0, float(np.abs(arr).max()))
    worst = float(dev.max())
    if worst > tol:
        i, j = np.unravel_index(int(dev.argmax()), dev.shape)
        raise NotHermitianError(
            f"matrix is not Hermitian: |H[{i},{j}] - conj(H[{j},{i}])| = {worst:.3e} > {tol:.3e}"
        )
    return (arr + arr.conj().T) / 2


def default_cluster_tol(norm: float) -> float:
    return CLUSTER_RTOL * (1.0 + norm)


def _cluster_bounds(values: np.ndarray, tol: float) -> list[int]:
    """Start indices of clusters in a sorted array (transitive closure of |x-y| <= tol)."""
    starts = [0]
    for k in range(1, len(values)):
        if values[k] - values[k - 1] > tol:
            starts.append(k)
    return starts


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Clustered spectral decomposition ``H = sum_i a_i E_i``.

    ``eigenvalues``/``eigenvectors`` hold the raw ascending eigenpairs; the
    columns belonging to cluster ``i`` are ``eigenvectors[:, slices[i]]``.
    """

    distinct_eigenvalues: np.ndarray
    multiplicities: tuple[int, ...]
    cluster_tol: float
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @classmethod
    def from_eigenpairs(cls, values, vectors, cluster_tol: float | None = None) -> "SpectralDecomposition":
        values = np.asarray(values, dtype=float)
        vectors = np.asarray(vectors, dtype=np.complex128)
        order = np.argsort(values, kind="stable")
        values = values[order]
        vectors = vectors[:, order]
        if cluster_tol is None:
            cluster_tol = default_cluster_tol(float(np.abs(values).max()))
        if not cluster_tol > 0:
            raise ValueError("cluster_tol must be positive")
        starts = _cluster_bounds(values, cluster_tol)
        ends = starts[1:] + [len(values)]
        distinct = np.array([values[s:e].mean() for s, e in zip(starts, ends)])
        mult = tuple(e - s for s, e in zip(starts, ends))
        return cls(distinct, mult, float(cluster_tol), values, vectors)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @property
    def v(self) -> int:
        """Number of mutually distinct (clustered) eigenvalues."""
        return len(self.distinct_eigenvalues)

    @cached_property
    def slices(self) -> list[slice]:
        out, start = [], 0
        for m in self.multiplicities:
            out.append(slice(start, start + m))
            start += m
        return out

    def basis(self, i: int) -> np.ndarray:
        """Orthonormal columns spanning the ``i``-th eigenspace."""
        return self.eigenvectors[:, self.slices[i]]

    @cached_property
    def projections(self) -> list[np.ndarray]:
        return [b @ b.conj().T for b in (self.basis(i) for i in range(self.v))]

    @cached_property
    def cluster_index(self) -> np.ndarray:
        """Cluster label of each raw eigenvalue."""
        return np.repeat(np.arange(self.v), self.multiplicities)

    def reconstruct(self) -> np.ndarray:
        return matrix_function(self, lambda x: x)


def eig_hermitian(h, cluster_tol: float | None = None) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian operator with eigenvalue clustering.

    Parameters
    ----------
    h : array_like
        Hermitian matrix.
    cluster_tol : float, optional
        Eigenvalues closer than this (transitively, on the sorted spectrum)
        share one projector.  Defaults to ``1e-9 * (1 + ||h||)``.

    Returns
    -------
    SpectralDecomposition
    """
    h = as_hermitian(h)
    w, vecs = np.linalg.eigh(h)
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(float(np.abs(w).max()))
    return SpectralDecomposition.from_eigenpairs(w, vecs, cluster_tol)


def _evaluate(f: Callable, xs: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        try:
            out = np.asarray(f(xs), dtype=float)
            if out.shape == xs.shape:
                return out
        except (TypeError, ValueError, ZeroDivisionError, OverflowError):
            pass
        vals = []
        for x in xs:
            try:
                vals.append(float(f(float(x))))
            except (ValueError, ZeroDivisionError, OverflowError):
                vals.append(float("nan"))
        return np.array(vals, dtype=float)


def matrix_function(s: SpectralDecomposition, f: Callable, clustered: bool = True) -> np.ndarray:
    """Return ``sum_i f(a_i) E_i``.

    With ``clustered=False`` ``f`` is applied to every raw eigenvalue instead
    of the cluster representative; this keeps relative accuracy for negative
    powers and logarithms of operators whose spectrum spans many orders of
    magnitude.
    """
    xs = s.distinct_eigenvalues if clustered else s.eigenvalues
    fx = _evaluate(f, xs)
    bad = ~np.isfinite(fx)
    if bad.any():
        k = int(np.argmax(bad))
        raise NonFiniteFunctionError(float(xs[k]), float(fx[k]))
    if clustered:
        fx = fx[s.cluster_index]
    v = s.eigenvectors
    out = (v * fx) @ v.conj().T
    return (out + out.conj().T) / 2


def spectral_projection(s: SpectralDecomposition, keep: np.ndarray) -> np.ndarray:
    """Sum of the eigenprojections of the clusters selected by boolean mask ``keep``."""
    cols = np.asarray(keep)[s.cluster_index]
    b = s.eigenvectors[:, cols]
    return b @ b.conj().T


def positive_part_projection(x, cluster_tol: float | None = None) -> np.ndarray:
    """The projection ``{X > 0}`` onto eigenspaces with strictly positive eigenvalue.

    Clustered eigenvalues within ``cluster_tol`` of zero count as zero.
    """
    s = eig_hermitian(x, cluster_tol)
    return spectral_projection(s, s.distinct_eigenvalues > s.cluster_tol)


def sign_projections(x, cluster_tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``({X > 0}, {X = 0})`` using the same zero convention as :func:`positive_part_projection`."""
    s = eig_hermitian(x, cluster_tol)
    a = s.distinct_eigenvalues
    return (
        spectral_projection(s, a > s.cluster_tol),
        spectral_projection(s, np.abs(a) <= s.cluster_tol),
    )


def kron(a, b, cap: int = DEFAULT_CAP) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    dim = a.shape[0] * b.shape[0]
    if dim > cap:
        raise DimensionCapError(f"Kronecker product dimension {dim} exceeds cap {cap}")
    return np.kron(a, b)


def kron_power(a, n: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    dim = a.shape[0] ** n
    if dim > cap:
        raise DimensionCapError(f"tensor power dimension {a.shape[0]}^{n} = {dim} exceeds cap {cap}")
    return reduce(np.kron, [a] * n)


def tensor_power_spectrum(
    s: SpectralDecomposition, n: int, cap: int = DEFAULT_CAP, cluster_tol: float | None = None
) -> SpectralDecomposition:
    """Spectral decomposition of ``H^{(x)n}`` assembled from that of ``H``.

    Eigenvalues are exact products of single-copy eigenvalues, so tiny
    eigenvalues keep full relative precision (a dense eigensolver on the
    materialized power would only resolve them to ``eps * ||H||^n``).
    """
    dim = s.dim**n
    if dim > cap:
        raise DimensionCapError(f"tensor power dimension {s.dim}^{n} = {dim} exceeds cap {cap}")
    vals = reduce(np.kron, [s.eigenvalues] * n)
    vecs = reduce(np.kron, [s.eigenvectors] * n)
    return SpectralDecomposition.from_eigenpairs(vals, vecs, cluster_tol)


def trace_product(a, b) -> complex:
    """``Tr[AB]`` without forming the product."""
    return complex(np.einsum("ij,ji->", a, b))


def operator_norm(h) -> float:
    h = np.asarray(h)
    return float(np.abs(np.linalg.eigvalsh((h + h.conj().T) / 2)).max())


def commutator_norm(a, b) -> float:
    """Frobenius norm of ``AB - BA`` (an upper bound on the operator norm)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.linalg.norm(a @ b - b @ a))


def operator_leq(
    a,
    b,
    slack: float = 0.0,
    claim: str = "A <= B",
    lhs_label: str = "A",
    rhs_label: str = "B",
) -> OrderCertificate:
    """Certify ``A <= B`` in the semidefinite order.

    The margin is the smallest eigenvalue of ``B - A``.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise DimensionError(f"operator_leq: shapes {a.shape} and {b.shape} differ")
    diff = b - a
    margin = float(np.linalg.eigvalsh((diff + diff.conj().T) / 2)[0])
    return OrderCertificate(claim, lhs_label, rhs_label, margin, float(slack))


def is_projector_family(projections: Sequence[np.ndarray], tol: float = 1e-10) -> bool:
    """Completeness, idempotence and mutual orthogonality, entrywise within ``tol``."""
    if not projections:
        return False
    dim = projections[0].shape[0]
    total = sum(projections)
    if np.abs(total - np.eye(dim)).max() > tol:
        return False
    for i, p in enumerate(projections):
        if np.abs(p @ p - p).max() > tol:
            return False
        for q in projections[i + 1 :]:
            if np.abs(p @ q).max() > tol:
                return False
    return True
