"""Real symmetric spectra, spectral gaps, and Ramanujan certification.

Dense problems go through LAPACK (``numpy.linalg.eigh``).  Above
``PARTIAL_THRESHOLD`` vertices only the extreme eigenvalues are computed
with ARPACK, which is enough for gaps and Ramanujan checks; such spectra
are flagged ``partial``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .algebra import EvolutionAlgebra, is_graphicable, is_symmetric
from .errors import ConvergenceError, FieldMismatchError, PreconditionError
from .graphs import SimpleGraph, is_regular, underlying_graph

RESIDUAL_TOL = 1e-9
PARTIAL_THRESHOLD = 512
TRIVIAL_TOL = 1e-9
PARTIAL_K = 3
_ARPACK_SEED = 20240611


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted non-increasing.

    For a partial spectrum ``eigenvalues`` holds the ``k`` largest followed
    by the ``k`` smallest; ``n`` is always the full matrix dimension.
    """

    eigenvalues: tuple
    residual_bound: float
    n: int
    partial: bool = False

    @property
    def values(self) -> np.ndarray:
        return np.array(self.eigenvalues)

    @property
    def lambda1(self) -> float:
        return self.eigenvalues[0]

    @property
    def lambda2(self) -> float:
        return self.eigenvalues[1]

    @property
    def lambda_min(self) -> float:
        return self.eigenvalues[-1]

    def to_json(self) -> dict:
        return {
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "residual": float(self.residual_bound),
            "partial": self.partial,
        }


def _as_real_matrix(matrix) -> np.ndarray:
    if isinstance(matrix, EvolutionAlgebra):
        if matrix.field.kind == "prime":
            raise FieldMismatchError("prime-field structural matrices have no real spectrum")
        return matrix.to_float()
    if isinstance(matrix, SimpleGraph):
        return matrix.adjacency.astype(float)
    arr = np.asarray(matrix)
    if arr.dtype == object:
        arr = np.array([[float(v) for v in row] for row in arr], dtype=float)
    return arr.astype(float)


def symmetric_eigenvalues(matrix, full: bool | None = None) -> Spectrum:
    """Spectrum of a real symmetric matrix, algebra, or graph adjacency.

    ``full=None`` picks the dense solver up to ``PARTIAL_THRESHOLD`` and the
    extreme-eigenvalue path above it.
    """
    A = _as_real_matrix(matrix)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"square matrix required, got shape {A.shape}")
    n = A.shape[0]
    norm = float(np.linalg.norm(A))
    if np.max(np.abs(A - A.T), initial=0.0) > 1e-12 * norm:
        raise PreconditionError("matrix is not symmetric")
    if full is None:
        full = n <= PARTIAL_THRESHOLD
    if full or n <= 2 * PARTIAL_K + 1:
        w, V = np.linalg.eigh(A)
        resid = _residual(A, w, V, norm)
        order = np.argsort(w, kind="stable")[::-1]
        vals, part = w[order], False
    else:
        vals, resid = _extreme_eigenvalues(A, norm)
        part = True
    if not resid <= RESIDUAL_TOL:
        raise ConvergenceError(f"eigen residual {resid:.3e} exceeds {RESIDUAL_TOL:g}")
    return Spectrum(tuple(float(v) for v in vals), resid, n, part)


def _residual(A, w, V, norm) -> float:
    if norm == 0.0 or len(w) == 0:
        return 0.0
    R = A @ V - V * w
    return float(np.max(np.linalg.norm(R, axis=0)) / norm)


def _extreme_eigenvalues(A: np.ndarray, norm: float):
    S = sp.csr_matrix(A)
    v0 = np.random.default_rng(_ARPACK_SEED).standard_normal(A.shape[0])
    try:
        top, Vt = eigsh(S, k=PARTIAL_K, which="LA", v0=v0, tol=0)
        bot, Vb = eigsh(S, k=PARTIAL_K, which="SA", v0=v0, tol=0)
    except ArpackNoConvergence as exc:
        raise ConvergenceError(f"ARPACK did not converge: {exc}") from exc
    resid = max(_residual(A, top, Vt, norm), _residual(A, bot, Vb, norm))
    vals = np.concatenate([np.sort(top)[::-1], np.sort(bot)[::-1]])
    return vals, resid


def spectral_gap(spectrum: Spectrum) -> float:
    """``lambda_1 - lambda_2``."""
    if spectrum.n < 2:
        raise ValueError("spectral gap needs dimension >= 2")
    return spectrum.eigenvalues[0] - spectrum.eigenvalues[1]


@dataclass(frozen=True)
class PerronVerdict:
    ok: bool
    lambda1: float
    d: float
    gap: float
    problems: tuple = ()

    def __bool__(self):
        return self.ok


def perron_data(spectrum: Spectrum, d, tol: float = 1e-9) -> PerronVerdict:
    """Check ``lambda_1 == d`` and that it is simple (``lambda_1 - lambda_2 > tol``)."""
    lam1 = spectrum.lambda1
    gap = spectral_gap(spectrum)
    problems = []
    if abs(lam1 - d) > tol:
        problems.append(f"lambda_1 = {lam1!r} differs from d = {d}")
    if not gap > tol:
        problems.append(f"lambda_1 not simple: lambda_1 - lambda_2 = {gap!r}")
    return PerronVerdict(not problems, lam1, float(d), gap, tuple(problems))


def alon_boppana_floor(d) -> float:
    """``2 sqrt(d - 1)``."""
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    return 2.0 * math.sqrt(d - 1)


def ramanujan_expansion_lower(d) -> float:
    """``(d - 2 sqrt(d - 1)) / 2``, the expansion guaranteed for a Ramanujan graph."""
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    return (d - 2.0 * math.sqrt(d - 1)) / 2.0


@dataclass(frozen=True)
class RamanujanCertificate:
    is_ramanujan: bool
    d: int
    bound: float
    max_nontrivial: float
    margin: float
    spectrum: Spectrum = field(repr=False)

    def __bool__(self):
        return self.is_ramanujan

    def to_json(self) -> dict:
        return {
            "ramanujan": self.is_ramanujan,
            "d": self.d,
            "bound": self.bound,
            "max_nontrivial_abs": self.max_nontrivial,
            "margin": self.margin,
            "partial_spectrum": self.spectrum.partial,
        }


def is_ramanujan(algebra: EvolutionAlgebra, tol: float = TRIVIAL_TOL, spectrum: Spectrum | None = None) -> RamanujanCertificate:
    """Every eigenvalue with ``|lambda| != d`` must satisfy ``|lambda| <= 2 sqrt(d-1)``.

    ``margin`` is ``2 sqrt(d-1)`` minus the largest nontrivial ``|lambda|``.
    """
    if not is_symmetric(algebra):
        raise PreconditionError("not symmetric")
    if not is_graphicable(algebra):
        raise PreconditionError("not graphicable")
    d = is_regular(underlying_graph(algebra))
    if d is None:
        raise PreconditionError("not regular")
    if d < 1:
        raise PreconditionError("not regular", "degree 0 (edgeless graph)")
    spec = spectrum if spectrum is not None else symmetric_eigenvalues(algebra)
    vals = np.array(spec.eigenvalues)
    nontrivial = np.abs(np.abs(vals) - d) > TRIVIAL_TOL
    if spec.partial:
        k = len(vals) // 2
        if not (nontrivial[:k].any() and nontrivial[k:].any()):
            raise PreconditionError(
                "partial spectrum insufficient", "extreme eigenvalues all trivial; rerun with full=True"
            )
    bound = 2.0 * math.sqrt(d - 1)
    mx = float(np.max(np.abs(vals[nontrivial]))) if nontrivial.any() else 0.0
    return RamanujanCertificate(bool(mx <= bound + tol), d, bound, mx, bound - mx, spec)
