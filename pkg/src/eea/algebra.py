"""Finite-dimensional evolution algebras in a fixed natural basis.

An evolution algebra of dimension n is determined by its structural matrix
``A = (a_ik)``: distinct basis vectors multiply to zero and
``e_i * e_i = sum_k a_ik e_k``.  Elements are coefficient vectors in the
natural basis, so for ``x = sum x_i e_i`` and ``y = sum y_i e_i``::

    x * y = sum_i x_i y_i e_i^2,   i.e.   (x * y)_k = sum_i x_i y_i a_ik.

Indices are 0-based throughout.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, FieldMismatchError, ResourceCapError
from .fields import RATIONAL, Field

DEFAULT_MAX_BITS = 10**6
SUPPORT_RTOL = 1e-12
RANK_RTOL = 1e-10
SYMMETRY_RTOL = 1e-12


class EvolutionAlgebra:
    """Immutable evolution algebra given by an n x n structural matrix over a field."""

    def __init__(self, matrix, field: Field = RATIONAL, name: str | None = None, meta: dict | None = None):
        arr = field.array(matrix)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatchError(f"structural matrix must be square, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise DimensionMismatchError("dimension must be at least 1")
        self._init(arr, field, name, meta)

    def _init(self, arr, field, name, meta=None):
        arr.flags.writeable = False
        self._matrix = arr
        self.field = field
        self.name = name
        # provenance only; never part of equality
        self.meta = dict(meta or {})

    @classmethod
    def _wrap(cls, arr: np.ndarray, field: Field, name=None, meta=None) -> "EvolutionAlgebra":
        # trusted constructor: arr already holds canonical field values
        obj = cls.__new__(cls)
        obj._init(arr, field, name, meta)
        return obj

    @classmethod
    def from_triplets(cls, n: int, entries: Iterable, field: Field = RATIONAL, name=None, meta=None):
        """Build from sparse ``(i, j, value)`` triplets; omitted entries are zero."""
        if n < 1:
            raise DimensionMismatchError("dimension must be at least 1")
        arr = field.zeros((n, n))
        for i, j, v in entries:
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionMismatchError(f"entry ({i}, {j}) outside a {n}x{n} matrix")
            arr[i, j] = field.coerce(v)
        return cls._wrap(arr, field, name, meta)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, field: Field = RATIONAL, weight=1, name=None, meta=None):
        """Symmetric algebra with ``a_ij = a_ji = weight`` on each edge."""
        arr = field.zeros((n, n))
        w = field.coerce(weight)
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            arr[i, j] = w
            arr[j, i] = w
        return cls._wrap(arr, field, name, meta)

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Read-only structural matrix."""
        return self._matrix

    @cached_property
    def nonzero_mask(self) -> np.ndarray:
        mask = self._matrix != 0
        mask = np.asarray(mask, dtype=bool)
        mask.flags.writeable = False
        return mask

    def to_float(self) -> np.ndarray:
        """The structural matrix as float64 (prime fields are rejected)."""
        if self.field.kind == "real":
            return np.array(self._matrix, dtype=float)
        if self.field.kind == "prime":
            raise FieldMismatchError("prime-field matrices have no real embedding")
        out = np.zeros((self.n, self.n))
        mask = self.nonzero_mask
        out[mask] = [float(v) for v in self._matrix[mask]]
        return out

    def entry(self, i: int, j: int):
        return self._matrix[i, j]

    def basis(self, i: int) -> "Element":
        if not 0 <= i < self.n:
            raise IndexError(f"basis index {i} out of range for dimension {self.n}")
        c = self.field.zeros(self.n)
        c[i] = self.field.one
        return Element(self, c)

    def element(self, coeffs) -> "Element":
        c = self.field.array(coeffs)
        if c.shape != (self.n,):
            raise DimensionMismatchError(f"expected {self.n} coefficients, got shape {c.shape}")
        return Element(self, c)

    def zero_element(self) -> "Element":
        return Element(self, self.field.zeros(self.n))

    def __eq__(self, other):
        if not isinstance(other, EvolutionAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and bool(np.all(self._matrix == other._matrix))
        )

    __hash__ = None

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<EvolutionAlgebra{label} n={self.n} field={self.field}>"


class Element:
    """A coefficient vector attached to an algebra's natural basis.

    Supports ``+``, ``-``, scalar multiplication, and the algebra product
    via ``x * y`` when both operands are elements.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: EvolutionAlgebra, coeffs: np.ndarray):
        coeffs.flags.writeable = False
        self.algebra = algebra
        self.coeffs = coeffs

    @property
    def field(self) -> Field:
        return self.algebra.field

    def _check(self, other: "Element"):
        _check_compatible(self.algebra, other)

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element(self.algebra, self.field.reduce(self.coeffs + other.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element(self.algebra, self.field.reduce(self.coeffs - other.coeffs))

    def __neg__(self):
        return Element(self.algebra, self.field.reduce(-self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self.algebra, self, other)
        c = self.field.coerce(other)
        return Element(self.algebra, self.field.reduce(self.coeffs * c))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.field == other.field
            and self.coeffs.shape == other.coeffs.shape
            and bool(np.all(self.coeffs == other.coeffs))
        )

    __hash__ = None

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        terms = [f"{self.field.format(c)}*e{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return "Element(" + (" + ".join(terms) if terms else "0") + ")"


def _check_compatible(algebra: EvolutionAlgebra, x: Element):
    if x.field != algebra.field:
        raise FieldMismatchError(f"element over {x.field} used with algebra over {algebra.field}")
    if len(x.coeffs) != algebra.n:
        raise DimensionMismatchError(f"element of length {len(x.coeffs)} in algebra of dimension {algebra.n}")


def _bits(v) -> int:
    if isinstance(v, Fraction):
        return max(v.numerator.bit_length(), v.denominator.bit_length())
    if isinstance(v, int):
        return v.bit_length()
    return 0


def _max_bits(arr: np.ndarray) -> int:
    return max((_bits(v) for v in arr), default=0)


def multiply(algebra: EvolutionAlgebra, x: Element, y: Element) -> Element:
    """Algebra product: coefficient of e_k is ``sum_i x_i y_i a_ik``."""
    _check_compatible(algebra, x)
    _check_compatible(algebra, y)
    c = (x.coeffs * y.coeffs) @ algebra.matrix
    return Element(algebra, algebra.field.reduce(np.asarray(c, dtype=algebra.field.dtype)))


def principal_power(algebra: EvolutionAlgebra, x: Element, m: int) -> Element:
    """``x^1 = x`` and ``x^m = x^(m-1) * x``."""
    if m < 1:
        raise ValueError(f"principal power needs m >= 1, got {m}")
    _check_compatible(algebra, x)
    out = x
    for _ in range(m - 1):
        out = multiply(algebra, out, x)
    return out


def plenary_power(algebra: EvolutionAlgebra, x: Element, k: int, max_bits: int = DEFAULT_MAX_BITS) -> Element:
    """Iterated squaring ``x^[0] = x``, ``x^[k] = x^[k-1] * x^[k-1]``.

    Over the rationals coefficients grow doubly exponentially; a
    :class:`ResourceCapError` is raised as soon as any numerator or
    denominator exceeds ``max_bits`` bits.
    """
    if k < 0:
        raise ValueError(f"plenary power needs k >= 0, got {k}")
    _check_compatible(algebra, x)
    out = x
    for step in range(1, k + 1):
        out = multiply(algebra, out, out)
        if algebra.field.kind == "rational":
            bits = _max_bits(out.coeffs)
            if bits > max_bits:
                raise ResourceCapError(
                    f"plenary power step {step}: coefficient needs {bits} bits (cap {max_bits})"
                )
    return out


def support(algebra: EvolutionAlgebra, x: Element, rtol: float = SUPPORT_RTOL) -> frozenset:
    """Indices with nonzero coefficient.

    Over the reals a coefficient counts as nonzero when it exceeds
    ``rtol`` times the largest absolute coefficient.
    """
    _check_compatible(algebra, x)
    c = x.coeffs
    if algebra.field.kind == "real":
        scale = float(np.max(np.abs(c))) if len(c) else 0.0
        if scale == 0.0:
            return frozenset()
        return frozenset(int(k) for k in np.nonzero(np.abs(c) > rtol * scale)[0])
    return frozenset(k for k, v in enumerate(c) if v != 0)


def evolution_operator_apply(algebra: EvolutionAlgebra, x: Element) -> Element:
    """The linear map ``E(sum a_i e_i) = sum a_i e_i^2`` (coefficients are not squared)."""
    _check_compatible(algebra, x)
    c = x.coeffs @ algebra.matrix
    return Element(algebra, algebra.field.reduce(np.asarray(c, dtype=algebra.field.dtype)))


def is_symmetric(algebra: EvolutionAlgebra, rtol: float = SYMMETRY_RTOL) -> bool:
    """``a_ij == a_ji`` for all ``i != j`` (relative tolerance over the reals)."""
    A = algebra.matrix
    if algebra.field.kind == "real":
        scale = float(np.max(np.abs(A)))
        return bool(np.all(np.abs(A - A.T) <= rtol * scale))
    return bool(np.all(A == A.T))


def is_graphicable(algebra: EvolutionAlgebra, allow_loops: bool = False) -> bool:
    """Off-diagonal entries all 0 or 1 and, unless ``allow_loops``, a zero diagonal."""
    A = algebra.matrix
    off = ~np.eye(algebra.n, dtype=bool)
    vals = A[off]
    if not bool(np.all((vals == 0) | (vals == 1))):
        return False
    if allow_loops:
        return True
    return bool(np.all(np.diag(A) == 0))


def rank(algebra: EvolutionAlgebra) -> int:
    kind = algebra.field.kind
    if kind == "real":
        return _rank_real(np.array(algebra.matrix, dtype=float))
    if kind == "prime":
        return _rank_mod_p([[int(v) for v in row] for row in algebra.matrix], algebra.field.p)
    rows = []
    for row in algebra.matrix:
        m = lcm(*(v.denominator for v in row))
        rows.append([int(v * m) for v in row])
    return _rank_bareiss(rows)


def is_nonsingular(algebra: EvolutionAlgebra) -> bool:
    return rank(algebra) == algebra.n


def _rank_bareiss(M: list) -> int:
    """Fraction-free Gaussian elimination over the integers."""
    M = [row[:] for row in M]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
        if r == nrows:
            break
    return r


def _rank_mod_p(M: list, p: int) -> int:
    M = [row[:] for row in M]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [v * inv % p for v in M[r]]
        for i in range(nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        r += 1
        if r == nrows:
            break
    return r


def _rank_real(M: np.ndarray, rtol: float = RANK_RTOL) -> int:
    M = M.copy()
    nrows, ncols = M.shape
    tol = rtol * max(float(np.max(np.abs(M))), 0.0)
    if tol == 0.0:
        return 0
    r = 0
    for c in range(ncols):
        piv = r + int(np.argmax(np.abs(M[r:, c])))
        if abs(M[piv, c]) <= tol:
            continue
        M[[r, piv]] = M[[piv, r]]
        M[r + 1:] -= np.outer(M[r + 1:, c] / M[r, c], M[r])
        r += 1
        if r == nrows:
            break
    return r


def rescale_basis(algebra: EvolutionAlgebra, lambdas: Sequence) -> EvolutionAlgebra:
    """Structural constants in the basis ``e_i' = lambda_i e_i``: ``a'_ij = a_ij lambda_j / lambda_i^2``."""
    F = algebra.field
    lam = [F.coerce(v) for v in lambdas]
    if len(lam) != algebra.n:
        raise DimensionMismatchError(f"need {algebra.n} scale factors, got {len(lam)}")
    for i, v in enumerate(lam):
        if F.is_zero(v):
            raise ValueError(f"scale factor lambda_{i} is zero")
    A = algebra.matrix
    out = F.zeros((algebra.n, algebra.n))
    for i in range(algebra.n):
        inv_sq = F.inv(lam[i] * lam[i])
        for j in range(algebra.n):
            a = A[i, j]
            if a != 0:
                v = a * lam[j] * inv_sq
                out[i, j] = v % F.p if F.kind == "prime" else v
    return EvolutionAlgebra._wrap(out, F)


def permute_basis(algebra: EvolutionAlgebra, sigma: Sequence[int]) -> EvolutionAlgebra:
    """Relabel the basis by ``e_i -> e_sigma(i)``: ``a'_ij = a_{sigma^-1(i), sigma^-1(j)}``."""
    sigma = [int(s) for s in sigma]
    n = algebra.n
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {sigma}")
    inv = np.argsort(sigma)
    out = np.array(algebra.matrix[np.ix_(inv, inv)])
    return EvolutionAlgebra._wrap(out, algebra.field)
