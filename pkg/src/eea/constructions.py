"""Named evolution algebras: cycles, complete graphs, Petersen, Cayley algebras,
Kronecker products, direct sums and seeded random regular algebras."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

import numpy as np

from .algebra import EvolutionAlgebra
from .errors import PreconditionError, ResourceCapError
from .fields import RATIONAL, Field
from .groups import FiniteGroup, GeneratingSet

RANDOM_REGULAR_MAX_TRIES = 100_000


def cycle_algebra(n: int, field: Field = RATIONAL) -> EvolutionAlgebra:
    """``e_i^2 = e_{i-1} + e_{i+1}`` (indices mod n)."""
    if n < 3:
        raise ValueError(f"cycle algebra needs n >= 3, got {n}")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return EvolutionAlgebra.from_edges(n, edges, field, name=f"cycle-{n}", meta={"family": "cycle", "n": n})


def complete_algebra(n: int, field: Field = RATIONAL) -> EvolutionAlgebra:
    """``e_i^2 = sum_{j != i} e_j``."""
    if n < 2:
        raise ValueError(f"complete algebra needs n >= 2, got {n}")
    return EvolutionAlgebra.from_edges(
        n, combinations(range(n), 2), field, name=f"complete-{n}", meta={"family": "complete", "n": n}
    )


def petersen_vertices() -> list:
    """2-subsets of ``{0..4}`` in lexicographic order; vertex ``k`` is the k-th subset."""
    return list(combinations(range(5), 2))


def petersen_algebra(field: Field = RATIONAL) -> EvolutionAlgebra:
    """Kneser graph K(5,2): 2-subsets of {0..4}, adjacent iff disjoint."""
    verts = petersen_vertices()
    edges = [(a, b) for a, b in combinations(range(10), 2) if not set(verts[a]) & set(verts[b])]
    return EvolutionAlgebra.from_edges(10, edges, field, name="petersen", meta={"family": "petersen"})


def cayley_evolution_algebra(group: FiniteGroup, gens: GeneratingSet | Sequence[int], field: Field = RATIONAL) -> EvolutionAlgebra:
    """``e_g^2 = sum_{s in S} e_{g s}``.

    ``S`` must be closed under inversion and must not contain the identity.
    If ``S`` does not generate the group, the algebra is still built and
    ``meta["generates"]`` is False.
    """
    S = tuple(gens.indices if isinstance(gens, GeneratingSet) else (int(s) for s in gens))
    if len(set(S)) != len(S):
        raise ValueError("generating set has repeated elements")
    if group.identity in S:
        raise PreconditionError("identity in S")
    inv = group.inverse_table
    if any(int(inv[s]) not in S for s in S):
        raise PreconditionError("S not symmetric")
    m = group.order
    arr = field.zeros((m, m))
    rows = np.arange(m)
    cols = [group.right_multiply(s) for s in S]
    for c in cols:
        arr[rows, c] = field.one
    generates = _reaches_all(m, cols)
    meta = {
        "family": "cayley",
        "group": group.name,
        "order": m,
        "generators": [group.label(s) for s in S],
        "generates": generates,
    }
    return EvolutionAlgebra._wrap(arr, field, f"cayley-{group.name}", meta)


def _reaches_all(m: int, cols: list) -> bool:
    seen = np.zeros(m, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while len(frontier):
        nxt = np.unique(np.concatenate([c[frontier] for c in cols])) if cols else np.array([], dtype=int)
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return bool(seen.all())


def kronecker_product(A1: EvolutionAlgebra, A2: EvolutionAlgebra) -> EvolutionAlgebra:
    """``a_{(i,j),(k,l)} = a1_ik * a2_jl`` with ``(i, j)`` stored at index ``i * n2 + j``."""
    A1.field.check_same(A2.field)
    n1, n2 = A1.n, A2.n
    M = (A1.matrix[:, None, :, None] * A2.matrix[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    M = A1.field.reduce(M)
    if A1.field.exact:
        M = np.array(M, dtype=object)
    meta = {"family": "kron", "factors": [A1.name, A2.name], "index": "row-major"}
    return EvolutionAlgebra._wrap(M, A1.field, f"kron({A1.name},{A2.name})", meta)


def direct_sum(A1: EvolutionAlgebra, A2: EvolutionAlgebra) -> EvolutionAlgebra:
    """Block-diagonal structural matrix ``diag(A1, A2)``."""
    A1.field.check_same(A2.field)
    n1, n2 = A1.n, A2.n
    M = A1.field.zeros((n1 + n2, n1 + n2))
    M[:n1, :n1] = A1.matrix
    M[n1:, n1:] = A2.matrix
    meta = {"family": "dsum", "factors": [A1.name, A2.name]}
    return EvolutionAlgebra._wrap(M, A1.field, f"dsum({A1.name},{A2.name})", meta)


def random_regular_algebra(n: int, d: int, seed: int, field: Field = RATIONAL, max_tries: int = RANDOM_REGULAR_MAX_TRIES) -> EvolutionAlgebra:
    """Uniform d-regular graph algebra from the pairing model with whole-sample rejection."""
    if not 0 <= d < n:
        raise ValueError(f"need 0 <= d < n, got n={n}, d={d}")
    if (n * d) % 2:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(n), d)
    for _ in range(max_tries):
        pairs = rng.permutation(points).reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        lo, hi = pairs.min(axis=1), pairs.max(axis=1)
        keys = lo * n + hi
        if len(np.unique(keys)) != len(keys):
            continue
        edges = list(zip(lo.tolist(), hi.tolist()))
        meta = {"family": "random-regular", "n": n, "d": d, "seed": seed}
        return EvolutionAlgebra.from_edges(n, edges, field, name=f"random-regular-{n}-{d}-{seed}", meta=meta)
    raise ResourceCapError(f"pairing model rejected {max_tries} samples for n={n}, d={d}")


def normalize_rows(algebra: EvolutionAlgebra) -> EvolutionAlgebra:
    """Divide each row by its sum, giving a row-stochastic matrix for nonnegative input."""
    F = algebra.field
    if F.kind == "prime":
        raise ValueError("row normalisation is meant for rational or real algebras")
    M = np.array(algebra.matrix, copy=True)
    for i in range(algebra.n):
        s = sum(M[i])
        if s == 0:
            raise ValueError(f"row {i} sums to zero")
        inv = F.inv(F.coerce(s)) if F.exact else 1.0 / s
        M[i] = M[i] * inv
    meta = dict(algebra.meta, stochastic=True)
    return EvolutionAlgebra._wrap(M, F, f"stochastic({algebra.name})", meta)


def with_loops(algebra: EvolutionAlgebra, value=1) -> EvolutionAlgebra:
    """Same algebra with every diagonal entry set to ``value``."""
    F = algebra.field
    M = np.array(algebra.matrix, copy=True)
    np.fill_diagonal(M, F.coerce(value))
    return EvolutionAlgebra._wrap(M, F, f"loops({algebra.name})", dict(algebra.meta, loops=True))


def one_way_cycle(n: int, field: Field = RATIONAL) -> EvolutionAlgebra:
    """``e_i^2 = e_{i+1}`` (mod n): connected but not symmetric."""
    if n < 2:
        raise ValueError("one-way cycle needs n >= 2")
    return EvolutionAlgebra.from_triplets(n, [(i, (i + 1) % n, 1) for i in range(n)], field, name=f"one-way-cycle-{n}")


def chain_algebra(n: int, field: Field = RATIONAL) -> EvolutionAlgebra:
    """Strictly upper-triangular chain ``e_i^2 = e_{i+1}``, ``e_{n-1}^2 = 0`` (nilpotent)."""
    if n < 1:
        raise ValueError("chain needs n >= 1")
    return EvolutionAlgebra.from_triplets(n, [(i, i + 1, 1) for i in range(n - 1)], field, name=f"chain-{n}")
