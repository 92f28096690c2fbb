"""Algebra files.

Schema (indices 0-based, values as exact strings; omitted entries are zero)::

    {"field": {"kind": "rational" | "prime" | "real", "p": int?},
     "n": int,
     "entries": [[i, j, "value"], ...],
     "provenance": {...}}

Kronecker products index the pair ``(i, j)`` as ``i * n2 + j``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import EvolutionAlgebra
from .fields import Field


def algebra_to_dict(algebra: EvolutionAlgebra, provenance: dict | None = None) -> dict:
    F = algebra.field
    ii, jj = np.nonzero(algebra.nonzero_mask)
    entries = [[int(i), int(j), F.format(algebra.matrix[i, j])] for i, j in zip(ii, jj)]
    prov = {"tool": "eea", "version": __version__}
    if algebra.name:
        prov["name"] = algebra.name
    prov.update(_jsonable(algebra.meta))
    prov.update(provenance or {})
    return {"field": F.to_json(), "n": algebra.n, "entries": entries, "provenance": prov}


def _jsonable(meta: dict) -> dict:
    return {k: v for k, v in meta.items() if isinstance(v, (str, int, float, bool, list, type(None)))}


def algebra_from_dict(d: dict) -> EvolutionAlgebra:
    try:
        field = Field.from_json(d["field"])
        n = int(d["n"])
        entries = [(int(i), int(j), str(v)) for i, j, v in d["entries"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed algebra document: {exc}") from exc
    prov = d.get("provenance") or {}
    return EvolutionAlgebra.from_triplets(n, entries, field, name=prov.get("name"), meta=prov)


def dumps(algebra: EvolutionAlgebra, provenance: dict | None = None) -> str:
    return json.dumps(algebra_to_dict(algebra, provenance), sort_keys=True) + "\n"


def loads(text: str) -> EvolutionAlgebra:
    return algebra_from_dict(json.loads(text))


def write_algebra(algebra: EvolutionAlgebra, path, provenance: dict | None = None) -> None:
    Path(path).write_text(dumps(algebra, provenance))


def read_algebra(path) -> EvolutionAlgebra:
    return loads(Path(path).read_text())
