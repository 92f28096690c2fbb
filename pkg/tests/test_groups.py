import numpy as np
import pytest

import frozen
import oracles
from eea.errors import ResourceCapError
from eea.groups import (
    GeneratingSet,
    closure,
    cyclic_group,
    dihedral_group,
    elementary_generating_set,
    generating_set,
    group_from_generators,
    legendre,
    lps_generating_set,
    lps_quadruples,
    pgl2,
    primitive_root,
    psl2,
    sl2,
    symmetric_group,
)


def test_orders_match_frozen_oracle():
    assert sl2(3).order == frozen.GROUP_ORDERS["SL2(3)"]
    assert sl2(5).order == frozen.GROUP_ORDERS["SL2(5)"]
    assert psl2(5).order == frozen.GROUP_ORDERS["PSL2(5)"]
    assert pgl2(13).order == frozen.GROUP_ORDERS["PGL2(13)"]
    assert symmetric_group(3).order == frozen.GROUP_ORDERS["S3"]
    assert cyclic_group(5).order == frozen.GROUP_ORDERS["Z5"]
    assert dihedral_group(5).order == frozen.GROUP_ORDERS["D5"]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_matrix_orders_against_brute_force(p):
    assert sl2(p).order == oracles.matrix_group_order(p, "sl") == p * (p * p - 1)
    assert psl2(p).order == oracles.matrix_group_order(p, "psl")
    assert pgl2(p).order == oracles.matrix_group_order(p, "pgl")


def test_generic_closure_examples():
    assert group_from_generators([[1, 2, 3, 4, 0]]).order == 5
    assert group_from_generators([[1, 0, 2], [0, 2, 1]]).order == 6
    assert group_from_generators([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], p=3).order == 24
    assert symmetric_group(5).order == 120


def test_identity_is_index_zero():
    for G in (cyclic_group(6), symmetric_group(4), sl2(3), psl2(5), pgl2(5)):
        assert all(G.mul(0, g) == g == G.mul(g, 0) for g in range(G.order))


def test_malformed_generators():
    with pytest.raises(ValueError):
        group_from_generators([[0, 0, 1]])
    with pytest.raises(ValueError):
        group_from_generators([[1, 2, 3]], p=5)
    with pytest.raises(ValueError):
        group_from_generators([[1, 1, 1, 1]], p=5)
    with pytest.raises(ValueError):
        group_from_generators([])
    with pytest.raises(ValueError):
        sl2(9)
    with pytest.raises(ValueError):
        symmetric_group(8)


def test_closure_cap():
    with pytest.raises(ResourceCapError):
        group_from_generators([[1, 1, 0, 1], [1, 0, 1, 1]], p=7, cap=100)


def test_deterministic_numbering():
    a, b = psl2(7), psl2(7)
    assert np.array_equal(a.elements, b.elements)
    assert a.labels == b.labels


def test_pgl_canonical_form():
    G = pgl2(5)
    for row in G.elements:
        col_major = [row[0], row[2], row[1], row[3]]
        first = next(v for v in col_major if v)
        assert first == 1


def test_psl_representative_is_smaller_encoding():
    G = psl2(7)
    p = 7
    for row in G.elements:
        neg = [(-v) % p for v in row]
        enc = lambda r: sum(int(v) * p ** (3 - k) for k, v in enumerate(r))
        assert enc(row) <= enc(neg)


@pytest.mark.parametrize("make", [lambda: cyclic_group(7), lambda: dihedral_group(6), lambda: symmetric_group(4), lambda: sl2(3), lambda: psl2(5), lambda: pgl2(5)])
def test_verify_small_groups(make):
    make().verify()


def test_verify_sampled_path():
    G = psl2(11)
    assert G.order > 256
    G.verify(seed=3)


@pytest.mark.slow
def test_verify_pgl2_13():
    pgl2(13).verify()


def test_inverse_table():
    G = symmetric_group(4)
    inv = G.inverse_table
    assert all(G.mul(g, int(inv[g])) == 0 for g in range(G.order))


def test_group_json():
    d = cyclic_group(4).to_json()
    assert d["order"] == 4 and d["identity"] == 0
    assert d["table"][1][3] == 0


def test_generating_sets():
    G = sl2(5)
    S = elementary_generating_set(G)
    assert len(S) == 4 and S.symmetric and not S.contains_identity
    half = generating_set(G, [[1, 1, 0, 1]])
    assert not half.symmetric
    assert GeneratingSet(G, (0,)).contains_identity


def test_number_theory_helpers():
    assert primitive_root(13) == 2
    assert primitive_root(7) == 3
    assert legendre(5, 13) == -1
    assert legendre(13, 17) == 1


@pytest.mark.parametrize("p", sorted(frozen.LPS_QUADRUPLES))
def test_lps_quadruples_match_oracle(p):
    assert sorted(lps_quadruples(p)) == frozen.LPS_QUADRUPLES[p]
    assert len(lps_quadruples(p)) == p + 1


@pytest.mark.parametrize("p, q", [(5, 13), (13, 5), (5, 17), (13, 17), (17, 5), (17, 13), (5, 29), (29, 13), (29, 37)])
def test_lps_generating_sets(p, q):
    S = lps_generating_set(p, q)
    assert len(S) == p + 1
    assert S.symmetric and not S.contains_identity
    expected = "PSL2" if legendre(p, q) == 1 else "PGL2"
    assert S.group.name.startswith(expected)


def test_lps_5_13_lands_in_pgl():
    S = lps_generating_set(5, 13)
    assert S.group.name == "PGL2(F13)" and S.group.order == 2184


def test_lps_rejects_bad_parameters():
    for p, q in [(3, 13), (5, 7), (5, 5), (9, 13), (29, 5)]:
        with pytest.raises(ValueError):
            lps_generating_set(p, q)
