import math
from fractions import Fraction

import pytest

import frozen
from eea.algebra import EvolutionAlgebra
from eea.audit import (
    AuditReport,
    check_alon_boppana,
    check_cayley_identity,
    check_cheeger_paper,
    check_diameter_bound,
    check_mixing,
    check_persistency,
    check_prop_2_5,
    check_ramanujan_expansion,
    check_sandwich,
    check_spectral_gap_bound,
    check_support_growth,
    check_tensor_cheeger,
    check_trivial_bound,
    run_full_audit,
)
from eea.constructions import (
    cayley_evolution_algebra,
    complete_algebra,
    cycle_algebra,
    direct_sum,
    normalize_rows,
    petersen_algebra,
    random_regular_algebra,
)
from eea.groups import elementary_generating_set, sl2
from eea.io import dumps, loads


def by_id(checks):
    return {c.theorem: c for c in checks}


def test_diameter_examples(petersen):
    c6 = check_diameter_bound(cycle_algebra(6))
    assert c6.holds and c6.lhs == 3 and c6.rhs == pytest.approx(6 * math.log(6) + 1)
    k2 = check_diameter_bound(complete_algebra(2))
    assert k2.holds and k2.rhs == pytest.approx(2 * math.log(2) + 1)
    p = check_diameter_bound(petersen)
    assert p.holds and p.rhs == pytest.approx(6 * math.log(10) + 1)
    base2 = check_diameter_bound(petersen, log=math.log2)
    assert base2.rhs == pytest.approx(6 * math.log2(10) + 1)
    assert not check_diameter_bound(direct_sum(cycle_algebra(3), cycle_algebra(3))).hypotheses_met


def test_support_growth_examples(petersen):
    for A in (petersen, complete_algebra(3)):
        checks = check_support_growth(A)
        assert all(c.holds for c in checks)
        assert {c.theorem for c in checks} == {"Thm4.3-step", "Thm4.3-closed"}


def test_cheeger_forms(petersen):
    p = by_id(check_cheeger_paper(petersen))
    assert all(c.holds for c in p.values())
    assert p["Thm7.2-proof-end-lower"].lhs == pytest.approx(0.5)
    k16 = by_id(check_cheeger_paper(complete_algebra(16)))
    low = k16["Thm7.2-proof-end-lower"]
    assert low.failed and not low.assertable
    assert low.lhs == pytest.approx(32) and low.rhs == pytest.approx(frozen.K16_GAP)
    assert k16["Cheeger-standard-lower"].holds
    assert k16["Cheeger-standard-lower"].lhs == pytest.approx(64 / 30)
    # h(K_9) = 5 from the enumeration oracle, so the proof-end constant gives 12.5 > 9
    k9 = by_id(check_cheeger_paper(complete_algebra(9)))["Thm7.2-proof-end-lower"]
    assert frozen.COMPLETE_CHEEGER[9][0] == 5
    assert k9.lhs == pytest.approx(12.5) and k9.rhs == pytest.approx(frozen.K9_GAP) and k9.failed
    assert all(c.holds for c in check_cheeger_paper(cycle_algebra(6)))


def test_cheeger_forms_skip_weighted():
    W = EvolutionAlgebra([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert not any(c.hypotheses_met for c in check_cheeger_paper(W))


def test_trivial_bound_examples(petersen):
    assert check_trivial_bound(cycle_algebra(6)).holds
    k4 = check_trivial_bound(complete_algebra(4))
    assert k4.failed and k4.lhs == 2 and k4.rhs == Fraction(3, 2)
    assert check_trivial_bound(petersen).holds


def test_ramanujan_expansion_examples(petersen):
    for A in (petersen, complete_algebra(4), cycle_algebra(8)):
        c = check_ramanujan_expansion(A)
        assert c.hypotheses_met and c.holds
    assert not check_ramanujan_expansion(direct_sum(cycle_algebra(4), cycle_algebra(4))).hypotheses_met


def test_spectral_gap_bound_assertable_only_for_graphs(petersen):
    assert check_spectral_gap_bound(petersen).assertable
    weighted = EvolutionAlgebra([[0, 2, 1], [2, 0, 1], [1, 1, 0]])
    c = check_spectral_gap_bound(weighted)
    assert c.hypotheses_met and not c.assertable


def test_mixing_examples(petersen):
    p = by_id(check_mixing(normalize_rows(petersen), 50))
    assert p["Mixing-corrected"].holds and p["Thm6.3"].holds
    c4 = by_id(check_mixing(normalize_rows(cycle_algebra(4)), 16))
    assert c4["Mixing-corrected"].holds
    assert c4["Thm6.3"].failed
    assert c4["Thm6.3"].witness["first_violation"] == frozen.C4_PAPER_FIRST_VIOLATION
    one = by_id(check_mixing(EvolutionAlgebra([[1]]), 5))
    assert one["Mixing-corrected"].holds and not one["Thm6.3"].hypotheses_met
    assert not check_mixing(petersen)[0].hypotheses_met


def test_tensor_examples():
    assert check_tensor_cheeger(complete_algebra(3), complete_algebra(3)).holds
    c4 = check_tensor_cheeger(cycle_algebra(4), cycle_algebra(4))
    assert c4.failed and c4.lhs == 1 and c4.rhs == 0 and c4.witness["components"] == 2
    assert check_tensor_cheeger(complete_algebra(3), cycle_algebra(5)).hypotheses_met


def test_persistency_findings():
    tri = by_id(check_persistency(complete_algebra(3), 6))
    assert tri["Thm4.5"].failed and tri["Thm4.5"].witness["first_absence"]["0"] == 1
    assert tri["Thm4.5-window"].holds


def test_prop_2_5_on_disconnected():
    checks = by_id(check_prop_2_5(direct_sum(cycle_algebra(3), cycle_algebra(4))))
    assert checks["Prop2.5(i)"].holds
    assert not checks["Prop2.5(iii)-lower"].hypotheses_met


def test_sandwich_and_cayley_identity():
    assert all(c.holds for c in check_sandwich(random_regular_algebra(12, 3, seed=5)))
    G = sl2(3)
    S = elementary_generating_set(G)
    A = cayley_evolution_algebra(G, S)
    c = check_cayley_identity(G, S, A)
    assert c.holds and c.lhs == 0


def test_alon_boppana_trends():
    fam = [random_regular_algebra(n, 3, seed=0) for n in range(10, 26, 2)]
    t = check_alon_boppana(fam, 3)
    assert t.verdict in ("consistent", "inconsistent") and t.lambda2_within_d
    cyc = check_alon_boppana([cycle_algebra(n) for n in (6, 10, 20, 40)], 2)
    assert [m[1] for m in cyc.members] == pytest.approx([2 * math.cos(2 * math.pi / n) for n in (6, 10, 20, 40)])
    assert cyc.verdict == "consistent"
    assert check_alon_boppana([cycle_algebra(5)], 2).verdict == "undefined"


def test_full_audit_petersen(petersen):
    rep = run_full_audit(petersen)
    assert rep.assertable_failures == 0
    keys = [(c.theorem, c.input) for c in rep.checks]
    assert keys == sorted(keys)


def test_full_audit_k4_finding():
    rep = run_full_audit(complete_algebra(4))
    assert rep.assertable_failures == 0
    # the strict all-k persistency reading also fails because the diagonal is zero
    assert [c.theorem for c in rep.findings()] == ["Thm4.5", "Thm7.4"]


def test_full_audit_kron_finding():
    rep = run_full_audit(factors=(cycle_algebra(4), cycle_algebra(4)))
    assert rep.assertable_failures == 0
    assert rep.findings("Thm9.6")


def test_full_audit_family_trend():
    fam = [random_regular_algebra(n, 3, seed=1) for n in (10, 14, 18)]
    rep = run_full_audit(family=fam)
    assert rep.trends and any(c.theorem == "Thm8.2" for c in rep.checks)
    assert not any(c.assertable for c in rep.checks)


def test_report_rendering(petersen):
    rep = run_full_audit(complete_algebra(4))
    table = rep.render_table()
    assert "FINDING" in table and table.splitlines()[0].startswith("theorem")
    doc = rep.to_json()
    assert doc["report_findings"] == 2 and doc["assertable_failures"] == 0


def test_audit_reproducible_from_serialised_input():
    A = random_regular_algebra(12, 3, seed=9)
    a = run_full_audit(A).to_json()
    b = run_full_audit(loads(dumps(A))).to_json()
    assert a["checks"] == b["checks"]


def test_margin_sign():
    rep = AuditReport("x", [check_trivial_bound(complete_algebra(4))])
    assert rep.checks[0].margin == Fraction(-1, 2)
