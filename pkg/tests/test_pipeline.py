import pytest

from kummer.errors import InputError
from kummer.galois import IntPolynomial
from kummer.pipeline import (
    HYPOTHESIS_CHECKS,
    CaseInput,
    FactorInput,
    parse_case,
    run_case,
)

X5 = IntPolynomial((1, -1, 0, 0, 0, 1))
X3 = IntPolynomial((-1, -1, 0, 1))


def example1_case(prime_bound=200):
    return CaseInput((FactorInput(X5, True),), prime_bound=prime_bound)


def test_example1_pipeline():
    rep = run_case(example1_case())
    assert rep.asserted
    names = [h["name"] for h in rep.hypotheses]
    assert list(names) == list(HYPOTHESIS_CHECKS)
    assert all(h["passed"] for h in rep.hypotheses)
    assert rep.conclusions["picard_rank"]["value"] == 17
    assert rep.conclusions["br2_algebraic"]["value"] is True
    assert rep.conclusions["br1_equals_br0"]["value"] is True
    assert rep.conclusions["br_bar_2_invariants_zero"]["value"] is True
    audit = rep.equivariant_audit
    assert audit["h1_pi1"] == 0
    assert audit["group_order"] == 1920
    assert audit["factors"][0]["h1_torsor_group_module"] == 1
    assert audit["factors"][0]["torsor_class_nonzero"] is True
    assert audit["h1_pic_model_assembled"] == 0
    # the vanishing H^1(S5, V) is part of the hypothesis details
    h1_line = next(h for h in rep.hypotheses if h["name"] == "h1_vanishing")
    assert h1_line["details"][0]["h1"] == 0


def test_two_factor_case():
    case = CaseInput((FactorInput(X5, False), FactorInput(X3, False)), prime_bound=500)
    rep = run_case(case)
    assert rep.asserted
    assert rep.case["g"] == 3 and rep.case["n"] == 2
    assert rep.conclusions["picard_rank"]["value"] == 2**6 + 2
    assert rep.equivariant_audit["pi1_permutation_basis"] is True


def test_two_nontrivial_torsor_factors():
    case = CaseInput((FactorInput(X5, True), FactorInput(X3, True)), prime_bound=500)
    rep = run_case(case)
    assert rep.asserted
    audit = rep.equivariant_audit
    assert audit["group_order"] == (16 * 120) * (4 * 6)
    assert audit["h1_pi1"] == 0
    for line in audit["factors"]:
        assert line["h1_torsor_group_module"] == 1
        assert line["torsor_class_nonzero"] is True
        assert line["h1_pic_factor_model"] == 0
    assert rep.conclusions["picard_rank"]["value"] == 66


def test_mixed_torsor_flags():
    case = CaseInput((FactorInput(X5, True), FactorInput(X3, False)), prime_bound=500)
    rep = run_case(case)
    assert rep.asserted
    lines = rep.equivariant_audit["factors"]
    assert lines[0]["h1_torsor_group_module"] == 1
    assert lines[1]["h1_torsor_group_module"] == 0
    assert rep.equivariant_audit["pi1_permutation_basis"] is False


def test_duplicate_polynomials_withheld():
    case = CaseInput((FactorInput(X5, False), FactorInput(X5, False)))
    rep = run_case(case)
    assert not rep.asserted
    assert "linear_disjointness" in rep.conclusions["withheld_because"]
    assert rep.conclusions["picard_rank"]["value"] is None


def test_fault_injection_withholds_every_conclusion():
    for check in HYPOTHESIS_CHECKS:
        rep = run_case(example1_case(), force_fail=check)
        assert not rep.asserted, check
        assert rep.conclusions["withheld_because"] == [check]
        for key in ("picard_rank", "br2_algebraic", "br1_equals_br0", "br_bar_2_invariants_zero"):
            assert rep.conclusions[key]["value"] is None
        forced = next(h for h in rep.hypotheses if h["name"] == check)
        assert forced.get("fault_injected") is True


def test_report_determinism():
    r1 = run_case(example1_case()).to_json()
    r2 = run_case(example1_case()).to_json()
    assert r1 == r2


def test_conclusions_tagged_with_sources():
    rep = run_case(example1_case())
    for key in ("picard_rank", "br2_algebraic", "br1_equals_br0", "br_bar_2_invariants_zero"):
        assert rep.conclusions[key]["source"] == "COMPUTED"
        assert rep.conclusions[key]["citation"]
    assert rep.conclusions["odd_part_unobstructed_note"]["source"].startswith("CITED")


def test_case_input_validation():
    with pytest.raises(InputError):
        CaseInput(())
    with pytest.raises(InputError):
        CaseInput((FactorInput(IntPolynomial((1, 0, 1)), False),))  # even degree
    with pytest.raises(InputError):
        CaseInput((FactorInput(X3, False),))  # g = 1
    with pytest.raises(InputError):
        CaseInput((FactorInput(X5, False), FactorInput(X5, True)), mode="bogus")


def test_beyond_lattice_cap_fails_closed():
    # g = 4 passes input validation but the equivariant audit cannot run
    f2 = IntPolynomial((3, -1, 0, 0, 0, 1))  # x^5 - x + 3, disc != disc(X5)
    from kummer.galois import discriminant

    assert discriminant(f2) != 0
    case = CaseInput((FactorInput(X5, False), FactorInput(f2, False)), prime_bound=500)
    rep = run_case(case)
    assert not rep.asserted
    withheld = rep.conclusions["withheld_because"]
    assert "pi1_cohomology" in withheld and "pic_model_cohomology" in withheld


def test_parse_case_roundtrip():
    obj = {
        "factors": [
            {"poly": ["1", "-1", "0", "0", "0", "1"], "torsor_nontrivial": True}
        ],
        "prime_bound": 200,
    }
    case = parse_case(obj)
    assert case.factors[0].poly == X5
    assert case.factors[0].torsor_nontrivial is True
    with pytest.raises(InputError):
        parse_case({"factors": []})
    with pytest.raises(InputError):
        parse_case({"factors": [{"poly": ["x"]}]})
    with pytest.raises(InputError):
        parse_case([1, 2])


def test_unknown_galois_group_withholds():
    # degree 9 polynomial: certification refuses, conclusions withheld
    f = IntPolynomial((1, 1, 0, 0, 0, 0, 0, 0, 0, 1))
    case = CaseInput((FactorInput(f, False),), prime_bound=100)
    rep = run_case(case)
    assert not rep.asserted
    assert "galois_certification" in rep.conclusions["withheld_because"]


def test_heuristic_mode_accepts_heuristic_disjointness():
    # two alternating quintics of the same degree: disjointness is HeuristicOnly;
    # certify mode withholds at that check, heuristic mode lets it pass (the
    # lattice cap then withholds downstream since g = 4)
    a5 = IntPolynomial((16, 20, 0, 0, 0, 1))  # x^5 + 20x + 16, square disc
    a5b = a5.shift(2)  # same field; still alternating with square disc
    case_c = CaseInput((FactorInput(a5, False), FactorInput(a5b, False)), prime_bound=500)
    rep_c = run_case(case_c)
    assert "linear_disjointness" in rep_c.conclusions["withheld_because"]
    case_h = CaseInput(
        (FactorInput(a5, False), FactorInput(a5b, False)), prime_bound=500, mode="heuristic"
    )
    rep_h = run_case(case_h)
    dis = next(h for h in rep_h.hypotheses if h["name"] == "linear_disjointness")
    assert dis["passed"] is True
    assert dis["details"]["verdict"] == "HeuristicOnly"
    assert "frobenius_scores" in dis["details"]
    # frobenius flags the dependence loudly even though the rule engine cannot
    assert dis["details"]["frobenius_scores"]["0,1"] > 0.5
    assert "pi1_cohomology" in rep_h.conclusions["withheld_because"]


def test_degree3_alternating_rejected():
    # x^3 - 3x - 1 has square discriminant 81: Galois group A_3, not allowed
    f = IntPolynomial((-1, -3, 0, 1))
    from kummer.galois import discriminant, disc_is_square

    assert disc_is_square(discriminant(f))
    case = CaseInput((FactorInput(f, False), FactorInput(X5, False)), prime_bound=200)
    rep = run_case(case)
    assert not rep.asserted
    assert "galois_certification" in rep.conclusions["withheld_because"]
