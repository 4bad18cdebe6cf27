from __future__ import annotations

import logging

import pytest

from commuting_powers.catalog.specs import make
from commuting_powers.core.errors import BudgetExceeded, NotCoprime, UnboundVariable
from commuting_powers.core.law_parser import format_law, parse_law, parse_word
from commuting_powers.core.laws import (
    commutator_law,
    eval_word,
    holds,
    power_commute,
    power_distribution_laws,
    property_laws,
    satisfies_P,
    witness_assignment,
)


def test_eval_word_commutator(s3):
    assert eval_word(s3, parse_word("[x,y]"), {"x": 1, "y": 4}) == 2


def test_eval_word_identity_and_powers(s3, c12):
    assert eval_word(s3, parse_word("1"), {}) == 0
    assert eval_word(c12, parse_word("x^5 y^-1"), {"x": 1, "y": 2}) == 3
    assert eval_word(s3, parse_word("(x y)^2"), {"x": 1, "y": 3}) == eval_word(
        s3, parse_word("x y x y"), {"x": 1, "y": 3}
    )


def test_eval_word_unbound_variable(s3):
    with pytest.raises(UnboundVariable) as exc:
        eval_word(s3, parse_word("x y"), {"x": 1})
    assert exc.value.name == "y"


def test_holds_reports_first_violation(s3):
    check = holds(s3, "[x^3,y^3]=1")
    assert not check
    assert check.witness == (1, 3)
    assert witness_assignment(parse_law("[x^3,y^3]=1"), check) == {"x": 1, "y": 3}


def test_holds_on_true_laws(s3, c12):
    assert holds(s3, "x=x")
    assert holds(s3, "[x^2,y^2]=1")
    assert holds(c12, "[x,y]=1")
    assert holds(s3, "1=1").witness is None


def test_holds_budget():
    with pytest.raises(BudgetExceeded):
        holds(make("S4"), "[x,y]=[y,z]", budget=1000)


def test_holds_is_worker_independent():
    G = make("D6")
    law = "[x^2,y]=1"
    assert holds(G, law, workers=1) == holds(G, law, workers=3)


def test_power_commute_examples(s3):
    check = power_commute(s3, 3)
    assert not check and check.witness == (1, 3)
    squares = power_commute(s3, 2)
    assert squares and squares.image == (0, 2, 5)
    assert power_commute(s3, 6).image == (0,)


def test_power_commute_matches_brute_force(catalog_24):
    for G in catalog_24:
        for m in range(1, 13):
            fast = power_commute(G, m)
            slow = holds(G, commutator_law(m))
            assert fast.holds == slow.holds, (G.name, m)
            assert fast.witness == slow.witness, (G.name, m)


def test_property_laws_text():
    assert [format_law(law) for law in property_laws(2, 3)] == ["[x^2,y^2]=1", "[x^3,y^3]=1"]


def test_satisfies_p_on_s3(s3):
    report = satisfies_P(s3, 2, 3)
    assert not report.satisfies_p
    assert not report.is_abelian
    assert (report.witness.a, report.witness.b, report.witness.exponent) == (1, 3, 3)
    assert report.witness.law == "[x^3,y^3]=1"


def test_satisfies_p_on_abelian_groups(catalog_48):
    for G in catalog_48:
        if G.is_abelian:
            report = satisfies_P(G, 2, 3)
            assert report.satisfies_p and report.witness is None


def test_satisfies_p_refuses_non_coprime_pairs(s3):
    with pytest.raises(NotCoprime):
        satisfies_P(s3, 2, 4)


def test_non_coprime_override_warns(s3, caplog):
    with caplog.at_level(logging.WARNING):
        report = satisfies_P(s3, 2, 4, allow_non_coprime=True)
    # squares and fourth powers of S3 both land in A3
    assert report.satisfies_p and not report.is_abelian
    assert not report.theorems_applicable
    assert "without coprimality" in caplog.text


def test_satisfies_p_rejects_zero_exponent(s3):
    with pytest.raises(ValueError):
        satisfies_P(s3, 0, 1)


def test_power_distribution_laws():
    assert format_law(power_distribution_laws(2)[0]) == "(x y)^2=x^2 y^2"
    assert len(power_distribution_laws(5, count=3)) == 3


def test_three_consecutive_distribution_laws_force_abelian(catalog_24):
    for G in [G for G in catalog_24 if G.order <= 12]:
        for r in range(2, 6):
            if all(holds(G, law) for law in power_distribution_laws(r)):
                assert G.is_abelian, (G.name, r)
            if G.is_abelian:
                assert all(holds(G, law) for law in power_distribution_laws(r))


def test_two_consecutive_distribution_laws_are_not_enough():
    # exponent-3 Heisenberg group satisfies (xy)^s = x^s y^s for s = 3, 4
    G = make("Heis3")
    assert all(holds(G, law) for law in power_distribution_laws(3, count=2))
    assert not G.is_abelian


def test_squares_distribute_exactly_in_abelian_groups(catalog_24):
    for G in catalog_24:
        check = holds(G, "(x y)^2=x^2 y^2")
        assert check.holds == G.is_abelian, G.name
        if not check:
            a, b = check.witness
            assert G.mul(a, b) != G.mul(b, a)
