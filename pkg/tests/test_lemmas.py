from __future__ import annotations

import pytest

from commuting_powers.catalog.enumeration import enumerate_order
from commuting_powers.catalog.specs import make
from commuting_powers.core.arith import coprime, factorize
from commuting_powers.core.errors import NotCoprime, OrderCapExceeded, PreconditionFailed, PrimeDoesNotDivideOrder
from commuting_powers.core.group import SubgroupSet, all_subgroups, quotient, subgroup_group
from commuting_powers.core.laws import satisfies_P
from commuting_powers.theorems.lemmas import (
    FINITE_ABELIAN,
    SYLOW_CRITERION,
    TORSION_SUBGROUP,
    find_sylow_subgroups,
    k_torsion_set,
    structural_violation,
    sylow_set,
    verify_lemma_2_1,
    verify_lemma_3_1,
    verify_theorem_3_1,
)

PAIRS = [(2, 3), (3, 4), (2, 5), (4, 9)]


def _satisfies(G, m, n):
    return satisfies_P(G, m, n).satisfies_p


# torsion sets


def test_k_torsion_set_in_s3(s3):
    cubes = k_torsion_set(s3, 3)
    assert cubes.elements == (0, 2, 5)
    assert cubes.is_subgroup and cubes.is_normal and cubes.is_abelian

    involutions = k_torsion_set(s3, 2)
    assert involutions.elements == (0, 1, 3, 4)
    assert not involutions.is_subgroup
    assert involutions.first_escape() == (1, 3, 2)
    assert structural_violation(involutions) == {"property": "closed", "a": 1, "b": 3, "product": 2}


def test_k_torsion_set_edge_cases(c12):
    assert k_torsion_set(c12, 1).elements == (0,)
    assert k_torsion_set(c12, 12).size == 12
    with pytest.raises(ValueError):
        k_torsion_set(c12, 0)


def test_k_torsion_set_matches_comprehension(catalog_24):
    for G in catalog_24:
        for k in range(1, 25):
            expected = tuple(x for x in range(G.order) if G.power(x, k) == 0)
            assert k_torsion_set(G, k).elements == expected, (G.name, k)


def test_lemma_2_1_on_c12(c12):
    verdict = verify_lemma_2_1(c12, 3, 2, 3)
    assert verdict.holds and verdict.statement == TORSION_SUBGROUP
    assert verdict.evidence["members"] == [0, 4, 8]
    assert verdict.evidence["normal"] and verdict.evidence["abelian"]


def test_lemma_2_1_preconditions(s3, c6):
    with pytest.raises(PreconditionFailed) as exc:
        verify_lemma_2_1(s3, 2, 2, 3)
    assert exc.value.which == "property"
    with pytest.raises(PreconditionFailed) as exc:
        verify_lemma_2_1(c6, 6, 2, 3)
    assert exc.value.which == "k-coprimality"
    with pytest.raises(NotCoprime):
        verify_lemma_2_1(c6, 5, 2, 4)


def test_lemma_2_1_universal(catalog_24):
    checked = 0
    for G in catalog_24:
        for m, n in [(2, 3), (3, 4), (2, 5)]:
            if not _satisfies(G, m, n):
                continue
            for k in range(1, 25):
                if coprime(k, m) or coprime(k, n):
                    verdict = verify_lemma_2_1(G, k, m, n)
                    assert verdict.holds, (G.name, k, m, n, verdict.violation)
                    checked += 1
    assert checked > 0


# Sylow


def test_sylow_set_examples(s3, c12):
    three = sylow_set(s3, 3)
    assert three.size == 3 and three.is_subgroup
    two = sylow_set(s3, 2)
    assert two.size == 4 and not two.is_subgroup
    assert sylow_set(c12, 2).elements == (0, 3, 6, 9)


def test_sylow_set_errors(c12):
    with pytest.raises(PrimeDoesNotDivideOrder):
        sylow_set(c12, 5)
    with pytest.raises(ValueError):
        sylow_set(c12, 4)


def test_find_sylow_subgroups(s3, c12):
    assert [P.size for P in find_sylow_subgroups(s3, 2)] == [2, 2, 2]
    assert len(find_sylow_subgroups(s3, 3)) == 1
    assert [P.elements for P in find_sylow_subgroups(c12, 3)] == [(0, 4, 8)]
    assert len(find_sylow_subgroups(make("S4"), 2)) == 3
    assert len(find_sylow_subgroups(make("A4"), 3)) == 4
    with pytest.raises(OrderCapExceeded):
        find_sylow_subgroups(make("S4"), 3, cap=10)


def test_lemma_3_1_examples(s3, c12):
    v = verify_lemma_3_1(s3, 3)
    assert v.holds and v.statement == SYLOW_CRITERION
    assert v.evidence["torsion_set_is_subgroup"] and v.evidence["unique"]
    assert v.evidence["sylow_subgroups"] == [v.evidence["torsion_set"]]

    v = verify_lemma_3_1(s3, 2)
    assert v.holds
    assert not v.evidence["torsion_set_is_subgroup"] and not v.evidence["unique"]
    assert len(v.evidence["sylow_subgroups"]) == 3

    v = verify_lemma_3_1(c12, 2)
    assert v.holds and v.evidence["unique"] and v.evidence["prime_power"] == 4


def _check_lemma_3_1(groups):
    for G in groups:
        for p in factorize(G.order).primes:
            v = verify_lemma_3_1(G, p)
            assert v.holds, (G.name, p, v.violation)
            if v.evidence["unique"]:
                assert v.evidence["sylow_subgroups"][0] == v.evidence["torsion_set"]


def test_lemma_3_1_universal_catalog(catalog_24):
    _check_lemma_3_1(catalog_24)


@pytest.mark.slow
def test_lemma_3_1_universal_enumerated(enumerated_12):
    _check_lemma_3_1(enumerated_12)


# finite abelian statement


def test_theorem_on_c12(c12):
    v = verify_theorem_3_1(c12, 2, 3)
    assert v.holds and not v.vacuous and v.statement == FINITE_ABELIAN
    assert [s["prime"] for s in v.evidence["sylow"]] == [2, 3]
    assert v.evidence["product"] == "P2xP3"
    assert v.evidence["product_order"] == 12
    assert v.evidence["internal_map"] and v.evidence["isomorphic"]


def test_theorem_vacuous_on_s3(s3):
    v = verify_theorem_3_1(s3, 2, 3)
    assert v.holds and v.vacuous
    witness = v.evidence["property"]["witness"]
    assert (witness["a"], witness["b"], witness["exponent"]) == (1, 3, 3)
    assert v.note == "property fails, statement is vacuous"


def test_theorem_on_trivial_group():
    v = verify_theorem_3_1(make("C1"), 2, 3)
    assert v.holds and not v.vacuous
    assert v.evidence["product_order"] == 1


def test_theorem_rejects_non_coprime(c6):
    with pytest.raises(NotCoprime):
        verify_theorem_3_1(c6, 2, 4)


def test_theorem_cap_applies_only_to_the_decomposition(c12):
    with pytest.raises(OrderCapExceeded):
        verify_theorem_3_1(c12, 2, 3, cap=10)
    # the vacuous branch never builds the lattice
    assert verify_theorem_3_1(make("S5"), 2, 3, cap=10).vacuous


def _check_theorem(groups):
    satisfiers = 0
    for G in groups:
        for m, n in PAIRS:
            v = verify_theorem_3_1(G, m, n)
            assert v.holds, (G.name, m, n, v.violation)
            if not v.vacuous:
                satisfiers += 1
                assert G.is_abelian and v.evidence["isomorphic"]
    return satisfiers


def test_theorem_on_small_enumerated_groups():
    groups = [G for n in range(1, 8) for G in enumerate_order(n)]
    assert _check_theorem(groups) > 0


@pytest.mark.slow
def test_theorem_exhaustive_up_to_order_12(enumerated_12):
    assert len(enumerated_12) == 24
    assert _check_theorem(enumerated_12) > 0


def test_theorem_on_catalog(catalog_48):
    assert _check_theorem(catalog_48) > 0


# heredity of the property


@pytest.mark.parametrize("m, n", [(2, 3), (3, 4), (2, 5)])
def test_property_passes_to_subgroups_and_quotients(catalog_24, m, n):
    for G in catalog_24:
        if not _satisfies(G, m, n):
            continue
        for H in all_subgroups(G):
            assert _satisfies(subgroup_group(H), m, n), (G.name, H.elements)
            if H.is_normal:
                assert _satisfies(quotient(G, H), m, n), (G.name, H.elements)


def test_single_power_law_passes_to_subgroups_and_quotients(catalog_24):
    # without coprimality nonabelian satisfiers exist; the laws are still inherited
    nonabelian = 0
    for G in catalog_24:
        if not satisfies_P(G, 2, 4, allow_non_coprime=True).satisfies_p:
            continue
        nonabelian += not G.is_abelian
        for H in all_subgroups(G):
            assert satisfies_P(subgroup_group(H), 2, 4, allow_non_coprime=True).satisfies_p
            if H.is_normal:
                assert satisfies_P(quotient(G, H), 2, 4, allow_non_coprime=True).satisfies_p
    assert nonabelian > 0


def test_structural_violation_reports_normality(s3):
    H = SubgroupSet(s3, [0, 1])
    violation = structural_violation(H)
    assert violation["property"] == "normal"
    g, h, conjugate = violation["g"], violation["h"], violation["conjugate"]
    assert h in H and conjugate not in H
    assert conjugate == s3.mul(s3.mul(g, h), s3.inverses[g])
