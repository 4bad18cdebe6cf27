from __future__ import annotations

import pytest

from commuting_powers.catalog.specs import make
from commuting_powers.core.errors import PreconditionFailed
from commuting_powers.core.laws import satisfies_P
from commuting_powers.core.models import TorsionDecomposition
from commuting_powers.theorems.torsion import (
    TORSION_COMMUTING,
    decomposition_errors,
    reconstruct,
    torsion_decompose,
    verify_torsion_commuting,
)


def test_identity_decomposes_to_nothing(s3):
    d = torsion_decompose(s3, 0)
    assert d.order == 1 and d.parts == [] and d.certificate is None
    assert reconstruct(s3, d) == 0


def test_generator_of_c12(c12):
    d = torsion_decompose(c12, 1)
    assert d.order == 12
    first, second = d.parts
    assert (first.element, first.prime, first.exponent, first.prime_power, first.cofactor, first.coefficient) == (
        3, 2, 2, 4, 3, -1,
    )
    assert (second.element, second.prime, second.prime_power, second.cofactor, second.coefficient) == (4, 3, 3, 4, 1)
    assert d.certificate.inputs == [3, 4]
    assert reconstruct(c12, d) == 1


def test_prime_power_element_is_its_own_part(c12):
    d = torsion_decompose(c12, 3)
    assert len(d.parts) == 1
    part = d.parts[0]
    assert (part.element, part.cofactor, part.coefficient) == (3, 1, 1)


def test_decompose_rejects_foreign_element(s3):
    with pytest.raises(ValueError):
        torsion_decompose(s3, 6)


def test_decomposition_invariants_on_catalog(catalog_48):
    for G in catalog_48:
        for x in G.elements():
            d = torsion_decompose(G, x)
            assert decomposition_errors(G, d) == [], (G.name, x)
            if d.parts:
                cert = d.certificate
                assert sum(c * q for c, q in zip(cert.coefficients, cert.inputs)) == 1
                assert [p.cofactor for p in d.parts] == cert.inputs


def test_decomposition_errors_detect_tampering(c12):
    d = torsion_decompose(c12, 1)
    tampered = TorsionDecomposition(**{**d.dict(), "element": 7})
    errors = decomposition_errors(c12, tampered)
    assert any("is not 7^3" in e for e in errors)
    assert any("multiply to 1, not 7" in e for e in errors)


def test_model_rejects_bad_coefficients(c12):
    data = torsion_decompose(c12, 1).dict()
    data["parts"][1]["coefficient"] = 2
    with pytest.raises(ValueError):
        TorsionDecomposition(**data)


def test_commuting_argument_on_c6(c6):
    v = verify_torsion_commuting(c6, 2, 3)
    assert v.holds and v.statement == TORSION_COMMUTING
    assert v.evidence == {"prime_power_elements": 3, "pairs": 3, "lemma_route": 1, "split_route": 2}


def test_commuting_argument_on_c6xc5():
    G = make("C6xC5")
    v = verify_torsion_commuting(G, 2, 3)
    assert v.holds
    assert v.evidence["split_route"] > 0 and v.evidence["lemma_route"] > 0
    assert v.evidence["lemma_route"] + v.evidence["split_route"] == v.evidence["pairs"]


def test_commuting_argument_needs_the_property(s3):
    with pytest.raises(PreconditionFailed):
        verify_torsion_commuting(s3, 2, 3)


@pytest.mark.parametrize("m, n", [(2, 3), (3, 4), (2, 5)])
def test_commuting_argument_on_catalog(catalog_24, m, n):
    for G in catalog_24:
        if satisfies_P(G, m, n).satisfies_p:
            v = verify_torsion_commuting(G, m, n)
            assert v.holds, (G.name, v.violation)
