"""Verifiers for the torsion-subgroup, Sylow-criterion and finite-abelian statements.

Each verifier returns a LemmaVerdict whose evidence is plain ids and lists, so a
verdict can be re-checked from scratch or written out as a record.
"""
from __future__ import annotations

import itertools
import logging
from functools import reduce
from typing import Any, Dict, List, Optional

import numpy as np

from commuting_powers.core.arith import coprime, factorize, is_prime
from commuting_powers.core.errors import NotCoprime, PreconditionFailed, PrimeDoesNotDivideOrder
from commuting_powers.core.group import (
    FiniteGroup,
    SubgroupSet,
    all_subgroups,
    are_isomorphic,
    check_order_cap,
    direct_product,
    from_cayley_table,
    subgroup_group,
)
from commuting_powers.core.laws import satisfies_P
from commuting_powers.core.models import LemmaVerdict, PropertyReport

logger = logging.getLogger(__name__)

TORSION_SUBGROUP = "torsion-subgroup"
SYLOW_CRITERION = "sylow-criterion"
FINITE_ABELIAN = "finite-abelian"


def k_torsion_set(G: FiniteGroup, k: int) -> SubgroupSet:
    """{x : x^k = e}; use is_subgroup / first_escape on the result to see whether it closes."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return SubgroupSet(G, G.power_map(k) == 0)


def describe_set(H: SubgroupSet) -> Dict[str, Any]:
    return {
        "members": list(H.elements),
        "subgroup": H.is_subgroup,
        "normal": H.is_normal,
        "abelian": H.is_abelian,
    }


def structural_violation(H: SubgroupSet) -> Optional[Dict[str, Any]]:
    """First reason H is not a normal abelian subgroup, or None."""
    escape = H.first_escape()
    if escape is not None:
        a, b, ab = escape
        return {"property": "closed", "a": a, "b": b, "product": ab}
    pair = H.commutation_witness()
    if pair is not None:
        return {"property": "abelian", "a": pair[0], "b": pair[1]}
    conj = H.conjugation_witness()
    if conj is not None:
        g, h, c = conj
        return {"property": "normal", "g": g, "h": h, "conjugate": c}
    return None


def _property_evidence(report: PropertyReport) -> Dict[str, Any]:
    return report.dict(exclude={"wall_time_ms"})


def require_property(G: FiniteGroup, m: int, n: int) -> PropertyReport:
    if not coprime(m, n):
        raise NotCoprime(f"gcd({m}, {n}) != 1")
    report = satisfies_P(G, m, n)
    if not report.satisfies_p:
        w = report.witness
        raise PreconditionFailed(
            f"{G.name} does not satisfy P({m}, {n}): {w.exponent}-th powers of {w.a} and {w.b} do not commute",
            which="property",
        )
    return report


def verify_lemma_2_1(G: FiniteGroup, k: int, m: int, n: int) -> LemmaVerdict:
    """Under P(m, n), the k-torsion set is a normal abelian subgroup whenever k is coprime to m or n."""
    require_property(G, m, n)
    if not (coprime(k, m) or coprime(k, n)):
        raise PreconditionFailed(f"k={k} is coprime to neither {m} nor {n}", which="k-coprimality")
    H = k_torsion_set(G, k)
    violation = structural_violation(H)
    if violation is not None:
        logger.warning("%s: %d-torsion set is not a normal abelian subgroup: %s", G.name, k, violation)
    return LemmaVerdict(
        statement=TORSION_SUBGROUP,
        holds=violation is None,
        evidence={"k": k, "m": m, "n": n, **describe_set(H)},
        violation=violation,
    )


def _prime_power(G: FiniteGroup, p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")
    alpha = factorize(G.order).exponent_of(p)
    if alpha == 0:
        raise PrimeDoesNotDivideOrder(f"{p} does not divide |{G.name}| = {G.order}")
    return p**alpha


def sylow_set(G: FiniteGroup, p: int) -> SubgroupSet:
    """The p^alpha-torsion set, alpha being the exponent of p in |G|."""
    return k_torsion_set(G, _prime_power(G, p))


def find_sylow_subgroups(G: FiniteGroup, p: int, cap: Optional[int] = None) -> List[SubgroupSet]:
    size = _prime_power(G, p)
    found = [H for H in all_subgroups(G, cap=cap) if H.size == size]
    # Sylow's theorem guarantees at least one
    assert found, f"no subgroup of order {size} in {G.name}"
    return found


def verify_lemma_3_1(G: FiniteGroup, p: int, cap: Optional[int] = None) -> LemmaVerdict:
    """The p^alpha-torsion set is a subgroup iff the Sylow p-subgroup is unique, and then the two coincide."""
    S = sylow_set(G, p)
    sylows = find_sylow_subgroups(G, p, cap=cap)
    closed = S.is_subgroup
    unique = len(sylows) == 1
    agrees = closed == unique and (not closed or sylows[0] == S)
    evidence = {
        "prime": p,
        "prime_power": _prime_power(G, p),
        "torsion_set": list(S.elements),
        "torsion_set_is_subgroup": closed,
        "sylow_subgroups": [list(P.elements) for P in sylows],
        "unique": unique,
    }
    violation = None
    if not agrees:
        violation = {"torsion_set_is_subgroup": closed, "sylow_count": len(sylows)}
        logger.warning("%s: Sylow criterion fails at p=%d: %s", G.name, p, violation)
    return LemmaVerdict(statement=SYLOW_CRITERION, holds=agrees, evidence=evidence, violation=violation)


def internal_product_map(G: FiniteGroup, factors: List[SubgroupSet]) -> np.ndarray:
    """Image in G of every element of P1 x ... x Pr, indexed like direct_product ids."""
    rows = G.rows
    combos = itertools.product(*(P.elements for P in factors))
    return np.asarray([reduce(lambda acc, x: rows[acc][x], combo, 0) for combo in combos], dtype=np.int64)


def _trivial_group() -> FiniteGroup:
    return from_cayley_table([[0]], name="1")


def verify_theorem_3_1(G: FiniteGroup, m: int, n: int, cap: Optional[int] = None) -> LemmaVerdict:
    """A finite group with P(m, n) is abelian and the direct product of its Sylow subgroups."""
    if not coprime(m, n):
        raise NotCoprime(f"gcd({m}, {n}) != 1")
    report = satisfies_P(G, m, n)
    evidence: Dict[str, Any] = {"property": _property_evidence(report)}
    if not report.satisfies_p:
        return LemmaVerdict(
            statement=FINITE_ABELIAN,
            holds=True,
            vacuous=True,
            evidence=evidence,
            note="property fails, statement is vacuous",
        )

    def refuted(violation: Dict[str, Any]) -> LemmaVerdict:
        logger.warning("%s satisfies P(%d, %d) but %s", G.name, m, n, violation)
        return LemmaVerdict(statement=FINITE_ABELIAN, holds=False, evidence=evidence, violation=violation)

    check = G.abelian_check
    if not check:
        return refuted({"reason": "not abelian", "a": check.witness[0], "b": check.witness[1]})

    check_order_cap(G, cap, "the Sylow decomposition")
    primes = factorize(G.order).primes
    sylows: List[SubgroupSet] = []
    for p in primes:
        verdict = verify_lemma_3_1(G, p, cap=cap)
        if not verdict.holds or not verdict.evidence["unique"]:
            return refuted({"reason": "Sylow subgroup not unique", "prime": p})
        sylows.append(SubgroupSet(G, verdict.evidence["sylow_subgroups"][0]))
    evidence["sylow"] = [{"prime": p, "members": list(P.elements)} for p, P in zip(primes, sylows)]

    phi = internal_product_map(G, sylows)
    factors = [subgroup_group(P, name=f"P{p}") for p, P in zip(primes, sylows)]
    product = reduce(direct_product, factors) if factors else _trivial_group()
    bijective = np.array_equal(np.sort(phi), np.arange(G.order))
    homomorphic = bijective and np.array_equal(phi[product.table], G.table[phi[:, None], phi[None, :]])
    isomorphic = are_isomorphic(product, G, cap=cap)
    evidence.update(product=product.name, product_order=product.order, internal_map=homomorphic, isomorphic=isomorphic)
    if not homomorphic:
        return refuted({"reason": "Sylow subgroups do not form an internal direct product"})
    if not isomorphic:
        return refuted({"reason": "direct product not isomorphic to the group"})
    return LemmaVerdict(statement=FINITE_ABELIAN, holds=True, evidence=evidence)
