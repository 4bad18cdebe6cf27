"""Prime-power decomposition of elements and the pairwise commuting argument built on it."""
from __future__ import annotations

import itertools
import logging
from typing import Any, Dict, List, Optional, Tuple

from commuting_powers.core.arith import cofactors, coprime, factorize, multi_bezout
from commuting_powers.core.group import FiniteGroup, SubgroupSet
from commuting_powers.core.models import LemmaVerdict, TorsionDecomposition, TorsionPart
from commuting_powers.theorems.lemmas import k_torsion_set, require_property, structural_violation

logger = logging.getLogger(__name__)

TORSION_COMMUTING = "torsion-commuting"


def torsion_decompose(G: FiniteGroup, x: int) -> TorsionDecomposition:
    """x = x_1^l_1 ... x_k^l_k with x_i = x^(r / p_i^a_i) of order p_i^a_i and sum l_i q_i = 1."""
    if not 0 <= x < G.order:
        raise ValueError(f"{x} is not an element of {G.name}")
    r = G.element_order(x)
    if r == 1:
        return TorsionDecomposition(element=x, order=1)
    fact = factorize(r)
    qs = cofactors(fact)
    certificate = multi_bezout(qs)
    parts = [
        TorsionPart(
            element=G.power(x, q),
            prime=p,
            exponent=alpha,
            prime_power=p**alpha,
            cofactor=q,
            coefficient=coefficient,
        )
        for (p, alpha), q, coefficient in zip(fact.factors, qs, certificate.coefficients)
    ]
    return TorsionDecomposition(element=x, order=r, parts=parts, certificate=certificate)


def reconstruct(G: FiniteGroup, decomposition: TorsionDecomposition) -> int:
    """Product of the parts raised to their coefficients; the empty product is the identity."""
    acc = G.identity
    for part in decomposition.parts:
        acc = G.mul(acc, G.power(part.element, part.coefficient))
    return acc


def decomposition_errors(G: FiniteGroup, d: TorsionDecomposition) -> List[str]:
    """Every invariant of d that fails when re-checked in G; empty when d is sound."""
    errors = []
    if G.element_order(d.element) != d.order:
        errors.append(f"order of {d.element} is {G.element_order(d.element)}, not {d.order}")
    for part in d.parts:
        if G.element_order(part.element) != part.prime_power:
            errors.append(f"part {part.element} has order {G.element_order(part.element)}, not {part.prime_power}")
        if G.power(d.element, part.cofactor) != part.element:
            errors.append(f"part {part.element} is not {d.element}^{part.cofactor}")
    for a, b in itertools.combinations([p.element for p in d.parts], 2):
        if G.mul(a, b) != G.mul(b, a):
            errors.append(f"parts {a} and {b} do not commute")
    if reconstruct(G, d) != d.element:
        errors.append(f"parts multiply to {reconstruct(G, d)}, not {d.element}")
    return errors


def _prime_of(prime_power: int) -> Tuple[int, int]:
    (p, alpha), = factorize(prime_power).factors
    return p, alpha


def verify_torsion_commuting(G: FiniteGroup, m: int, n: int) -> LemmaVerdict:
    """Replay the commuting argument on every pair of prime-power-order elements.

    A pair whose order product s is coprime to m or n sits in the s-torsion
    subgroup. Otherwise their primes p != q split between m and n, the p-part and
    q-part torsion subgroups are normal, abelian and meet trivially, and the
    commutator lies in that intersection.
    """
    require_property(G, m, n)
    orders = G.element_orders
    prime_power_elements = [a for a in G.elements() if orders[a] > 1 and len(factorize(int(orders[a])).factors) == 1]
    torsion_cache: Dict[int, SubgroupSet] = {}
    evidence: Dict[str, Any] = {
        "prime_power_elements": len(prime_power_elements),
        "pairs": 0,
        "lemma_route": 0,
        "split_route": 0,
    }

    def torsion(k: int) -> SubgroupSet:
        if k not in torsion_cache:
            torsion_cache[k] = k_torsion_set(G, k)
        return torsion_cache[k]

    def fail(a: int, b: int, route: str, reason: str, extra: Optional[Dict[str, Any]] = None) -> LemmaVerdict:
        violation = {"a": a, "b": b, "route": route, "reason": reason, **(extra or {})}
        logger.warning("%s: commuting argument breaks on (%d, %d): %s", G.name, a, b, reason)
        return LemmaVerdict(statement=TORSION_COMMUTING, holds=False, evidence=evidence, violation=violation)

    for a, b in itertools.combinations(prime_power_elements, 2):
        evidence["pairs"] += 1
        oa, ob = int(orders[a]), int(orders[b])
        s = oa * ob
        if coprime(s, m) or coprime(s, n):
            H = torsion(s)
            problem = structural_violation(H)
            if problem is not None:
                return fail(a, b, "lemma", "torsion set is not a normal abelian subgroup", problem)
            evidence["lemma_route"] += 1
        else:
            (p, _), (q, _) = _prime_of(oa), _prime_of(ob)
            if p == q:
                return fail(a, b, "split", "both orders are powers of the same prime")
            # p on the m side first, otherwise the roles of m and n swap
            if not (m % p == 0 and n % q == 0) and not (n % p == 0 and m % q == 0):
                return fail(a, b, "split", "primes do not split between m and n", {"p": p, "q": q})
            Sa, Sb = torsion(oa), torsion(ob)
            for S in (Sa, Sb):
                problem = structural_violation(S)
                if problem is not None:
                    return fail(a, b, "split", "prime-power torsion set is not a normal abelian subgroup", problem)
            meet = [x for x in Sa.elements if x in Sb]
            if meet != [G.identity]:
                return fail(a, b, "split", "torsion subgroups meet nontrivially", {"intersection": meet})
            evidence["split_route"] += 1
        if G.mul(a, b) != G.mul(b, a):
            return fail(a, b, "direct", "elements do not commute")
    return LemmaVerdict(statement=TORSION_COMMUTING, holds=True, evidence=evidence)
