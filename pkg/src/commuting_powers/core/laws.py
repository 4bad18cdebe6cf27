"""Evaluation of group laws over finite groups, and the commuting-powers property."""
from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from commuting_powers.core.arith import coprime
from commuting_powers.core.errors import BudgetExceeded, NotCoprime, UnboundVariable
from commuting_powers.core.group import Check, FiniteGroup
from commuting_powers.core.law_parser import Commutator, Law, Var, Word, format_law, parse_law
from commuting_powers.core.models import PropertyReport, PropertyWitness
from commuting_powers.core.settings import get_settings

logger = logging.getLogger(__name__)

Evaluator = Callable[[Sequence[int]], int]


@dataclass(frozen=True)
class PowerCheck(Check):
    """power_commute verdict; `image` is the sorted set of m-th powers."""

    image: Tuple[int, ...] = ()


def _compile_word(G: FiniteGroup, word: Word, index: Mapping[str, int]) -> Evaluator:
    rows, power = G.rows, G.power
    parts: List[Tuple[Evaluator, int]] = []
    for factor in word.factors:
        if isinstance(factor, Var):
            if factor.name not in index:
                raise UnboundVariable(factor.name)
            slot = index[factor.name]
            base: Evaluator = lambda env, slot=slot: env[slot]
        elif isinstance(factor, Commutator):
            u = _compile_word(G, factor.left, index)
            v = _compile_word(G, factor.right, index)
            inv = G.inverses

            def base(env, u=u, v=v):
                a, b = u(env), v(env)
                return rows[rows[rows[inv[a]][inv[b]]][a]][b]

        else:
            base = _compile_word(G, factor.body, index)
        parts.append((base, factor.exponent))

    def evaluate(env: Sequence[int]) -> int:
        acc = 0
        for fn, exponent in parts:
            value = fn(env)
            if exponent != 1:
                value = power(value, exponent)
            acc = rows[acc][value]
        return acc

    return evaluate


def eval_word(G: FiniteGroup, w: Word, assignment: Mapping[str, int]) -> int:
    names = list(assignment)
    index = {name: i for i, name in enumerate(names)}
    return _compile_word(G, w, index)([assignment[name] for name in names])


def _first_violation(G: FiniteGroup, law: Law, first_values: range) -> Optional[Tuple[int, ...]]:
    variables = law.variables
    index = {name: i for i, name in enumerate(variables)}
    lhs = _compile_word(G, law.lhs, index)
    rhs = _compile_word(G, law.rhs, index)
    if not variables:
        return None if lhs(()) == rhs(()) else ()
    others = [range(G.order)] * (len(variables) - 1)
    for env in itertools.product(first_values, *others):
        if lhs(env) != rhs(env):
            return tuple(env)
    return None


def holds(
    G: FiniteGroup,
    law: Law | str,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> Check:
    """Brute-force check of a law; the witness is the lexicographically first violating assignment."""
    if isinstance(law, str):
        law = parse_law(law)
    settings = get_settings()
    budget = budget or settings.law_evaluation_budget
    workers = workers or settings.scan_workers
    evaluations = G.order ** len(law.variables)
    if evaluations > budget:
        raise BudgetExceeded(f"{format_law(law)} over {G.name} needs {evaluations} evaluations > {budget}")

    if workers <= 1 or not law.variables or G.order < 2 * workers:
        witness = _first_violation(G, law, range(G.order))
    else:
        bounds = np.linspace(0, G.order, workers + 1).astype(int)
        slices = [range(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            local = list(pool.map(_first_violation, [G] * len(slices), [law] * len(slices), slices))
        # Slices are ordered, so the first local minimum is the global one.
        witness = next((w for w in local if w is not None), None)
    return Check(witness is None, witness)


def witness_assignment(law: Law, check: Check) -> Dict[str, int]:
    return dict(zip(law.variables, check.witness or ()))


def power_commute(G: FiniteGroup, m: int) -> PowerCheck:
    """Whether all m-th powers commute; checks pairs inside the image set only."""
    powers = G.power_map(m)
    image = np.unique(powers)
    block = G.table[np.ix_(image, image)]
    if np.array_equal(block, block.T):
        return PowerCheck(True, None, tuple(image.tolist()))
    full = G.table[np.ix_(powers, powers)]
    a, b = np.argwhere(full != full.T)[0]
    return PowerCheck(False, (int(a), int(b)), tuple(image.tolist()))


def commutator_law(exponent: int) -> Law:
    return parse_law(f"[x^{exponent},y^{exponent}]=1")


def property_laws(m: int, n: int) -> Tuple[Law, Law]:
    return commutator_law(m), commutator_law(n)


def power_distribution_laws(r: int, count: int = 3) -> List[Law]:
    """(xy)^s = x^s y^s for `count` consecutive exponents s starting at r."""
    return [parse_law(f"(x y)^{s}=x^{s} y^{s}") for s in range(r, r + count)]


def satisfies_P(G: FiniteGroup, m: int, n: int, allow_non_coprime: bool = False) -> PropertyReport:
    if m < 1 or n < 1:
        raise ValueError("exponents must be positive")
    applicable = coprime(m, n)
    if not applicable and not allow_non_coprime:
        raise NotCoprime(f"gcd({m}, {n}) = {np.gcd(m, n)}; the property needs coprime exponents")
    if not applicable:
        logger.warning("Running P(%d, %d) on %s without coprimality; theorems do not apply", m, n, G.name)

    start = time.perf_counter()
    witness = None
    for exponent in (m, n):
        check = power_commute(G, exponent)
        if not check:
            a, b = check.witness
            witness = PropertyWitness(a=a, b=b, exponent=exponent, law=format_law(commutator_law(exponent)))
            break
    elapsed = (time.perf_counter() - start) * 1000.0
    return PropertyReport(
        group=G.name,
        order=G.order,
        m=m,
        n=n,
        satisfies_p=witness is None,
        is_abelian=G.is_abelian,
        witness=witness,
        theorems_applicable=applicable,
        wall_time_ms=round(elapsed, 3),
    )
