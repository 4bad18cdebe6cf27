"""Exhaustive enumeration of the groups of a given small order, one per isomorphism class.

The search fills a partial Cayley table (-1 = unknown) with the identity row and
column fixed. Each branch is propagated to a fixpoint: Latin-square eliminations,
naked and hidden singles, and associativity, where (xy)z = x(yz) forces the
missing side whenever the other side and both inner products are known.

Relabelings are cut down before the search starts:

- the largest element order o is fixed up front: ids 0..o-1 are the powers of
  element a = 1 and the left cosets of <a> are numbered in consecutive blocks, so
  T[c*o + i][j] = c*o + (i + j) % o for j < o;
- element b = o has the largest order outside <a>, and for the least r with
  b^r in <a> the first r blocks are b^c <a>, so b^c a^i has id c*o + i;
- every later block representative c*o (c >= r) has the largest order among
  the ids from c*o on.

Exponent 2 forces an elementary abelian group, which is returned without a
search. Whatever symmetry survives is removed by a final isomorphism pass.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np

from commuting_powers.core.arith import factorize
from commuting_powers.core.errors import OrderCapExceeded
from commuting_powers.core.group import FiniteGroup, find_isomorphism, from_cayley_table
from commuting_powers.core.settings import ENUMERATION_HARD_CEILING, get_settings

logger = logging.getLogger(__name__)

UNKNOWN = -1


class Contradiction(Exception):
    """Raised inside propagation when a branch cannot be completed."""


def candidate_max_orders(n: int) -> List[int]:
    """Divisors o of n that can be the largest element order of a group of order n, descending."""
    if n == 1:
        return [1]
    fact = factorize(n)
    largest_prime = fact.primes[-1]
    power_of_two = fact.primes == [2]
    orders = []
    for o in range(n, 0, -1):
        if n % o or o < largest_prime:
            continue
        if o == 2 and not power_of_two:
            continue
        orders.append(o)
    return orders


def search_cases(n: int) -> List[Tuple[int, int]]:
    """(o, r) pairs to search: largest element order o and length r of the b-chain (1 = none)."""
    cases = []
    for o in candidate_max_orders(n):
        if o == n or o == 2:
            cases.append((o, 1))
            continue
        # r divides the order of b, which divides n
        cases.extend((o, r) for r in range(2, n // o + 1) if n % r == 0)
    return cases


def seed_table(n: int, o: int, r: int = 1) -> np.ndarray:
    table = np.full((n, n), UNKNOWN, dtype=np.int64)
    ids = np.arange(n)
    table[0, :] = ids
    table[:, 0] = ids
    for c in range(n // o):
        for i in range(o):
            table[c * o + i, :o] = c * o + (ids[:o] + i) % o
    # b^c * b^d a^j = b^(c+d) a^j inside the chain
    for c in range(1, r):
        for d in range(1, r - c):
            table[c * o, d * o : (d + 1) * o] = (c + d) * o + ids[:o]
    return table


def elementary_abelian_table(n: int) -> np.ndarray:
    ids = np.arange(n)
    return np.bitwise_xor.outer(ids, ids)


class TableSearch:
    """Backtracking search for group tables of order n whose largest element order is o.

    With r > 1 the element b = o is chained: b^c a^i has id c*o + i for c < r and
    b^r lies in <a>. Block representatives after the chain (and b itself) must not
    be outranked in element order by any larger id.
    """

    def __init__(self, n: int, o: int, r: int = 1):
        self.n = n
        self.o = o
        self.r = r
        self.ids = np.arange(n)
        self.nodes = 0
        self.leaves: List[np.ndarray] = []
        self.allowed = np.ones((n, n, n), dtype=bool)
        self.leaders: List[int] = []
        if n > o:
            self.leaders = sorted({o} | {c * o for c in range(max(r, 1), n // o)})
        if r > 1:
            self.allowed[(r - 1) * o, o, o:] = False

    # propagation

    def _candidates(self, T: np.ndarray) -> np.ndarray:
        onehot = T[:, :, None] == self.ids[None, None, :]
        if (onehot.sum(axis=1) > 1).any() or (onehot.sum(axis=0) > 1).any():
            raise Contradiction("repeated symbol")
        row_used = onehot.any(axis=1)
        col_used = onehot.any(axis=0)
        free = ~row_used[:, None, :] & ~col_used[None, :, :]
        known = T >= 0
        C = np.where(known[:, :, None], onehot, free) & self.allowed
        if (known & ~C.any(axis=2)).any():
            raise Contradiction("value outside the allowed set")
        return C

    def _singles(self, T: np.ndarray, C: np.ndarray) -> List[np.ndarray]:
        unknown = T < 0
        counts = C.sum(axis=2)
        if (unknown & (counts == 0)).any():
            raise Contradiction("empty cell")
        found = []
        r, c = np.nonzero(unknown & (counts == 1))
        if r.size:
            found.append(np.stack([r, c, C[r, c].argmax(axis=1)], axis=1))

        onehot = T[:, :, None] == self.ids[None, None, :]
        for axis in (1, 0):
            used = onehot.any(axis=axis)
            places = C.sum(axis=axis)
            if (~used & (places == 0)).any():
                raise Contradiction("symbol has no place")
            line, value = np.nonzero(~used & (places == 1))
            if not line.size:
                continue
            if axis == 1:
                found.append(np.stack([line, C[line, :, value].argmax(axis=1), value], axis=1))
            else:
                found.append(np.stack([C[:, line, value].T.argmax(axis=1), line, value], axis=1))
        return found

    def _associativity(self, T: np.ndarray) -> List[np.ndarray]:
        ids = self.ids
        xy = T[:, :, None]  # x*y, indexed (x, y, z)
        yz = T[None, :, :]  # y*z
        inner = (xy >= 0) & (yz >= 0)
        left = np.where(inner, T[np.clip(xy, 0, None), ids[None, None, :]], UNKNOWN)
        right = np.where(inner, T[ids[:, None, None], np.clip(yz, 0, None)], UNKNOWN)
        if ((left >= 0) & (right >= 0) & (left != right)).any():
            raise Contradiction("associativity")
        found = []
        x, y, z = np.nonzero((left >= 0) & (right < 0))
        if x.size:
            found.append(np.stack([x, T[y, z], left[x, y, z]], axis=1))
        x, y, z = np.nonzero((right >= 0) & (left < 0))
        if x.size:
            found.append(np.stack([T[x, y], z, right[x, y, z]], axis=1))
        return found

    def _check_orders(self, T: np.ndarray) -> None:
        n, o = self.n, self.o
        current = self.ids.copy()
        settled = current == 0
        order = np.where(settled, 1, 0)
        # x^1..x^reached are known and nontrivial
        reached = np.ones(n, dtype=np.int64)
        for k in range(2, o + 1):
            active = ~settled & (current >= 0)
            step = np.full(n, UNKNOWN)
            step[active] = T[current[active], self.ids[active]]
            current = np.where(active, step, current)
            hit = active & (current == 0)
            if n % k and hit.any():
                raise Contradiction(f"element order {k} does not divide {n}")
            order[hit] = k
            settled |= hit
            reached[active & (current > 0)] = k
        if (~settled & (current >= 0)).any():
            raise Contradiction(f"element order exceeds {o}")
        for p in self.leaders:
            bound = order[p]
            if not bound:
                continue
            tail = self.ids >= p
            if (tail & ((order > bound) | (~settled & (reached >= bound)))).any():
                raise Contradiction(f"element {p} is outranked in order by a larger id")

    def propagate(self, T: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Apply deductions until nothing changes; returns the table and its candidate cube."""
        T = T.copy()
        while True:
            C = self._candidates(T)
            self._check_orders(T)
            found = self._singles(T, C) + self._associativity(T)
            if not found:
                return T, C
            moves = np.unique(np.concatenate(found), axis=0)
            cells = moves[:, 0] * self.n + moves[:, 1]
            if np.unique(cells).size != cells.size:
                raise Contradiction("cell forced to two values")
            if not C[moves[:, 0], moves[:, 1], moves[:, 2]].all():
                raise Contradiction("forced value already excluded")
            T[moves[:, 0], moves[:, 1]] = moves[:, 2]

    # search

    def run(self) -> List[np.ndarray]:
        self._descend(seed_table(self.n, self.o, self.r))
        logger.debug(
            "Order %d, max element order %d, chain %d: %d nodes, %d tables",
            self.n, self.o, self.r, self.nodes, len(self.leaves),
        )
        return self.leaves

    def _descend(self, T: np.ndarray) -> None:
        self.nodes += 1
        try:
            T, C = self.propagate(T)
        except Contradiction:
            return
        unknown = T < 0
        if not unknown.any():
            self.leaves.append(T)
            return
        counts = np.where(unknown, C.sum(axis=2), self.n + 1)
        r, c = np.unravel_index(np.argmin(counts), counts.shape)
        for v in np.flatnonzero(C[r, c]):
            branch = T.copy()
            branch[r, c] = v
            self._descend(branch)


def search_tables(n: int, o: int, r: int = 1) -> List[np.ndarray]:
    if o == 2 and n > 2:
        return [elementary_abelian_table(n)]
    return TableSearch(n, o, r).run()


def deduplicate(groups: List[FiniteGroup]) -> List[FiniteGroup]:
    """Keep the first group of every isomorphism class, in input order."""
    buckets: Dict[Tuple, List[FiniteGroup]] = {}
    kept: List[FiniteGroup] = []
    for G in groups:
        bucket = buckets.setdefault(G.invariants(), [])
        if any(find_isomorphism(G, H) is not None for H in bucket):
            continue
        bucket.append(G)
        kept.append(G)
    return kept


def class_sort_key(G: FiniteGroup) -> Tuple:
    return (not G.is_abelian, G.order_histogram, tuple(G.table.ravel().tolist()))


def enumerate_order(n: int, cap: Optional[int] = None, workers: Optional[int] = None) -> List[FiniteGroup]:
    """One group per isomorphism class of order n, named G<n>_<i>."""
    if n < 1:
        raise ValueError(f"group order must be positive, got {n}")
    settings = get_settings()
    cap = min(cap or settings.enumeration_order_cap, ENUMERATION_HARD_CEILING)
    if n > cap:
        raise OrderCapExceeded(f"enumeration is capped at order {cap}; asked for {n}")
    workers = workers or settings.scan_workers

    cases = search_cases(n)
    if workers > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(cases))) as pool:
            per_case = list(pool.map(search_tables, [n] * len(cases), *zip(*cases)))
    else:
        per_case = [search_tables(n, o, r) for o, r in cases]

    candidates = [from_cayley_table(T, name=f"order{n}") for tables in per_case for T in tables]
    classes = sorted(deduplicate(candidates), key=class_sort_key)
    groups = [G.renamed(f"G{n}_{i}") for i, G in enumerate(classes, start=1)]
    logger.info("Order %d: %d tables, %d classes", n, len(candidates), len(groups))
    return groups
