"""Finite groups as dense Cayley tables.

Element ids run over 0..n-1 and id 0 is always the identity. Groups and
subgroup sets are immutable once built, so they can be shipped to worker
processes as-is.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from commuting_powers.core.errors import (
    ClosureBudgetExceeded,
    InvalidTable,
    NoIdentity,
    NoInverse,
    NotASubgroup,
    NotAssociative,
    NotLatinSquare,
    OrderCapExceeded,
)
from commuting_powers.core.permutations import Permutation
from commuting_powers.core.settings import get_settings

logger = logging.getLogger(__name__)

TABLE_DTYPE = np.int32


@dataclass(frozen=True)
class Check:
    """A yes/no answer plus the lexicographically first counterexample when the answer is no."""

    holds: bool
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.holds


class FiniteGroup:
    identity = 0

    def __init__(self, table: np.ndarray, name: str = "G", inverse: Optional[np.ndarray] = None):
        table = np.array(table, dtype=TABLE_DTYPE, copy=True)
        table.setflags(write=False)
        self.table = table
        self.order = int(table.shape[0])
        self.name = name
        if inverse is None:
            inverse = np.argmax(table == 0, axis=1)
        inverse = np.array(inverse, dtype=TABLE_DTYPE, copy=True)
        inverse.setflags(write=False)
        self.inverse = inverse

    def __repr__(self) -> str:
        return f"FiniteGroup(name={self.name!r}, order={self.order})"

    def renamed(self, name: str) -> "FiniteGroup":
        return FiniteGroup(self.table, name=name, inverse=self.inverse)

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def rows(self) -> List[List[int]]:
        # Python-level lookups are much faster on nested lists than on numpy scalars.
        return self.table.tolist()

    @cached_property
    def inverses(self) -> List[int]:
        return self.inverse.tolist()

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def power(self, a: int, k: int) -> int:
        rows = self.rows
        if k < 0:
            a, k = self.inverses[a], -k
        result = 0
        base = a
        while k:
            if k & 1:
                result = rows[result][base]
            base = rows[base][base]
            k >>= 1
        return result

    def power_map(self, k: int) -> np.ndarray:
        """Array whose entry a is a^k, by vectorized binary exponentiation."""
        base = np.arange(self.order, dtype=TABLE_DTYPE)
        if k < 0:
            base, k = self.inverse.copy(), -k
        result = np.zeros(self.order, dtype=TABLE_DTYPE)
        while k:
            if k & 1:
                result = self.table[result, base]
            base = self.table[base, base]
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        ids = np.arange(n)
        current = ids.astype(TABLE_DTYPE)
        for k in range(1, n + 1):
            newly = (current == 0) & (orders == 0)
            orders[newly] = k
            if orders.all():
                break
            current = self.table[current, ids]
        orders.setflags(write=False)
        return orders

    def element_order(self, a: int) -> int:
        return int(self.element_orders[a])

    @cached_property
    def order_histogram(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(Counter(self.element_orders.tolist()).items()))

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders)) if self.order else 1

    @cached_property
    def abelian_check(self) -> Check:
        diff = np.argwhere(self.table != self.table.T)
        if diff.size == 0:
            return Check(True)
        a, b = diff[0]
        return Check(False, (int(a), int(b)))

    @property
    def is_abelian(self) -> bool:
        return self.abelian_check.holds

    @cached_property
    def center(self) -> "SubgroupSet":
        return SubgroupSet(self, np.all(self.table == self.table.T, axis=1))

    def invariants(self) -> Tuple:
        """Isomorphism invariants used as a fast rejection key."""
        return (self.order, self.order_histogram, self.is_abelian, self.center.size)


class SubgroupSet:
    """Membership set of element ids in a parent group; structural flags are computed on demand."""

    def __init__(self, parent: FiniteGroup, members):
        mask = np.zeros(parent.order, dtype=bool)
        members = np.asarray(members)
        if members.dtype == bool:
            if members.shape != (parent.order,):
                raise ValueError("membership mask must match the parent order")
            mask[:] = members
        elif members.size:
            if members.min() < 0 or members.max() >= parent.order:
                raise ValueError(f"members must be element ids of {parent.name}")
            mask[members.astype(np.int64)] = True
        mask.setflags(write=False)
        self.parent = parent
        self.mask = mask

    @cached_property
    def elements(self) -> Tuple[int, ...]:
        return tuple(np.flatnonzero(self.mask).tolist())

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubgroupSet) and other.parent is self.parent and other.elements == self.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __repr__(self) -> str:
        return f"SubgroupSet({self.parent.name}, {list(self.elements)})"

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.size, self.elements)

    def _block(self) -> Tuple[np.ndarray, np.ndarray]:
        els = np.asarray(self.elements, dtype=np.int64)
        return els, self.parent.table[np.ix_(els, els)]

    def first_escape(self) -> Optional[Tuple[int, int, int]]:
        """First (a, b, ab) in member order with ab outside the set."""
        els, block = self._block()
        bad = np.argwhere(~self.mask[block])
        if bad.size == 0:
            return None
        i, j = bad[0]
        return int(els[i]), int(els[j]), int(block[i, j])

    @cached_property
    def is_subgroup(self) -> bool:
        # A finite nonempty set closed under products is a subgroup.
        return bool(self.mask[0]) and self.first_escape() is None

    def commutation_witness(self) -> Optional[Tuple[int, int]]:
        els, block = self._block()
        bad = np.argwhere(block != block.T)
        if bad.size == 0:
            return None
        i, j = bad[0]
        return int(els[i]), int(els[j])

    @cached_property
    def is_abelian(self) -> bool:
        return self.commutation_witness() is None

    def conjugation_witness(self) -> Optional[Tuple[int, int, int]]:
        """First (g, h, g h g^-1) with the conjugate outside the set."""
        table = self.parent.table
        els = np.asarray(self.elements, dtype=np.int64)
        conj = table[table[:, els], self.parent.inverse[:, None]]
        bad = np.argwhere(~self.mask[conj])
        if bad.size == 0:
            return None
        g, i = bad[0]
        return int(g), int(els[i]), int(conj[g, i])

    @cached_property
    def is_normal(self) -> bool:
        return self.is_subgroup and self.conjugation_witness() is None


# Validation and construction


def _first_repeat(line: Sequence[int]) -> int:
    seen = set()
    for j, v in enumerate(line):
        if v in seen:
            return j
        seen.add(v)
    return -1


def validate_table(raw) -> np.ndarray:
    """Check every group axiom of a raw Cayley table and return it relabeled so the identity is 0."""
    try:
        arr = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise InvalidTable(f"table is not a rectangular integer array: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidTable(f"table must be a non-empty square array, got shape {arr.shape}")
    n = arr.shape[0]
    out_of_range = np.argwhere((arr < 0) | (arr >= n))
    if out_of_range.size:
        i, j = (int(v) for v in out_of_range[0])
        raise InvalidTable(f"entry {arr[i, j]} at ({i}, {j}) is outside [0, {n})", cell=(i, j))

    ids = np.arange(n)
    bad_rows = np.flatnonzero(~np.all(np.sort(arr, axis=1) == ids, axis=1))
    if bad_rows.size:
        i = int(bad_rows[0])
        j = _first_repeat(arr[i].tolist())
        raise NotLatinSquare(f"row {i} repeats {arr[i, j]} at column {j}", cell=(i, j))
    bad_cols = np.flatnonzero(~np.all(np.sort(arr, axis=0) == ids[:, None], axis=0))
    if bad_cols.size:
        j = int(bad_cols[0])
        i = _first_repeat(arr[:, j].tolist())
        raise NotLatinSquare(f"column {j} repeats {arr[i, j]} at row {i}", cell=(i, j))

    candidates = np.flatnonzero(np.all(arr == ids, axis=1) & np.all(arr.T == ids, axis=1))
    if candidates.size == 0:
        raise NoIdentity("no element acts as a two-sided identity")
    e = int(candidates[0])

    right_inverse = np.argmax(arr == e, axis=1)
    bad = np.flatnonzero(arr[right_inverse, ids] != e)
    if bad.size:
        i = int(bad[0])
        raise NoInverse(f"element {i} has no two-sided inverse", cell=(i, int(right_inverse[i])))

    for i in range(n):
        left = arr[arr[i]]  # (i*j)*k over (j, k)
        right = arr[i][arr]  # i*(j*k) over (j, k)
        mismatch = np.argwhere(left != right)
        if mismatch.size:
            j, k = (int(v) for v in mismatch[0])
            raise NotAssociative(f"({i}*{j})*{k} != {i}*({j}*{k})", triple=(i, j, k))

    if e != 0:
        sigma = ids.copy()
        sigma[0], sigma[e] = e, 0
        arr = sigma[arr[np.ix_(sigma, sigma)]]
        logger.debug("Relabeled identity %d to 0", e)
    return arr


def from_cayley_table(raw, name: str = "G") -> FiniteGroup:
    return FiniteGroup(validate_table(raw), name=name)


def _permutation_codes(perms: np.ndarray) -> np.ndarray:
    degree = perms.shape[-1]
    if degree <= 15:
        weights = degree ** np.arange(degree, dtype=np.int64)
        return perms.astype(np.int64) @ weights
    return np.array([row.tobytes() for row in perms.reshape(-1, degree)], dtype=object).reshape(perms.shape[:-1])


def from_permutations(
    gens: Iterable[Permutation],
    name: str = "G",
    degree: Optional[int] = None,
    cap: Optional[int] = None,
) -> FiniteGroup:
    """Materialize the generated permutation group.

    Ids follow breadth-first discovery from the identity, right-multiplying by the
    generators in sorted order.
    """
    cap = cap or get_settings().closure_element_cap
    gens = sorted(set(gens))
    degrees = {g.degree for g in gens}
    if len(degrees) > 1:
        raise ValueError(f"generators have mixed degrees {sorted(degrees)}")
    degree = degrees.pop() if degrees else (degree or 1)

    identity = tuple(range(degree))
    elements: List[Tuple[int, ...]] = [identity]
    index: Dict[Tuple[int, ...], int] = {identity: 0}
    cursor = 0
    while cursor < len(elements):
        x = elements[cursor]
        cursor += 1
        for g in gens:
            y = tuple(x[i] for i in g.images)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                if len(elements) > cap:
                    raise ClosureBudgetExceeded(f"closure of {len(gens)} generators exceeds {cap} elements")

    perms = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
    codes = _permutation_codes(perms)
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    n = len(elements)
    table = np.empty((n, n), dtype=TABLE_DTYPE)
    for i in range(n):
        products = perms[i][perms]  # row j: perms[i] after perms[j]
        table[i] = order[np.searchsorted(sorted_codes, _permutation_codes(products))]
    logger.debug("Materialized %s: %d elements of degree %d", name, n, degree)
    return FiniteGroup(table, name=name)


# Element arithmetic


def mul(G: FiniteGroup, a: int, b: int) -> int:
    return G.mul(a, b)


def power(G: FiniteGroup, a: int, k: int) -> int:
    return G.power(a, k)


def element_order(G: FiniteGroup, a: int) -> int:
    return G.element_order(a)


def is_abelian(G: FiniteGroup) -> Check:
    return G.abelian_check


# Subgroups


def closure(G: FiniteGroup, seed: Iterable[int]) -> SubgroupSet:
    """Least subgroup containing seed."""
    rows = G.rows
    gens = sorted({int(s) for s in seed} - {0})
    seen = bytearray(G.order)
    seen[0] = 1
    members = [0]
    cursor = 0
    while cursor < len(members):
        x = members[cursor]
        cursor += 1
        row = rows[x]
        for g in gens:
            y = row[g]
            if not seen[y]:
                seen[y] = 1
                members.append(y)
    return SubgroupSet(G, np.frombuffer(bytes(seen), dtype=np.uint8).astype(bool))


def is_normal(G: FiniteGroup, H: SubgroupSet) -> bool:
    if not H.is_subgroup:
        raise NotASubgroup(f"{H!r} is not a subgroup of {G.name}")
    return H.is_normal


def check_order_cap(G: FiniteGroup, cap: Optional[int], what: str) -> None:
    cap = cap or get_settings().group_order_cap
    if G.order > cap:
        raise OrderCapExceeded(f"{what} is capped at order {cap}; {G.name} has order {G.order}")


def all_subgroups(G: FiniteGroup, cap: Optional[int] = None) -> List[SubgroupSet]:
    """Every subgroup once, by joining cyclic subgroups onto known ones until nothing new appears."""
    check_order_cap(G, cap, "subgroup enumeration")
    found: Dict[Tuple[int, ...], Tuple[SubgroupSet, Tuple[int, ...]]] = {}
    for a in G.elements():
        cyclic = closure(G, [a])
        found.setdefault(cyclic.elements, (cyclic, (a,) if a else ()))
    cyclic_gens = [gens[0] for _, gens in found.values() if gens]
    frontier = list(found.values())
    while frontier:
        fresh = []
        for H, gens in frontier:
            for c in cyclic_gens:
                if c in H:
                    continue
                joined = closure(G, gens + (c,))
                if joined.elements not in found:
                    found[joined.elements] = (joined, gens + (c,))
                    fresh.append(found[joined.elements])
        frontier = fresh
    subgroups = sorted((H for H, _ in found.values()), key=SubgroupSet.sort_key)
    logger.debug("%s has %d subgroups", G.name, len(subgroups))
    return subgroups


def subgroup_group(H: SubgroupSet, name: Optional[str] = None) -> FiniteGroup:
    """The subgroup as a group in its own right, members relabeled in ascending order."""
    if not H.is_subgroup:
        raise NotASubgroup(f"{H!r} is not a subgroup")
    G = H.parent
    els = np.asarray(H.elements, dtype=np.int64)
    relabel = np.full(G.order, -1, dtype=np.int64)
    relabel[els] = np.arange(len(els))
    table = relabel[G.table[np.ix_(els, els)]]
    return FiniteGroup(table, name=name or f"{G.name}<{len(els)}>")


def quotient(G: FiniteGroup, N: SubgroupSet, name: Optional[str] = None) -> FiniteGroup:
    """G/N with cosets labeled by ascending least representative."""
    if not N.is_normal:
        raise NotASubgroup(f"{N!r} is not a normal subgroup of {G.name}")
    els = np.asarray(N.elements, dtype=np.int64)
    least = G.table[:, els].min(axis=1)
    reps = np.unique(least)
    coset_of = np.searchsorted(reps, least)
    table = coset_of[G.table[np.ix_(reps, reps)]]
    return FiniteGroup(table, name=name or f"{G.name}/{len(els)}")


def center(G: FiniteGroup) -> SubgroupSet:
    return G.center


# Products and isomorphism


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: Optional[int] = None) -> FiniteGroup:
    """Componentwise product; (g, h) gets id g * |H| + h."""
    cap = cap or get_settings().closure_element_cap
    n, m = G.order, H.order
    if n * m > cap:
        raise OrderCapExceeded(f"{G.name} x {H.name} has order {n * m} > {cap}")
    gt = G.table.astype(np.int64)
    ht = H.table.astype(np.int64)
    table = (gt[:, None, :, None] * m + ht[None, :, None, :]).reshape(n * m, n * m)
    inverse = (G.inverse.astype(np.int64)[:, None] * m + H.inverse.astype(np.int64)[None, :]).reshape(-1)
    return FiniteGroup(table, name=f"{G.name}x{H.name}", inverse=inverse)


def generating_set(G: FiniteGroup) -> List[int]:
    """Greedy generators: take elements of largest order first while they enlarge the span."""
    gens: List[int] = []
    span = closure(G, [])
    for a in sorted(G.elements(), key=lambda x: (-G.element_orders[x], x)):
        if span.size == G.order:
            break
        if a not in span:
            gens.append(a)
            span = closure(G, gens)
    return gens


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> Optional[List[int]]:
    """Backtrack over images of a generating set of G; returns the element map or None."""
    if G.invariants() != H.invariants():
        return None
    n = G.order
    gens = generating_set(G)
    g_rows, h_rows = G.rows, H.rows
    h_orders = H.element_orders
    candidates = [[h for h in H.elements() if h_orders[h] == G.element_orders[g]] for g in gens]

    def extend(images: Sequence[int]) -> Optional[List[int]]:
        phi = [-1] * n
        used = bytearray(n)
        phi[0], used[0] = 0, 1
        queue = [0]
        cursor = 0
        while cursor < len(queue):
            x = queue[cursor]
            cursor += 1
            for g, img in zip(gens, images):
                y = g_rows[x][g]
                value = h_rows[phi[x]][img]
                if phi[y] < 0:
                    if used[value]:
                        return None
                    phi[y] = value
                    used[value] = 1
                    queue.append(y)
                elif phi[y] != value:
                    return None
        return phi

    images: List[int] = []

    def search() -> Optional[List[int]]:
        if len(images) == len(gens):
            phi = extend(images)
            if phi is None or min(phi) < 0:
                return None
            arr = np.asarray(phi)
            if np.array_equal(arr[G.table], H.table[arr[:, None], arr[None, :]]):
                return phi
            return None
        for c in candidates[len(images)]:
            images.append(c)
            if extend(images) is not None:
                found = search()
                if found is not None:
                    return found
            images.pop()
        return None

    return search()


def are_isomorphic(G: FiniteGroup, H: FiniteGroup, cap: Optional[int] = None) -> bool:
    check_order_cap(G, cap, "isomorphism testing")
    check_order_cap(H, cap, "isomorphism testing")
    if G.order != H.order:
        return False
    return find_isomorphism(G, H) is not None
