"""Named group constructions and the GroupSpec mini-language.

    spec := base ("x" base)*
    base := C<n> | D<n> | S<n> | A<n> | Q8 | Heis<p> | @<path>

D<n> is the dihedral group of order 2n. An @<path> factor runs to the end of the
string, so it can only come last.
"""
from __future__ import annotations

import logging
import math
import re
from functools import reduce
from importlib import resources
from typing import List, Optional, Union

import numpy as np
import yaml
from pydantic import ValidationError

from commuting_powers.core.arith import is_prime
from commuting_powers.core.cayley_io import read_cayley_file
from commuting_powers.core.errors import BadSpec, OrderCapExceeded
from commuting_powers.core.group import FiniteGroup, direct_product, from_permutations
from commuting_powers.core.models import FactorKind, FactorSpec, GroupSpec
from commuting_powers.core.permutations import Permutation
from commuting_powers.core.settings import get_settings

logger = logging.getLogger(__name__)

_BASE = re.compile(r"(Q8|Heis|C|D|S|A)(\d*)")


def parse_group_spec(text: str) -> GroupSpec:
    text = text.strip()
    if not text:
        raise BadSpec("empty group spec")
    factors: List[FactorSpec] = []
    pos = 0
    while True:
        if text.startswith("@", pos):
            path = text[pos + 1 :]
            if not path:
                raise BadSpec(f"{text!r}: @ needs a path")
            factors.append(FactorSpec(kind=FactorKind.file, path=path))
            break
        match = _BASE.match(text, pos)
        if not match:
            raise BadSpec(f"{text!r}: expected C, D, S, A, Q8, Heis or @ at position {pos}")
        kind, digits = match.groups()
        if kind == "Q8":
            param = None
        elif not digits:
            raise BadSpec(f"{text!r}: {kind} needs a size at position {match.end()}")
        else:
            param = int(digits)
        try:
            factors.append(FactorSpec(kind=FactorKind(kind), param=param))
        except ValidationError as exc:
            raise BadSpec(f"{text!r}: {kind}{digits} is not a valid factor") from exc
        if kind == "Heis" and not (param % 2 and is_prime(param)):
            raise BadSpec(f"{text!r}: Heis<p> needs an odd prime, got {param}")
        pos = match.end()
        if pos == len(text):
            break
        if text[pos] != "x":
            raise BadSpec(f"{text!r}: expected 'x' between factors at position {pos}")
        pos += 1
    return GroupSpec(factors=factors)


def factor_order(factor: FactorSpec) -> Optional[int]:
    """Order of a named factor without building it; None for files."""
    n = factor.param
    return {
        FactorKind.cyclic: lambda: n,
        FactorKind.dihedral: lambda: 2 * n,
        FactorKind.symmetric: lambda: math.factorial(n),
        FactorKind.alternating: lambda: max(1, math.factorial(n) // 2),
        FactorKind.quaternion: lambda: 8,
        FactorKind.heisenberg: lambda: n**3,
        FactorKind.file: lambda: None,
    }[factor.kind]()


# Constructions


def cyclic(n: int) -> FiniteGroup:
    ids = np.arange(n)
    return FiniteGroup((ids[:, None] + ids[None, :]) % n, name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Order 2n; element r^i s^j has id i + n*j."""
    ids = np.arange(2 * n)
    i, j = ids % n, ids // n
    sign = np.where(j == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    ref = (j[:, None] + j[None, :]) % 2
    return FiniteGroup(rot + n * ref, name=f"D{n}")


# unit products over 1, i, j, k as (unit, sign flip)
_QUATERNION_UNITS = [
    [(0, 0), (1, 0), (2, 0), (3, 0)],
    [(1, 0), (0, 1), (3, 0), (2, 1)],
    [(2, 0), (3, 1), (0, 1), (1, 0)],
    [(3, 0), (2, 0), (1, 1), (0, 1)],
]


def quaternion() -> FiniteGroup:
    """Q8 with id unit + 4*sign for units 1, i, j, k."""
    table = np.zeros((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            unit, flip = _QUATERNION_UNITS[a % 4][b % 4]
            table[a, b] = unit + 4 * ((a // 4 + b // 4 + flip) % 2)
    return FiniteGroup(table, name="Q8")


def heisenberg(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices mod p; (a, b, c) has id a + p*b + p^2*c."""
    ids = np.arange(p**3)
    a, b, c = ids % p, (ids // p) % p, ids // (p * p)
    na = (a[:, None] + a[None, :]) % p
    nb = (b[:, None] + b[None, :]) % p
    nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    return FiniteGroup(na + p * nb + p * p * nc, name=f"Heis{p}")


def symmetric(n: int, cap: Optional[int] = None) -> FiniteGroup:
    if n <= 1:
        return from_permutations([], name=f"S{n}", degree=1, cap=cap)
    gens = [Permutation.from_cycles(n, [(0, 1)])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
    return from_permutations(gens, name=f"S{n}", cap=cap)


def alternating(n: int, cap: Optional[int] = None) -> FiniteGroup:
    if n <= 2:
        return from_permutations([], name=f"A{n}", degree=1, cap=cap)
    gens = [Permutation.from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    return from_permutations(gens, name=f"A{n}", cap=cap)


def _build_factor(factor: FactorSpec, cap: int) -> FiniteGroup:
    n = factor.param
    if factor.kind == FactorKind.cyclic:
        return cyclic(n)
    if factor.kind == FactorKind.dihedral:
        return dihedral(n)
    if factor.kind == FactorKind.symmetric:
        return symmetric(n, cap=cap)
    if factor.kind == FactorKind.alternating:
        return alternating(n, cap=cap)
    if factor.kind == FactorKind.quaternion:
        return quaternion()
    if factor.kind == FactorKind.heisenberg:
        return heisenberg(n)
    G = read_cayley_file(factor.path)
    if G.order > cap:
        raise OrderCapExceeded(f"{factor.path} holds a group of order {G.order} > {cap}")
    return G


def make(spec: Union[str, GroupSpec], cap: Optional[int] = None) -> FiniteGroup:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    cap = cap or get_settings().closure_element_cap
    known = [factor_order(f) for f in spec.factors]
    expected = math.prod(o for o in known if o is not None)
    if expected > cap:
        raise OrderCapExceeded(f"{spec.label()} has order at least {expected} > {cap}")
    groups = [_build_factor(f, cap) for f in spec.factors]
    G = reduce(lambda left, right: direct_product(left, right, cap=cap), groups)
    logger.debug("Built %s of order %d", G.name, G.order)
    return G


# Catalog


def load_corpus() -> List[str]:
    text = resources.files("commuting_powers.catalog").joinpath("corpus.yaml").read_text()
    families = yaml.safe_load(text)["families"]
    return [spec for members in families.values() for spec in members]


def catalog_groups(max_order: Optional[int] = None) -> List[FiniteGroup]:
    """Named corpus groups of order at most max_order, sorted by (order, name)."""
    groups = []
    for text in load_corpus():
        spec = parse_group_spec(text)
        order = math.prod(factor_order(f) for f in spec.factors)
        if max_order is not None and order > max_order:
            continue
        groups.append(make(spec).renamed(text))
    groups.sort(key=lambda G: (G.order, G.name))
    logger.info("Loaded %d catalog groups%s", len(groups), f" up to order {max_order}" if max_order else "")
    return groups
