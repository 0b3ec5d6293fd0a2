"""Structural analysis: subgroup lattice, Sylow theory, recognition tests.

Subgroup enumeration generates all cyclic subgroups and then joins with
cyclic subgroups until a fixpoint; complete and fast enough at the orders
this package targets.  All results are cached on the group object.
"""

from __future__ import annotations

from enum import Enum
from math import gcd
from typing import Optional

from .errors import CapExceededError, NotAbelianError, NotNormalError
from .groups import (
    FiniteGroup,
    Subgroup,
    center,
    closure,
    derived_subgroup,
    element_order,
    element_orders,
    is_normal,
    quotient,
    subgroup_as_group,
    subgroup_generators,
    whole_subgroup,
)

DEFAULT_SUBGROUP_CAP = 128
H1_ENUM_BOUND = 10**6


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


# ---------------------------------------------------------------------------
# subgroup lattice


def all_subgroups(
    group: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP
) -> list[Subgroup]:
    """Complete list of subgroups, sorted by order then by element tuple."""
    if group.order > cap:
        raise CapExceededError(
            f"subgroup enumeration capped at order {cap}, group has {group.order}"
        )
    key = "all_subgroups"
    if key not in group._cache:
        cyclics = sorted({closure(group, [g]) for g in group.elements()})
        seen = {(0,)} | set(cyclics)
        frontier = list(seen)
        join_cache = {}
        while frontier:
            base = frontier.pop()
            base_set = set(base)
            for cyc in cyclics:
                if base_set.issuperset(cyc):
                    continue
                union = tuple(sorted(base_set.union(cyc)))
                joined = join_cache.get(union)
                if joined is None:
                    joined = closure(group, union)
                    join_cache[union] = joined
                if joined not in seen:
                    seen.add(joined)
                    frontier.append(joined)
        subs = [Subgroup(group, elems) for elems in seen]
        subs.sort(key=lambda s: (s.order, s.elements))
        group._cache[key] = subs
    return group._cache[key]


def normal_subgroups(group: FiniteGroup) -> list[Subgroup]:
    key = "normal_subgroups"
    if key not in group._cache:
        group._cache[key] = [
            s for s in all_subgroups(group) if is_normal(group, s)
        ]
    return group._cache[key]


def cyclic_subgroups(group: FiniteGroup) -> list[Subgroup]:
    elems = sorted({closure(group, [g]) for g in group.elements()})
    return [Subgroup(group, e) for e in elems]


def is_cyclic_subgroup(sub: Subgroup) -> bool:
    return any(
        element_order(sub.parent, x) == sub.order for x in sub.elements
    )


def is_abelian_subgroup(sub: Subgroup) -> bool:
    t = sub.parent.table
    elems = sub.elements
    return all(t[x][y] == t[y][x] for i, x in enumerate(elems) for y in elems[:i])


# ---------------------------------------------------------------------------
# Sylow theory and nilpotency


def sylow_subgroup(group: FiniteGroup, p: int) -> Subgroup:
    """One Sylow p-subgroup, found by greedy p-element closure with backtracking."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p_part(group.order, p)
    if target == 1:
        return Subgroup(group, (0,))
    orders = element_orders(group)
    p_elements = [x for x in group.elements() if x and orders[x] % p == 0 and _is_p_power(orders[x], p)]

    def grow(current: tuple[int, ...]):
        if len(current) == target:
            return current
        cur_set = set(current)
        for g in p_elements:
            if g in cur_set:
                continue
            bigger = closure(group, cur_set | {g})
            if _is_p_power(len(bigger), p) and len(bigger) <= target:
                found = grow(bigger)
                if found is not None:
                    return found
        return None

    found = grow((0,))
    if found is None:
        raise RuntimeError(f"no Sylow {p}-subgroup found; table is corrupt")
    return Subgroup(group, found)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def sylow_system(group: FiniteGroup) -> dict[int, Subgroup]:
    key = "sylow_system"
    if key not in group._cache:
        group._cache[key] = {
            p: sylow_subgroup(group, p) for p in prime_factors(group.order)
        }
    return group._cache[key]


def is_nilpotent(group: FiniteGroup) -> bool:
    """True iff every Sylow subgroup is normal."""
    key = "is_nilpotent"
    if key not in group._cache:
        group._cache[key] = all(
            is_normal(group, syl) for syl in sylow_system(group).values()
        )
    return group._cache[key]


def all_sylow_cyclic(group: FiniteGroup) -> bool:
    return all(is_cyclic_subgroup(s) for s in sylow_system(group).values())


# ---------------------------------------------------------------------------
# recognition


class MetacyclicCase(Enum):
    COPRIME = "COPRIME"
    N_PRIME = "N_PRIME"
    M_PRIME = "M_PRIME"


def metacyclic_witness(
    group: FiniteGroup,
) -> Optional[tuple[Subgroup, MetacyclicCase]]:
    """A cyclic normal subgroup A with cyclic quotient, plus a case tag.

    Scans cyclic normal subgroups by descending order; for each, reports the
    first applicable tag among COPRIME (|A| and |G/A| coprime), N_PRIME
    (|G/A| prime), M_PRIME (|A| prime).  Returns None when no cyclic normal
    subgroup with cyclic quotient matches any case.
    """
    candidates = [
        s
        for s in cyclic_subgroups(group)
        if is_normal(group, s)
    ]
    candidates.sort(key=lambda s: (-s.order, s.elements))
    for a in candidates:
        quot, _ = quotient(group, a)
        if not any(element_order(quot, x) == quot.order for x in quot.elements()):
            continue
        m, n = a.order, quot.order
        if gcd(m, n) == 1:
            return a, MetacyclicCase.COPRIME
        if is_prime(n):
            return a, MetacyclicCase.N_PRIME
        if is_prime(m):
            return a, MetacyclicCase.M_PRIME
    return None


def dihedral_witness(group: FiniteGroup) -> Optional[tuple[Subgroup, int]]:
    """A cyclic index-2 subgroup A and an involution t inverting it, if any."""
    n = group.order
    if n % 2 != 0:
        return None
    orders = element_orders(group)
    half = n // 2
    seen = set()
    for g in group.elements():
        if orders[g] != half and not (half == 1 and g == 0):
            continue
        elems = closure(group, [g])
        if len(elems) != half or elems in seen:
            continue
        seen.add(elems)
        sub = Subgroup(group, elems)
        for t in group.elements():
            if t in sub or orders[t] != 2:
                continue
            if all(group.conj(a, t) == group.inverse[a] for a in elems):
                return sub, t
    return None


def is_dihedral(group: FiniteGroup) -> bool:
    """Cyclic subgroup of index 2 inverted by an outside involution.

    Degenerate cases are accepted: C2 (n = 1) and C2 x C2 (n = 2) count as
    dihedral since inversion is then the identity map.
    """
    return dihedral_witness(group) is not None


def index2_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """All subgroups of index 2 (each contains the derived subgroup)."""
    n = group.order
    if n % 2 != 0:
        return []
    der = derived_subgroup(group)
    quot, phi = quotient(group, der)
    # index-2 subgroups correspond to index-2 subgroups of the abelianization
    out = []
    if quot.order % 2 != 0:
        return []
    for s in all_subgroups(quot):
        if s.order * 2 == quot.order:
            members = tuple(
                sorted(x for x in group.elements() if phi[x] in s)
            )
            out.append(Subgroup(group, members))
    return out


def abelian_index2(group: FiniteGroup) -> bool:
    """True iff some subgroup of order |G|/2 is abelian."""
    return any(is_abelian_subgroup(s) for s in index2_subgroups(group))


def abelian_index2_witness(group: FiniteGroup) -> Optional[Subgroup]:
    for s in index2_subgroups(group):
        if is_abelian_subgroup(s):
            return s
    return None


# ---------------------------------------------------------------------------
# direct factorization and complements


def direct_factorization(
    group: FiniteGroup,
) -> Optional[tuple[Subgroup, Subgroup]]:
    """An internal direct product decomposition G = N1 x N2, if one exists.

    Picks the pair with smallest |N1| > 1, ties broken by element tuple.
    Returns None when G is directly indecomposable.
    """
    if group.order == 1:
        return None
    normals = [s for s in normal_subgroups(group) if 1 < s.order < group.order]
    normals.sort(key=lambda s: (s.order, s.elements))
    for n1 in normals:
        for n2 in normals:
            if n1.order * n2.order != group.order:
                continue
            if len(set(n1.elements) & set(n2.elements)) != 1:
                continue
            return n1, n2
    return None


def complements(parent: FiniteGroup, normal: Subgroup) -> list[Subgroup]:
    """All W <= parent with W meeting N trivially and W*N = parent."""
    if not is_normal(parent, normal):
        raise NotNormalError("complement search requires a normal subgroup")
    want = parent.order // normal.order
    nset = set(normal.elements)
    out = []
    for s in all_subgroups(parent):
        if s.order == want and len(set(s.elements) & nset) == 1:
            out.append(s)
    return out


def acts_faithfully(w: Subgroup, n: Subgroup) -> bool:
    """True iff only the identity of W centralizes all of N (conjugation action)."""
    group = w.parent
    for g in w.elements:
        if g == 0:
            continue
        if all(group.conj(x, g) == x for x in n.elements):
            return False
    return True


# ---------------------------------------------------------------------------
# first cohomology


class H1Result(Enum):
    TRUE_COPRIME = "TRUE_COPRIME"
    TRUE_ENUM = "TRUE_ENUM"
    FALSE_ENUM = "FALSE_ENUM"
    UNKNOWN = "UNKNOWN"


def h1_trivial(w: Subgroup, n: Subgroup, enum_bound: int = H1_ENUM_BOUND) -> H1Result:
    """Decide whether every 1-cocycle W -> N is a coboundary.

    W acts on the abelian subgroup N by conjugation in the common parent.
    Coprime orders give triviality immediately; otherwise all cocycles are
    enumerated from generator images with the bound |N|^(#generators).
    """
    if not is_abelian_subgroup(n):
        raise NotAbelianError("H1 computation requires an abelian module")
    group = w.parent
    for g in w.elements:
        for x in n.elements:
            if group.conj(x, g) not in n:
                raise ValueError("the acting subgroup does not normalize the module")
    if w.order == 1:
        return H1Result.TRUE_ENUM
    if gcd(w.order, n.order) == 1:
        return H1Result.TRUE_COPRIME
    gens = subgroup_generators(w)
    if n.order ** len(gens) > enum_bound:
        return H1Result.UNKNOWN

    welems = w.elements
    cocycles = set()
    for images in _tuples(n.elements, len(gens)):
        f = _propagate_cocycle(group, welems, gens, images, n)
        if f is not None:
            cocycles.add(tuple(f[x] for x in welems))
    coboundaries = set()
    for a in n.elements:
        ainv = group.inverse[a]
        coboundaries.add(
            tuple(group.mul(ainv, group.conj(a, x)) for x in welems)
        )
    if cocycles <= coboundaries:
        return H1Result.TRUE_ENUM
    return H1Result.FALSE_ENUM


def _tuples(pool, k):
    if k == 0:
        yield ()
        return
    for rest in _tuples(pool, k - 1):
        for x in pool:
            yield rest + (x,)


def _propagate_cocycle(group, welems, gens, images, n):
    """Extend generator images to a full cocycle f(vw) = f(v)^w * f(w), or None."""
    f = {0: 0}
    frontier = [0]
    assignment = dict(zip(gens, images))
    while frontier:
        v = frontier.pop()
        for g in gens:
            vg = group.mul(v, g)
            value = group.mul(group.conj(f[v], g), assignment[g])
            if vg in f:
                if f[vg] != value:
                    return None
            else:
                f[vg] = value
                frontier.append(vg)
    if len(f) != len(welems):
        return None
    # full verification of the cocycle identity
    for v in welems:
        for x in welems:
            if f[group.mul(v, x)] != group.mul(group.conj(f[v], x), f[x]):
                return None
    return f


# ---------------------------------------------------------------------------
# characteristic subgroups


def characteristic_abelian_candidates(sub: Subgroup) -> list[tuple[Subgroup, str]]:
    """Abelian subgroups of H that are provably characteristic in H.

    Routes, each a self-contained proof: the center, the derived subgroup
    (when abelian), the unique normal subgroup of its order, a normal Sylow
    subgroup, and verified invariance under a fully enumerated Aut(H).
    Results are tagged with the route and sorted by descending order.
    """
    from .automorphisms import automorphism_group

    parent = sub.parent
    hgrp, hmap = subgroup_as_group(sub)
    found: dict[tuple[int, ...], str] = {}

    def record(local_elems, route):
        elems = tuple(sorted(hmap[x] for x in local_elems))
        if elems not in found:
            found[elems] = route

    z = center(hgrp)
    if z.order > 1:
        record(z.elements, "center")
    der = derived_subgroup(hgrp)
    if der.order > 1 and is_abelian_subgroup(der):
        record(der.elements, "derived")
    subs = all_subgroups(hgrp)
    by_order: dict[int, list[Subgroup]] = {}
    for s in subs:
        by_order.setdefault(s.order, []).append(s)
    for order, group_list in by_order.items():
        if order == 1:
            continue
        normals = [s for s in group_list if is_normal(hgrp, s)]
        if len(normals) == 1 and is_abelian_subgroup(normals[0]):
            record(normals[0].elements, "unique-normal-of-order")
    for p, syl in sylow_system(hgrp).items():
        if syl.order > 1 and is_normal(hgrp, syl) and is_abelian_subgroup(syl):
            record(syl.elements, "normal-sylow")
    auts = automorphism_group(whole_subgroup(hgrp))
    if auts is not None:
        for s in subs:
            if s.order in (1, hgrp.order) or not is_abelian_subgroup(s):
                continue
            eset = set(s.elements)
            if all({a.apply(x) for x in s.elements} == eset for a in auts):
                record(s.elements, "aut-invariant")
    out = [(Subgroup(parent, elems), route) for elems, route in found.items()]
    out.sort(key=lambda pair: (-pair[0].order, pair[0].elements))
    return out
