"""Automorphism machinery for subgroups: Aut(H), Inn(H), group-induced
automorphisms, and the class-preserving upper bound.

Maps are searched by assigning images to a small generating set with
pruning on element order and conjugacy data, then verified outright.
Search caps count candidate tuples examined, so worst-case time stays
bounded even when the automorphism group is large; a ``None`` return
always means the cap was hit, never an empty group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .groups import (
    FiniteGroup,
    Subgroup,
    class_of,
    element_order,
    normalizer,
    subgroup_generators,
)

DEFAULT_SEARCH_CAP = 10**7


@dataclass(frozen=True, eq=False)
class GroupMap:
    """A bijection of a subgroup's elements, stored aligned to domain.elements."""

    domain: Subgroup
    images: tuple[int, ...]

    def __hash__(self):
        return hash((id(self.domain.parent), self.domain.elements, self.images))

    def __eq__(self, other):
        return (
            isinstance(other, GroupMap)
            and self.domain.parent is other.domain.parent
            and self.domain.elements == other.domain.elements
            and self.images == other.images
        )

    def apply(self, x: int) -> int:
        return self.images[self.domain.position(x)]

    def compose(self, other: "GroupMap") -> "GroupMap":
        """Apply self first, then other."""
        return GroupMap(
            self.domain, tuple(other.apply(y) for y in self.images)
        )

    def inverse(self) -> "GroupMap":
        elems = self.domain.elements
        inv = {y: x for x, y in zip(elems, self.images)}
        return GroupMap(self.domain, tuple(inv[x] for x in elems))

    def is_identity(self) -> bool:
        return self.images == self.domain.elements

    def is_automorphism(self) -> bool:
        elems = self.domain.elements
        if sorted(self.images) != list(elems):
            return False
        group = self.domain.parent
        for x in elems:
            for y in elems:
                if self.apply(group.mul(x, y)) != group.mul(self.apply(x), self.apply(y)):
                    return False
        return True


def identity_map(sub: Subgroup) -> GroupMap:
    return GroupMap(sub, sub.elements)


def restriction_of_conjugation(sub: Subgroup, g: int) -> GroupMap:
    """conj(g) restricted to the subgroup; caller ensures g normalizes it."""
    group = sub.parent
    return GroupMap(sub, tuple(group.conj(x, g) for x in sub.elements))


def _extend_map(group: FiniteGroup, sub: Subgroup, gens, images) -> Optional[dict]:
    """Grow {generator: image} into a homomorphism on all of the subgroup.

    Returns the full mapping dict, or None on any conflict.  A conflict-free
    closure starting from the identity is automatically multiplicative.
    """
    f = {0: 0}
    frontier = [0]
    gen_img = dict(zip(gens, images))
    while frontier:
        x = frontier.pop()
        for g, img in gen_img.items():
            xg = group.mul(x, g)
            val = group.mul(f[x], img)
            known = f.get(xg)
            if known is None:
                f[xg] = val
                frontier.append(xg)
            elif known != val:
                return None
    if len(f) != sub.order:
        return None
    return f


class _CapExceeded(Exception):
    pass


def _search_maps(sub: Subgroup, candidate_sets, cap: int) -> Optional[list[GroupMap]]:
    """All automorphisms whose generator images lie in the candidate sets.

    Counts candidate tuples examined against the cap; returns None if the
    cap is exceeded.
    """
    group = sub.parent
    gens = subgroup_generators(sub)
    if not gens:
        return [identity_map(sub)]
    counter = [0]
    found = []

    def dfs(depth, chosen):
        if depth == len(gens):
            f = _extend_map(group, sub, gens, chosen)
            if f is not None and sorted(f.values()) == list(sub.elements):
                found.append(GroupMap(sub, tuple(f[x] for x in sub.elements)))
            return
        for img in candidate_sets[depth]:
            counter[0] += 1
            if counter[0] > cap:
                raise _CapExceeded
            if img in chosen:
                continue
            dfs(depth + 1, chosen + [img])

    try:
        dfs(0, [])
    except _CapExceeded:
        return None
    found.sort(key=lambda m: m.images)
    return found


def automorphism_group(sub: Subgroup, cap: int = DEFAULT_SEARCH_CAP) -> Optional[list[GroupMap]]:
    """Complete list of automorphisms of the subgroup, or None past the cap.

    Candidate images of each generator are pruned by element order and by
    conjugacy class size inside the subgroup itself.
    """
    cache = sub.parent._cache.setdefault("automorphism_group", {})
    key = (sub.elements, cap)
    if key in cache:
        return cache[key]
    from .groups import subgroup_as_group

    hgrp, hmap = subgroup_as_group(sub)
    invariants = {}
    for i in range(hgrp.order):
        invariants[i] = (element_order(hgrp, i), len(class_of(hgrp, i)))
    gens = subgroup_generators(sub)
    pos = {x: i for i, x in enumerate(sub.elements)}
    candidate_sets = []
    for g in gens:
        inv = invariants[pos[g]]
        candidates = [
            hmap[i] for i in range(hgrp.order) if invariants[i] == inv
        ]
        candidate_sets.append(candidates)
    result = _search_maps(sub, candidate_sets, cap)
    cache[key] = result
    return result


def inner_automorphisms(sub: Subgroup) -> list[GroupMap]:
    """Conjugation maps by the subgroup's own elements, deduplicated."""
    seen = {}
    for h in sub.elements:
        m = restriction_of_conjugation(sub, h)
        seen.setdefault(m.images, m)
    return sorted(seen.values(), key=lambda m: m.images)


def aut_g(group: FiniteGroup, sub: Subgroup) -> list[tuple[GroupMap, int]]:
    """Automorphisms of the subgroup induced by conjugation in the big group.

    Each map is paired with one inducing element of the normalizer.
    """
    seen: dict[tuple[int, ...], int] = {}
    for g in normalizer(group, sub).elements:
        m = restriction_of_conjugation(sub, g)
        seen.setdefault(m.images, g)
    out = [(GroupMap(sub, images), g) for images, g in seen.items()]
    out.sort(key=lambda pair: pair[0].images)
    return out


def class_preserving_bound(
    group: FiniteGroup, sub: Subgroup, cap: int = DEFAULT_SEARCH_CAP
) -> Optional[list[GroupMap]]:
    """All automorphisms of the subgroup moving every element inside its
    conjugacy class of the ambient group, or None past the search cap.

    This is the computable upper bound for automorphisms induced by units
    of the integral group ring: conjugation by a normalizing unit keeps
    every element inside its ambient class.
    """
    gens = subgroup_generators(sub)
    candidate_sets = []
    for g in gens:
        candidate_sets.append([x for x in class_of(group, g) if x in sub])
    maps = _search_maps(sub, candidate_sets, cap)
    if maps is None:
        return None
    out = []
    for m in maps:
        if all(m.apply(x) in class_of(group, x) for x in sub.elements):
            out.append(m)
    return out


def induced_by(group: FiniteGroup, sub: Subgroup, sigma: GroupMap) -> Optional[int]:
    """Some normalizer element inducing the map by conjugation, or None."""
    for g in normalizer(group, sub).elements:
        if all(group.conj(x, g) == sigma.apply(x) for x in sub.elements):
            return g
    return None
