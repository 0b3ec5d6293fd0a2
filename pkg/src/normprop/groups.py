"""Finite groups as full Cayley tables over 0-based element indices.

Everything downstream works on indices into a multiplication table; the
identity always sits at index 0.  Groups and subgroups are immutable after
construction and all operations here are pure functions of their inputs, so
values can be shared freely across threads or processes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import BadDegreeError, CapExceededError, NotNormalError

DEFAULT_ORDER_CAP = 2048

# Orders up to this bound get a full n^3 associativity check at construction;
# larger tables are spot-checked on 10*n^2 seeded random triples.
EXHAUSTIVE_ASSOC_BOUND = 64


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., degree-1}, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation of 0..{len(self.images) - 1}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # left-to-right composition: (p * q)(i) = q(p(i))
        if self.degree != other.degree:
            raise BadDegreeError(f"degrees {self.degree} and {other.degree} differ")
        return Permutation(tuple(other.images[i] for i in self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    @staticmethod
    def from_cycles(cycles: Sequence[Sequence[int]], degree: Optional[int] = None) -> "Permutation":
        points = [p for cyc in cycles for p in cyc]
        if degree is None:
            degree = max(points) + 1 if points else 1
        images = list(range(degree))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return Permutation(tuple(images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "id"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)

    def __str__(self):
        return self.cycle_string()


def parse_cycles(text: str) -> Permutation:
    """Parse cycle notation like ``(0 1 2)(3 4)`` or ``id``."""
    text = text.strip()
    if text in ("id", "()", ""):
        return Permutation.identity(1)
    cycles = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        if text[i] != "(":
            raise ValueError(f"expected '(' at position {i} in {text!r}")
        j = text.index(")", i)
        body = text[i + 1 : j].replace(",", " ").split()
        cycles.append([int(p) for p in body])
        i = j + 1
    return Permutation.from_cycles(cycles)


# ---------------------------------------------------------------------------
# groups


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Attributes:
        order: number of elements
        table: table[i][j] = index of the product (element i) * (element j)
        inverse: inverse[i] = index of the inverse of element i
        names: display string per element, names[0] == "id" by convention
        generators: indices of a generating set recorded at construction
    """

    __slots__ = ("order", "table", "inverse", "names", "generators", "_cache")

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        names: Optional[Sequence[str]] = None,
        generators: Optional[Sequence[int]] = None,
        check: bool = True,
    ):
        self.order = len(table)
        self.table = [list(row) for row in table]
        if names is None:
            names = ["id"] + [f"g{i}" for i in range(1, self.order)]
        self.names = [str(s) for s in names]
        if check:
            self._validate()
        inv = [None] * self.order
        for x in range(self.order):
            for y in range(self.order):
                if self.table[x][y] == 0:
                    inv[x] = y
                    break
            if inv[x] is None:
                raise ValueError(f"element {x} has no inverse")
        self.inverse = inv
        if generators is None:
            generators = minimal_generating_set(self, tuple(range(self.order)))
        self.generators = list(generators)
        self._cache = {}

    # groups are identity-hashable: two distinct objects are distinct groups
    __hash__ = object.__hash__

    def _validate(self):
        n = self.order
        if n == 0:
            raise ValueError("empty multiplication table")
        t = self.table
        full = set(range(n))
        for x in range(n):
            if len(t[x]) != n:
                raise ValueError("multiplication table is not square")
            if t[0][x] != x or t[x][0] != x:
                raise ValueError("index 0 is not an identity element")
            if set(t[x]) != full or {t[y][x] for y in range(n)} != full:
                raise ValueError(f"row or column {x} is not a permutation")
        arr = np.array(t, dtype=np.int64)
        if n <= EXHAUSTIVE_ASSOC_BOUND:
            # (x*y)*z vs x*(y*z) for all triples, vectorized
            left = arr[arr, :]
            right = arr[:, arr]
            if not np.array_equal(left, right):
                raise ValueError("multiplication table is not associative")
        else:
            rng = random.Random(0x5EED ^ n)
            for _ in range(10 * n * n):
                x, y, z = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if t[t[x][y]][z] != t[x][t[y][z]]:
                    raise ValueError("multiplication table is not associative")

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def conj(self, x: int, g: int) -> int:
        """x^g = g^-1 * x * g."""
        t = self.table
        return t[t[self.inverse[g]][x]][g]

    def commutator(self, x: int, y: int) -> int:
        """[x, y] = x^-1 * y^-1 * x * y."""
        t = self.table
        return t[t[t[self.inverse[x]][self.inverse[y]]][x]][y]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse[x], -k)
        out = 0
        for _ in range(k):
            out = self.table[out][x]
        return out

    def elements(self) -> range:
        return range(self.order)

    def name_of(self, x: int) -> str:
        return self.names[x]

    def index_of_name(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def is_abelian(self) -> bool:
        key = "abelian"
        if key not in self._cache:
            t = self.table
            self._cache[key] = all(
                t[x][y] == t[y][x] for x in range(self.order) for y in range(x)
            )
        return self._cache[key]

    def __repr__(self):
        return f"<FiniteGroup of order {self.order}>"


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` as a strictly sorted tuple of element indices."""

    parent: FiniteGroup
    elements: tuple[int, ...]
    _pos: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        elems = tuple(sorted(self.elements))
        object.__setattr__(self, "elements", elems)
        if not elems or elems[0] != 0:
            raise ValueError("a subgroup must contain the identity (index 0)")
        eset = set(elems)
        t = self.parent.table
        for x in elems:
            if self.parent.inverse[x] not in eset:
                raise ValueError(f"not closed under inversion at element {x}")
            for y in elems:
                if t[x][y] not in eset:
                    raise ValueError(f"not closed under multiplication at ({x}, {y})")
        if self.parent.order % len(elems) != 0:
            raise ValueError("subgroup size does not divide the group order")
        object.__setattr__(self, "_pos", {x: i for i, x in enumerate(elems)})

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.elements == other.elements
        )

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._pos

    def position(self, x: int) -> int:
        return self._pos[x]

    def is_whole_group(self) -> bool:
        return len(self.elements) == self.parent.order

    def __repr__(self):
        return f"<Subgroup of order {self.order} in group of order {self.parent.order}>"


# ---------------------------------------------------------------------------
# construction


def closure(group: FiniteGroup, seed: Iterable[int]) -> tuple[int, ...]:
    """Sorted element tuple of the subgroup generated by ``seed``."""
    t = group.table
    mask = 1
    elems = [0]
    stack = []
    for g in seed:
        if not (mask >> g) & 1:
            mask |= 1 << g
            elems.append(g)
            stack.append(g)
    # process products of each new element with the whole current list
    i = 1
    while i < len(elems):
        x = elems[i]
        for y in elems[: i + 1]:
            for p in (t[x][y], t[y][x]):
                if not (mask >> p) & 1:
                    mask |= 1 << p
                    elems.append(p)
        i += 1
    return tuple(sorted(elems))


def subgroup_from(group: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    """Subgroup generated by the given element indices."""
    return Subgroup(group, closure(group, generators))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (0,))


def whole_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


def from_generators(
    gens: Sequence[Permutation], order_cap: int = DEFAULT_ORDER_CAP
) -> FiniteGroup:
    """Close a set of permutations under composition and build the group.

    Elements are numbered in breadth-first discovery order with the identity
    first, so identical generator lists always produce identical tables.
    Element names are derived from cycle notation.
    """
    if gens:
        degree = max(p.degree for p in gens)
        # permutations written on fewer points embed by fixing the rest
        gens = [
            p if p.degree == degree else Permutation(p.images + tuple(range(p.degree, degree)))
            for p in gens
        ]
    else:
        degree = 1
    ident = Permutation.identity(degree)
    elems = [ident]
    index = {ident.images: 0}
    queue = [ident]
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = x * g
            if y.images not in index:
                if len(elems) >= order_cap:
                    raise CapExceededError(
                        f"closure exceeded the order cap of {order_cap}"
                    )
                index[y.images] = len(elems)
                elems.append(y)
                queue.append(y)
    n = len(elems)
    table = [[index[(elems[i] * elems[j]).images] for j in range(n)] for i in range(n)]
    names = [p.cycle_string() for p in elems]
    gen_idx = [index[g.images] for g in gens]
    group = FiniteGroup(table, names=names, generators=gen_idx)
    group._cache["permutations"] = elems
    return group


def from_table(
    table: Sequence[Sequence[int]],
    names: Optional[Sequence[str]] = None,
    generators: Optional[Sequence[int]] = None,
) -> FiniteGroup:
    return FiniteGroup(table, names=names, generators=generators)


# ---------------------------------------------------------------------------
# elementary structure queries


def element_order(group: FiniteGroup, x: int) -> int:
    """Least n >= 1 with x^n = identity."""
    n = 1
    y = x
    while y != 0:
        y = group.table[y][x]
        n += 1
    return n


def element_orders(group: FiniteGroup) -> list[int]:
    key = "element_orders"
    if key not in group._cache:
        group._cache[key] = [element_order(group, x) for x in group.elements()]
    return group._cache[key]


def conjugacy_classes(group: FiniteGroup) -> list[tuple[int, ...]]:
    """Partition of the element indices into conjugacy classes.

    The identity class comes first; the remaining classes are ordered by
    their smallest member.
    """
    key = "conjugacy_classes"
    if key not in group._cache:
        n = group.order
        assigned = [None] * n
        classes = []
        for x in range(n):
            if assigned[x] is not None:
                continue
            block = {x}
            for g in range(n):
                block.add(group.conj(x, g))
            block = tuple(sorted(block))
            for y in block:
                assigned[y] = len(classes)
            classes.append(block)
        group._cache[key] = classes
        group._cache["class_index"] = assigned
    return group._cache[key]


def class_of(group: FiniteGroup, x: int) -> tuple[int, ...]:
    classes = conjugacy_classes(group)
    return classes[group._cache["class_index"][x]]


def class_index_of(group: FiniteGroup, x: int) -> int:
    conjugacy_classes(group)
    return group._cache["class_index"][x]


def centralizer(group: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Subgroup of all g commuting with every element of the given set."""
    elems = list(elements)
    if not elems:
        raise ValueError("centralizer needs a nonempty element set")
    t = group.table
    members = [
        g for g in group.elements() if all(t[g][s] == t[s][g] for s in elems)
    ]
    return Subgroup(group, tuple(members))


def element_centralizer(group: FiniteGroup, x: int) -> tuple[int, ...]:
    """Cached centralizer element tuple of a single element."""
    key = "element_centralizers"
    cache = group._cache.setdefault(key, {})
    if x not in cache:
        t = group.table
        cache[x] = tuple(g for g in group.elements() if t[g][x] == t[x][g])
    return cache[x]


def normalizer(group: FiniteGroup, sub: Subgroup) -> Subgroup:
    """Subgroup of all g with sub^g = sub."""
    members = []
    for g in group.elements():
        if all(group.conj(h, g) in sub for h in sub.elements):
            members.append(g)
    return Subgroup(group, tuple(members))


def center(group: FiniteGroup) -> Subgroup:
    key = "center"
    if key not in group._cache:
        group._cache[key] = centralizer(group, range(group.order))
    return group._cache[key]


def derived_subgroup(group: FiniteGroup) -> Subgroup:
    """Subgroup generated by all commutators."""
    key = "derived"
    if key not in group._cache:
        comms = {
            group.commutator(x, y)
            for x in group.elements()
            for y in group.elements()
        }
        group._cache[key] = subgroup_from(group, comms)
    return group._cache[key]


def is_normal(group: FiniteGroup, sub: Subgroup) -> bool:
    return all(
        group.conj(h, g) in sub for g in group.elements() for h in sub.elements
    )


def direct_product(
    g1: FiniteGroup, g2: FiniteGroup, order_cap: int = DEFAULT_ORDER_CAP
):
    """Direct product with projection and injection index maps.

    Returns ``(group, proj1, proj2, inj1, inj2)`` where ``proj1[x]`` is the
    first coordinate of element x and ``inj1[a]`` embeds element a of g1.
    """
    n1, n2 = g1.order, g2.order
    n = n1 * n2
    if n > order_cap:
        raise CapExceededError(f"product order {n} exceeds the cap {order_cap}")
    t1, t2 = g1.table, g2.table

    def enc(a, b):
        return a * n2 + b

    table = [[0] * n for _ in range(n)]
    for a1 in range(n1):
        for b1 in range(n2):
            row = table[enc(a1, b1)]
            ra = t1[a1]
            rb = t2[b1]
            for a2 in range(n1):
                base = ra[a2] * n2
                for b2 in range(n2):
                    row[enc(a2, b2)] = base + rb[b2]
    names = [
        f"({g1.names[a]},{g2.names[b]})" for a in range(n1) for b in range(n2)
    ]
    gens = [enc(a, 0) for a in g1.generators] + [enc(0, b) for b in g2.generators]
    prod = FiniteGroup(table, names=names, generators=gens)
    proj1 = [x // n2 for x in range(n)]
    proj2 = [x % n2 for x in range(n)]
    inj1 = [enc(a, 0) for a in range(n1)]
    inj2 = [enc(0, b) for b in range(n2)]
    return prod, proj1, proj2, inj1, inj2


def quotient(group: FiniteGroup, normal: Subgroup):
    """Coset group G/N and the natural epimorphism as an index list.

    Raises NotNormalError when N is not normal in G.
    """
    if not is_normal(group, normal):
        raise NotNormalError("the given subgroup is not normal")
    n = group.order
    t = group.table
    coset_of = [None] * n
    reps = []
    for x in range(n):
        if coset_of[x] is None:
            for h in normal.elements:
                coset_of[t[x][h]] = len(reps)
            reps.append(x)
    # index 0 is the coset of the identity because element 0 is seen first
    q = len(reps)
    table = [[coset_of[t[reps[i]][reps[j]]] for j in range(q)] for i in range(q)]
    names = [f"[{group.names[r]}]" for r in reps]
    gens = sorted({coset_of[g] for g in group.generators} - {0}) or None
    quot = FiniteGroup(table, names=names, generators=gens)
    return quot, coset_of


def subgroup_as_group(sub: Subgroup):
    """Reindex a subgroup as a standalone FiniteGroup.

    Returns ``(group, elements)`` where ``elements[i]`` is the parent index
    of the new group's element i.  Results are cached on the parent.
    """
    cache = sub.parent._cache.setdefault("as_group", {})
    if sub.elements not in cache:
        elems = sub.elements
        pos = sub._pos
        t = sub.parent.table
        table = [[pos[t[x][y]] for y in elems] for x in elems]
        names = [sub.parent.names[x] for x in elems]
        grp = FiniteGroup(table, names=names)
        cache[sub.elements] = (grp, elems)
    return cache[sub.elements]


def minimal_generating_set(group: FiniteGroup, within: tuple[int, ...]) -> list[int]:
    """Greedy small generating set of the subgroup with the given elements.

    Repeatedly adds the element that grows the generated subgroup the most,
    breaking ties by lowest index.  Greedy is not guaranteed minimal in
    general but is exact at the orders this package targets.
    """
    target = set(within)
    if len(target) == 1:
        return []
    gens: list[int] = []
    current = (0,)
    while set(current) != target:
        best = None
        best_size = 0
        cur_set = set(current)
        for g in within:
            if g in cur_set:
                continue
            size = len(closure(group, gens + [g]))
            if size > best_size:
                best, best_size = g, size
                if size == len(target):
                    break
        gens.append(best)
        current = closure(group, gens)
    return gens


def subgroup_generators(sub: Subgroup) -> list[int]:
    cache = sub.parent._cache.setdefault("subgroup_gens", {})
    if sub.elements not in cache:
        cache[sub.elements] = minimal_generating_set(sub.parent, sub.elements)
    return cache[sub.elements]
