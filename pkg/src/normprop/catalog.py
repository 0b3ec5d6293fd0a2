"""Group-definition mini-language, catalog file format, and the bundled
small-groups catalog.

Spec grammar:
    cyclic:n
    dihedral:n            (order 2n; n = 1, 2 give the degenerate cases)
    quaternion:n          (dicyclic of order n; n a multiple of 4, n >= 8)
    symmetric:m
    metacyclic:m,n,r[,s]  (<a, b | a^m = 1, b^n = a^s, a^b = a^r>)
    perm:(cycles);(cycles);...
    product:<spec>|<spec>

Catalog files are UTF-8, LF, tab-separated: ``name<TAB>order<TAB>gens``
with generators in cycle notation joined by ';' and '#' comment lines.
The bundled catalog has one entry per isomorphism type of order 1..47,
with generators given in the right regular representation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .errors import CatalogError, CatalogWarning, InconsistentPresentationError, SpecParseError
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    Permutation,
    conjugacy_classes,
    direct_product,
    element_orders,
    from_generators,
    parse_cycles,
)
from .structure import all_subgroups

BUNDLED_CATALOG = "smallgroups.tsv"


# ---------------------------------------------------------------------------
# group specs


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    params: tuple

    def format(self) -> str:
        if self.kind == "perm":
            return "perm:" + ";".join(self.params)
        if self.kind == "product":
            left, right = self.params
            return f"product:{left.format()}|{right.format()}"
        return f"{self.kind}:" + ",".join(str(p) for p in self.params)


def parse_group_spec(text: str) -> GroupSpec:
    text = text.strip()
    if ":" not in text:
        raise SpecParseError(f"missing ':' in group spec {text!r}")
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    if kind == "cyclic":
        return GroupSpec("cyclic", (_int(rest, text, minimum=1),))
    if kind == "dihedral":
        return GroupSpec("dihedral", (_int(rest, text, minimum=1),))
    if kind == "quaternion":
        n = _int(rest, text, minimum=8)
        if n % 4 != 0:
            raise SpecParseError(f"quaternion order must be a multiple of 4: {text!r}")
        return GroupSpec("quaternion", (n,))
    if kind == "symmetric":
        return GroupSpec("symmetric", (_int(rest, text, minimum=1),))
    if kind == "metacyclic":
        parts = [p.strip() for p in rest.split(",")]
        if len(parts) not in (3, 4):
            raise SpecParseError(f"metacyclic needs m,n,r[,s]: {text!r}")
        nums = [_int(p, text, minimum=0) for p in parts]
        if len(nums) == 3:
            nums.append(0)
        m, n, r, s = nums
        if m < 1 or n < 1:
            raise SpecParseError(f"metacyclic orders must be positive: {text!r}")
        return GroupSpec("metacyclic", (m, n, r % max(m, 1), s % max(m, 1)))
    if kind == "perm":
        gens = [p.strip() for p in rest.split(";") if p.strip()]
        if not gens:
            raise SpecParseError(f"perm spec needs at least one generator: {text!r}")
        return GroupSpec("perm", tuple(gens))
    if kind == "product":
        for i, ch in enumerate(rest):
            if ch != "|":
                continue
            try:
                left = parse_group_spec(rest[:i])
                right = parse_group_spec(rest[i + 1 :])
            except SpecParseError:
                continue
            return GroupSpec("product", (left, right))
        raise SpecParseError(f"product spec needs two parseable parts: {text!r}")
    raise SpecParseError(f"unknown group kind {kind!r}", position=0)


def _int(text: str, context: str, minimum: int) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise SpecParseError(f"expected an integer in {context!r}") from None
    if value < minimum:
        raise SpecParseError(f"value {value} below minimum {minimum} in {context!r}")
    return value


def _metacyclic_group(m, n, r, s, a_name="a", b_name="b") -> FiniteGroup:
    """Cayley table for <a, b | a^m = 1, b^n = a^s, a^b = a^r>.

    Elements are b^j * a^i at index j*m + i.  Raises when the parameters
    do not satisfy the consistency congruences r^n = 1 and r*s = s mod m.
    """
    if m == 1:
        r = 0
        s = 0
    if pow(r, n, m) != 1 % m:
        raise InconsistentPresentationError(
            f"r^n = {r}^{n} is not 1 modulo {m}"
        )
    if (s * (r - 1)) % m != 0 or (r * s) % m != s % m:
        raise InconsistentPresentationError(
            f"s*(r-1) = {s}*({r}-1) is not 0 modulo {m}"
        )
    rpow = [1 % m]
    for _ in range(n):
        rpow.append((rpow[-1] * r) % m)
    size = m * n
    table = [[0] * size for _ in range(size)]
    for j1 in range(n):
        for i1 in range(m):
            row = table[j1 * m + i1]
            for j2 in range(n):
                for i2 in range(m):
                    jj = j1 + j2
                    ii = (i1 * rpow[j2] + i2) % m
                    if jj >= n:
                        jj -= n
                        ii = (ii + s) % m
                    row[j2 * m + i2] = jj * m + ii
    names = []
    for j in range(n):
        for i in range(m):
            parts = []
            if j:
                parts.append(b_name if j == 1 else f"{b_name}^{j}")
            if i:
                parts.append(a_name if i == 1 else f"{a_name}^{i}")
            names.append("*".join(parts) if parts else "id")
    gens = []
    if m > 1:
        gens.append(1)
    if n > 1:
        gens.append(m)
    return FiniteGroup(table, names=names, generators=gens)


def build(spec: GroupSpec, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Construct the group a spec describes."""
    if spec.kind == "cyclic":
        (n,) = spec.params
        return _metacyclic_group(n, 1, 1 % n if n > 1 else 0, 0)
    if spec.kind == "dihedral":
        (n,) = spec.params
        return _metacyclic_group(n, 2, (n - 1) % n if n > 1 else 0, 0, a_name="r", b_name="s")
    if spec.kind == "quaternion":
        (order,) = spec.params
        m = order // 2
        return _metacyclic_group(m, 2, m - 1, m // 2)
    if spec.kind == "symmetric":
        (m,) = spec.params
        if m == 1:
            return from_generators([], order_cap=order_cap)
        gens = [Permutation.from_cycles([tuple(range(m))], degree=m)]
        if m > 2:
            gens.append(Permutation.from_cycles([(0, 1)], degree=m))
        return from_generators(gens, order_cap=order_cap)
    if spec.kind == "metacyclic":
        m, n, r, s = spec.params
        return _metacyclic_group(m, n, r, s)
    if spec.kind == "perm":
        gens = [parse_cycles(p) for p in spec.params]
        degree = max(p.degree for p in gens)
        gens = [
            Permutation(p.images + tuple(range(p.degree, degree))) for p in gens
        ]
        return from_generators(gens, order_cap=order_cap)
    if spec.kind == "product":
        left, right = spec.params
        g1 = build(left, order_cap=order_cap)
        g2 = build(right, order_cap=order_cap)
        prod, *_ = direct_product(g1, g2, order_cap=order_cap)
        return prod
    raise SpecParseError(f"unknown kind {spec.kind!r}")


def build_group_spec(text: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    return build(parse_group_spec(text), order_cap=order_cap)


# ---------------------------------------------------------------------------
# catalog files


@dataclass
class CatalogEntry:
    name: str
    order: int
    generator_text: str
    _group: Optional[FiniteGroup] = None

    def group(self) -> FiniteGroup:
        if self._group is None:
            self._group = build_entry_group(self.generator_text)
        return self._group


def build_entry_group(generator_text: str) -> FiniteGroup:
    gens = [parse_cycles(g) for g in generator_text.split(";") if g.strip()]
    if not gens:
        return from_generators([])
    degree = max(p.degree for p in gens)
    gens = [Permutation(p.images + tuple(range(p.degree, degree))) for p in gens]
    return from_generators(gens)


def fingerprint(group: FiniteGroup) -> tuple:
    """Isomorphism-invariant fingerprint: order, class-size multiset,
    element-order multiset, subgroup-order multiset.

    A fingerprint collision does not prove isomorphism; the loader only
    warns about collisions.
    """
    class_sizes = tuple(sorted(len(c) for c in conjugacy_classes(group)))
    orders = tuple(sorted(element_orders(group)))
    sub_orders = tuple(sorted(s.order for s in all_subgroups(group)))
    return (group.order, class_sizes, orders, sub_orders)


def load_catalog(
    path=None, check_duplicates: bool = True, jobs: int = 1
) -> list[CatalogEntry]:
    """Load and validate a catalog file; defaults to the bundled catalog.

    Every entry is built and its order checked against the declared order.
    With check_duplicates, isomorphism-invariant fingerprints are compared
    across entries and collisions are reported as warnings.
    """
    if path is None:
        text = (
            resources.files("normprop.data").joinpath(BUNDLED_CATALOG).read_text("utf-8")
        )
        source = f"bundled:{BUNDLED_CATALOG}"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
        source = str(path)
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        parts = raw.rstrip("\r\n").split("\t")
        if len(parts) != 3:
            raise CatalogError(
                f"{source}:{lineno}: expected 3 tab-separated fields, got {len(parts)}"
            )
        name, order_text, gens = parts
        try:
            order = int(order_text)
        except ValueError:
            raise CatalogError(f"{source}:{lineno}: bad order {order_text!r}") from None
        entry = CatalogEntry(name=name, order=order, generator_text=gens)
        try:
            group = entry.group()
        except Exception as exc:
            raise CatalogError(f"{source}:{lineno}: cannot build group: {exc}") from exc
        if group.order != order:
            raise CatalogError(
                f"{source}:{lineno}: declared order {order}, built order {group.order}"
            )
        entries.append(entry)
    if check_duplicates:
        _warn_duplicates(entries, jobs=jobs)
    return entries


def _warn_duplicates(entries, jobs: int = 1):
    if jobs > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            prints = list(
                pool.map(_fingerprint_worker, [e.generator_text for e in entries])
            )
    else:
        prints = [fingerprint(e.group()) for e in entries]
    seen: dict[tuple, str] = {}
    for entry, fp in zip(entries, prints):
        if fp in seen:
            warnings.warn(
                f"catalog entries {seen[fp]!r} and {entry.name!r} share an "
                "isomorphism-invariant fingerprint; they may be duplicates",
                CatalogWarning,
                stacklevel=3,
            )
        else:
            seen[fp] = entry.name
    return prints


def _fingerprint_worker(generator_text: str) -> tuple:
    return fingerprint(build_entry_group(generator_text))
