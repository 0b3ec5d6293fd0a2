"""Exact arithmetic in the integral group ring ZG.

Elements are finitely supported integer coefficient maps over a group's
element indices; zero coefficients are never stored.  Unit testing inverts
the regular representation over the rationals, which is complete for
finite groups.  The support action and its kernel implement the
Coleman-style decomposition of a normalizing unit into a support element
times a unit centralizing a subgroup of coprime-to-p index.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional

from .errors import (
    BadClassError,
    GroupMismatchError,
    NoFixedPointError,
    NotAUnitError,
    NotNormalizingError,
    SpecParseError,
)
from .groups import FiniteGroup, Subgroup, conjugacy_classes, quotient, subgroup_as_group
from .structure import sylow_subgroup


class GroupRingElement:
    """An element of ZG: a dict from element index to nonzero integer."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: dict[int, int]):
        self.group = group
        self.coeffs = {g: int(c) for g, c in coeffs.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(group: FiniteGroup) -> "GroupRingElement":
        return GroupRingElement(group, {})

    @staticmethod
    def one(group: FiniteGroup) -> "GroupRingElement":
        return GroupRingElement(group, {0: 1})

    @staticmethod
    def basis(group: FiniteGroup, x: int, coeff: int = 1) -> "GroupRingElement":
        return GroupRingElement(group, {x: coeff})

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElement)
            and self.group is other.group
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.group), tuple(sorted(self.coeffs.items()))))

    # -- ring operations ---------------------------------------------------

    def _check_group(self, other: "GroupRingElement"):
        if self.group is not other.group:
            raise GroupMismatchError("elements live over different groups")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check_group(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(self.group, out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check_group(other)
        table = self.group.table
        out: dict[int, int] = {}
        for g, cg in self.coeffs.items():
            row = table[g]
            for h, ch in other.coeffs.items():
                k = row[h]
                out[k] = out.get(k, 0) + cg * ch
        return GroupRingElement(self.group, out)

    def scale(self, k: int) -> "GroupRingElement":
        return GroupRingElement(self.group, {g: k * c for g, c in self.coeffs.items()})

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return f"GroupRingElement({format_element(self)!r})"


def add(u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
    return u + v


def negate(u: GroupRingElement) -> GroupRingElement:
    return -u


def multiply(u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
    return u * v


# ---------------------------------------------------------------------------
# augmentation maps


def augmentation(u: GroupRingElement) -> int:
    """Sum of all coefficients; a ring homomorphism onto Z."""
    return sum(u.coeffs.values())


def partial_augmentation(u: GroupRingElement, cls: Iterable[int]) -> int:
    """Coefficient sum over one conjugacy class of the underlying group."""
    block = tuple(sorted(cls))
    if block not in conjugacy_classes(u.group):
        raise BadClassError(f"{block} is not a conjugacy class of the group")
    return sum(u.coeffs.get(g, 0) for g in block)


def additive_commutator(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    """xy - yx."""
    x._check_group(y)
    return x * y - y * x


def in_commutator_span(u: GroupRingElement) -> bool:
    """True iff every partial augmentation of u vanishes.

    That condition characterizes the additive span of all xy - yx.
    """
    return all(
        partial_augmentation(u, cls) == 0 for cls in conjugacy_classes(u.group)
    )


# ---------------------------------------------------------------------------
# units


def try_invert(u: GroupRingElement) -> Optional[GroupRingElement]:
    """Two-sided inverse of u in ZG, or None when u is not a unit.

    Trivial units (a signed group element) invert directly; everything else
    solves the regular representation over the rationals and keeps the
    result only when it is integral and a genuine two-sided inverse.
    """
    group = u.group
    if len(u.coeffs) == 1:
        ((g, c),) = u.coeffs.items()
        if c in (1, -1):
            return GroupRingElement(group, {group.inverse[g]: c})
        return None
    if not u.coeffs:
        return None
    if augmentation(u) not in (1, -1):
        return None
    n = group.order
    table = group.table
    # column h of the matrix is the coefficient vector of u * h
    mat = [[Fraction(0)] * n for _ in range(n)]
    for g, c in u.coeffs.items():
        row = table[g]
        for h in range(n):
            mat[row[h]][h] += c
    rhs = [Fraction(1) if k == 0 else Fraction(0) for k in range(n)]
    sol = _solve_exact(mat, rhs)
    if sol is None:
        return None
    coeffs = {}
    for h, val in enumerate(sol):
        if val.denominator != 1:
            return None
        if val != 0:
            coeffs[h] = int(val)
    v = GroupRingElement(group, coeffs)
    one = GroupRingElement.one(group)
    if u * v == one and v * u == one:
        return v
    return None


def _solve_exact(mat, rhs):
    """Gaussian elimination over Fractions; None when the system is singular."""
    n = len(mat)
    m = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def is_unit(u: GroupRingElement) -> bool:
    return try_invert(u) is not None


def conjugate_by_unit(u: GroupRingElement, uinv: GroupRingElement, x: int) -> GroupRingElement:
    """u^-1 * x * u as a group ring element."""
    return uinv * GroupRingElement.basis(u.group, x) * u


def normalizes(u: GroupRingElement, sub: Subgroup) -> bool:
    """True iff u is a unit and u^-1 h u is a basis element of the subgroup
    for every h in the subgroup."""
    uinv = try_invert(u)
    if uinv is None:
        raise NotAUnitError("element is not a unit of ZG")
    for h in sub.elements:
        w = conjugate_by_unit(u, uinv, h)
        if len(w.coeffs) != 1:
            return False
        ((g, c),) = w.coeffs.items()
        if c != 1 or g not in sub:
            return False
    return True


def centralizes(u: GroupRingElement, sub: Subgroup) -> bool:
    """True iff u is a unit commuting with every element of the subgroup."""
    uinv = try_invert(u)
    if uinv is None:
        raise NotAUnitError("element is not a unit of ZG")
    for h in sub.elements:
        if conjugate_by_unit(u, uinv, h) != GroupRingElement.basis(u.group, h):
            return False
    return True


def unit_conjugation_images(u: GroupRingElement, sub: Subgroup) -> list[int]:
    """Images of the subgroup elements under conjugation by the unit u.

    Requires that u normalizes the subgroup; raises otherwise.
    """
    uinv = try_invert(u)
    if uinv is None:
        raise NotAUnitError("element is not a unit of ZG")
    images = []
    for h in sub.elements:
        w = conjugate_by_unit(u, uinv, h)
        if len(w.coeffs) != 1:
            raise NotNormalizingError("unit does not normalize the subgroup")
        ((g, c),) = w.coeffs.items()
        if c != 1 or g not in sub:
            raise NotNormalizingError("unit does not normalize the subgroup")
        images.append(g)
    return images


# ---------------------------------------------------------------------------
# support action and Coleman-style decomposition


def coleman_support_action(u: GroupRingElement, sub: Subgroup):
    """The right action (x, h) -> h^-1 x h^u of the subgroup on supp(u).

    Requires u to be a unit normalizing the subgroup.  Returns the action
    table as a dict keyed on (support element, subgroup element) and the
    kernel of the action as a subgroup.  The coefficients of u are checked
    to be constant on the action's orbits.
    """
    group = u.group
    images = unit_conjugation_images(u, sub)  # h^u per subgroup element
    hu = dict(zip(sub.elements, images))
    supp = u.support()
    supp_set = set(supp)
    table = {}
    for x in supp:
        for h in sub.elements:
            y = group.mul(group.mul(group.inverse[h], x), hu[h])
            if y not in supp_set:
                raise NotNormalizingError(
                    "support is not invariant; element does not normalize"
                )
            table[(x, h)] = y
    for (x, h), y in table.items():
        if u.coeffs[x] != u.coeffs[y]:
            raise NotNormalizingError("coefficients are not constant on orbits")
    kernel_elems = tuple(
        h for h in sub.elements if all(table[(x, h)] == x for x in supp)
    )
    kernel = Subgroup(group, kernel_elems)
    if not is_normal_in(sub, kernel):
        raise RuntimeError("action kernel is not normal in the acting subgroup")
    return table, kernel


def is_normal_in(outer: Subgroup, inner: Subgroup) -> bool:
    group = outer.parent
    return all(
        group.conj(x, g) in inner for g in outer.elements for x in inner.elements
    )


def coleman_decompose(u: GroupRingElement, sub: Subgroup, p: int):
    """Split a normalizing unit along a prime: returns (P, x) where P <= H
    has index coprime to p, x lies in supp(u) and normalizes P, and x^-1 u
    centralizes P.

    Follows the support-action construction: P is the preimage in H of a
    Sylow p-subgroup of H modulo the action kernel, and x is a fixed point
    of the induced P-action on the support.
    """
    group = u.group
    action, kernel = coleman_support_action(u, sub)
    hgrp, hmap = subgroup_as_group(sub)
    local = {x: i for i, x in enumerate(hmap)}
    kernel_local = Subgroup(hgrp, tuple(sorted(local[x] for x in kernel.elements)))
    quot, phi = quotient(hgrp, kernel_local)
    syl = sylow_subgroup(quot, p)
    p_elems = tuple(
        sorted(hmap[i] for i in range(hgrp.order) if phi[i] in syl)
    )
    big_p = Subgroup(group, p_elems)
    index = sub.order // big_p.order
    if index % p == 0:
        raise RuntimeError("constructed subgroup has index divisible by p")
    supp = u.support()
    fixed = [
        x for x in supp if all(action[(x, h)] == x for h in big_p.elements)
    ]
    if not fixed:
        raise NoFixedPointError(
            f"support action of the {p}-part has no fixed point"
        )
    uinv = try_invert(u)
    for x in fixed:
        if not all(group.conj(h, x) in big_p for h in big_p.elements):
            continue
        rest = GroupRingElement.basis(group, group.inverse[x]) * u
        restinv = uinv * GroupRingElement.basis(group, x)
        if all(
            restinv * GroupRingElement.basis(group, h) * rest
            == GroupRingElement.basis(group, h)
            for h in big_p.elements
        ):
            return big_p, x
    raise NoFixedPointError(
        "no fixed point normalizes P with x^-1 u centralizing it"
    )


# ---------------------------------------------------------------------------
# textual element format


_TERM_RE = re.compile(r"^\s*(-?\d+)\s*\*\s*(.+?)\s*$")


def format_element(u: GroupRingElement) -> str:
    """Canonical text form: integer coefficient, '*', element name, joined
    by ' + ' / ' - ', e.g. ``2*(0 1 2) - 1*id``."""
    if not u.coeffs:
        return "0"
    parts = []
    for g in sorted(u.coeffs):
        c = u.coeffs[g]
        name = u.group.names[g]
        if not parts:
            parts.append(f"{c}*{name}")
        elif c < 0:
            parts.append(f"- {-c}*{name}")
        else:
            parts.append(f"+ {c}*{name}")
    return " ".join(parts)


def parse_element(group: FiniteGroup, text: str) -> GroupRingElement:
    """Parse the textual element format back into a group ring element."""
    text = text.strip()
    if text == "0" or not text:
        return GroupRingElement.zero(group)
    terms = _split_terms(text)
    coeffs: dict[int, int] = {}
    for sign, term in terms:
        m = _TERM_RE.match(term)
        if m:
            coeff = int(m.group(1))
            name = m.group(2)
        else:
            coeff = 1
            name = term.strip()
        try:
            g = group.index_of_name(name)
        except KeyError:
            raise SpecParseError(f"unknown element name {name!r}") from None
        coeffs[g] = coeffs.get(g, 0) + sign * coeff
    return GroupRingElement(group, coeffs)


def _split_terms(text: str):
    """Split on top-level + and - (outside parentheses), keeping signs."""
    terms = []
    depth = 0
    current = []
    sign = 1
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecParseError("unbalanced parentheses", position=i)
        if depth == 0 and ch in "+-" and current and current[-1] != "*":
            stripped = "".join(current).strip()
            if stripped:
                terms.append((sign, stripped))
                current = []
                sign = 1 if ch == "+" else -1
                continue
        if depth == 0 and ch in "+-" and not "".join(current).strip():
            # leading sign
            sign = 1 if ch == "+" else -1
            current = []
            continue
        current.append(ch)
    if depth != 0:
        raise SpecParseError("unbalanced parentheses")
    stripped = "".join(current).strip()
    if stripped:
        terms.append((sign, stripped))
    return terms
