"""Integral group ring arithmetic, units, and the support-action machinery."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normprop import (
    BadClassError,
    GroupMismatchError,
    NotAUnitError,
    conjugacy_classes,
    from_generators,
    parse_cycles,
    subgroup_from,
    whole_subgroup,
)
from normprop.groupring import (
    GroupRingElement,
    additive_commutator,
    augmentation,
    centralizes,
    coleman_decompose,
    coleman_support_action,
    format_element,
    in_commutator_span,
    multiply,
    normalizes,
    parse_element,
    partial_augmentation,
    try_invert,
)
from normprop.groups import element_order, normalizer

from conftest import build_c6, build_cn, build_d4, build_dihedral, build_q8, build_s3


def elem(group, pairs):
    return GroupRingElement(group, dict(pairs))


def test_unit_multiplication_identity():
    g = build_s3()
    u = elem(g, [(1, 2), (3, -1)])
    assert u * GroupRingElement.one(g) == u
    assert GroupRingElement.one(g) * u == u


def test_basis_inverse_product():
    g = build_s3()
    for x in g.elements():
        u = GroupRingElement.basis(g, x)
        v = GroupRingElement.basis(g, g.inverse[x])
        assert u * v == GroupRingElement.one(g)


def test_zero_divisor_from_involution():
    g = build_cn(2)
    one = GroupRingElement.one(g)
    a = GroupRingElement.basis(g, 1)
    assert (one + a) * (one - a) == GroupRingElement.zero(g)


def test_group_mismatch():
    with pytest.raises(GroupMismatchError):
        GroupRingElement.one(build_s3()) * GroupRingElement.one(build_c6())


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_ring_axioms_random(data):
    group = build_s3()
    n = group.order
    coeff = st.lists(st.integers(-3, 3), min_size=n, max_size=n)

    def mk():
        return GroupRingElement(group, dict(enumerate(data.draw(coeff))))

    u, v, w = mk(), mk(), mk()
    assert (u + v) + w == u + (v + w)
    assert u + v == v + u
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w
    assert (u + v) * w == u * w + v * w
    assert u + (-u) == GroupRingElement.zero(group)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_augmentation_is_ring_hom(data):
    group = build_q8()
    n = group.order
    coeff = st.lists(st.integers(-3, 3), min_size=n, max_size=n)
    u = GroupRingElement(group, dict(enumerate(data.draw(coeff))))
    v = GroupRingElement(group, dict(enumerate(data.draw(coeff))))
    assert augmentation(u * v) == augmentation(u) * augmentation(v)
    assert augmentation(u + v) == augmentation(u) + augmentation(v)
    total = sum(partial_augmentation(u, c) for c in conjugacy_classes(group))
    assert total == augmentation(u)


def test_augmentation_examples():
    g = build_s3()
    assert augmentation(GroupRingElement.basis(g, 3)) == 1
    assert augmentation(elem(g, [(1, 2), (2, -3)])) == -1


def test_partial_augmentation_examples():
    g = build_s3()
    x = 1
    cls = conjugacy_classes(g)
    u = GroupRingElement.basis(g, x)
    for c in cls:
        expected = 1 if x in c else 0
        assert partial_augmentation(u, c) == expected
    # x - x^h has every partial augmentation zero
    h = 2
    v = GroupRingElement.basis(g, x) - GroupRingElement.basis(g, g.conj(x, h))
    assert all(partial_augmentation(v, c) == 0 for c in cls)
    # conjugate elements accumulate on one class
    a = next(i for i in g.elements() if element_order(g, i) == 2)
    b = next(
        i
        for i in g.elements()
        if element_order(g, i) == 2 and i != a
    )
    w = elem(g, [(a, 2), (b, 3)])
    cls_a = next(c for c in cls if a in c)
    assert partial_augmentation(w, cls_a) == 5


def test_partial_augmentation_bad_class():
    g = build_s3()
    with pytest.raises(BadClassError):
        partial_augmentation(GroupRingElement.one(g), (0, 1))


def test_additive_commutator_properties():
    g = build_s3()
    x = elem(g, [(1, 1), (2, -2)])
    assert additive_commutator(x, x).is_zero()
    # commuting elements
    a = GroupRingElement.basis(g, 1)
    powers = elem(g, [(0, 1), (1, 1)])
    assert additive_commutator(a, powers).is_zero()
    # noncommuting basis elements give a two-term support
    t = next(i for i in g.elements() if element_order(g, i) == 2)
    c = next(i for i in g.elements() if element_order(g, i) == 3)
    comm = additive_commutator(
        GroupRingElement.basis(g, c), GroupRingElement.basis(g, t)
    )
    assert len(comm.support()) == 2


def test_commutator_identity_from_conjugation():
    # [u^-1 x, u] = x^u - x for a trivial unit u
    g = build_s3()
    for u_elem in g.elements():
        u = GroupRingElement.basis(g, u_elem)
        uinv = GroupRingElement.basis(g, g.inverse[u_elem])
        for x in g.elements():
            lhs = additive_commutator(uinv * GroupRingElement.basis(g, x), u)
            rhs = GroupRingElement.basis(g, g.conj(x, u_elem)) - GroupRingElement.basis(g, x)
            assert lhs == rhs


def test_in_commutator_span_examples():
    g = build_s3()
    assert in_commutator_span(GroupRingElement.zero(g))
    assert not in_commutator_span(GroupRingElement.basis(g, 2))
    x = elem(g, [(1, 2), (4, -1)])
    y = elem(g, [(0, 1), (3, 3)])
    assert in_commutator_span(additive_commutator(x, y))


# ---------------------------------------------------------------------------
# integer lattice oracle for the commutator span


def hermite_basis(columns, n):
    """Triangular integer basis (pivot row -> vector) of the column lattice."""
    basis = {}

    def first_nonzero(v):
        return next((i for i in range(n) if v[i] != 0), None)

    for col in columns:
        v = list(col)
        while True:
            r = first_nonzero(v)
            if r is None:
                break
            b = basis.get(r)
            if b is None:
                if v[r] < 0:
                    v = [-x for x in v]
                basis[r] = v
                break
            # gcd-combine so the stored pivot divides both entries
            import math

            g = math.gcd(b[r], v[r])
            x0, y0 = _bezout(b[r], v[r])
            combined = [x0 * bb + y0 * vv for bb, vv in zip(b, v)]
            reduced = [
                (b[r] // g) * vv - (v[r] // g) * bb for bb, vv in zip(b, v)
            ]
            basis[r] = combined
            v = reduced
    return basis


def _bezout(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def lattice_member(basis, vec, n):
    v = list(vec)
    while True:
        r = next((i for i in range(n) if v[i] != 0), None)
        if r is None:
            return True
        b = basis.get(r)
        if b is None or v[r] % b[r] != 0:
            return False
        q = v[r] // b[r]
        for i in range(n):
            v[i] -= q * b[i]


def commutator_lattice(group):
    n = group.order
    cols = []
    for g in group.elements():
        for h in group.elements():
            u = additive_commutator(
                GroupRingElement.basis(group, g), GroupRingElement.basis(group, h)
            )
            col = [0] * n
            for k, c in u.coeffs.items():
                col[k] = c
            cols.append(col)
    return hermite_basis(cols, n)


@pytest.mark.parametrize("builder", [build_s3, build_d4])
def test_commutator_span_matches_lattice_oracle(builder):
    group = builder()
    n = group.order
    basis = commutator_lattice(group)
    coeffs = [-2, -1, 1, 2]
    checked = 0
    for size in range(0, 3):
        for support in itertools.combinations(range(n), size):
            for values in itertools.product(coeffs, repeat=size):
                u = GroupRingElement(group, dict(zip(support, values)))
                vec = [u.coeffs.get(k, 0) for k in range(n)]
                claimed = in_commutator_span(u)
                oracle = lattice_member(basis, vec, n)
                assert claimed == oracle
                checked += 1
    assert checked > 100


def test_try_invert_trivial_units():
    g = build_s3()
    for x in g.elements():
        u = GroupRingElement.basis(g, x, -1)
        v = try_invert(u)
        assert v == GroupRingElement.basis(g, g.inverse[x], -1)


def test_try_invert_augmentation_obstruction():
    g = build_cn(3)
    u = elem(g, [(0, 1), (1, 1), (2, 1)])
    assert try_invert(u) is None


def test_try_invert_product_of_trivial_units():
    g = build_s3()
    u = GroupRingElement.basis(g, 1) * GroupRingElement.basis(g, 2, -1)
    v = try_invert(u)
    prod = g.mul(1, 2)
    assert v == GroupRingElement.basis(g, g.inverse[prod], -1)


def golden_unit(group, a):
    """-1 + a + a^-1 for an element a of order 5; a genuine unit of ZG."""
    return GroupRingElement(
        group, {0: -1, a: 1, group.inverse[a]: 1}
    )


def test_try_invert_nontrivial_unit_order5():
    g = build_cn(5)
    u = golden_unit(g, 1)
    v = try_invert(u)
    assert v is not None
    assert u * v == GroupRingElement.one(g)
    assert v * u == GroupRingElement.one(g)


def test_normalizes_and_centralizes():
    g = build_s3()
    c3 = next(x for x in g.elements() if element_order(g, x) == 3)
    h = subgroup_from(g, [c3])
    t = next(x for x in g.elements() if element_order(g, x) == 2)
    assert normalizes(GroupRingElement.basis(g, t), h)
    assert not centralizes(GroupRingElement.basis(g, t), h)
    assert centralizes(GroupRingElement.basis(g, c3), h)
    # an element outside the normalizer
    tsub = subgroup_from(g, [t])
    mover = next(
        x for x in g.elements() if x not in normalizer(g, tsub)
    )
    assert not normalizes(GroupRingElement.basis(g, mover), tsub)


def test_normalizes_rejects_non_units():
    g = build_s3()
    with pytest.raises(NotAUnitError):
        normalizes(elem(g, [(0, 2)]), whole_subgroup(g))


def test_central_unit_normalizes_everything_in_d5():
    d5 = build_dihedral(5)
    a = next(x for x in d5.elements() if element_order(d5, x) == 5)
    u = golden_unit(d5, a)
    assert try_invert(u) is not None
    for gen in d5.elements():
        h = subgroup_from(d5, [gen])
        assert normalizes(u, h)
        assert centralizes(u, h)


def test_support_action_rejects_non_normalizing_unit():
    from normprop import NotNormalizingError

    g = build_s3()
    t = next(x for x in g.elements() if element_order(g, x) == 2)
    h = subgroup_from(g, [t])
    mover = next(x for x in g.elements() if x not in normalizer(g, h))
    with pytest.raises(NotNormalizingError):
        coleman_support_action(GroupRingElement.basis(g, mover), h)


def test_support_action_trivial_unit():
    g = build_s3()
    h = whole_subgroup(g)
    u = GroupRingElement.basis(g, 2)
    table, kernel = coleman_support_action(u, h)
    assert set(table.values()) == {2}
    assert kernel.order == g.order


def test_support_action_identity():
    g = build_s3()
    u = GroupRingElement.one(g)
    table, kernel = coleman_support_action(u, whole_subgroup(g))
    assert kernel.order == g.order


def test_support_action_golden_unit_in_d5():
    d5 = build_dihedral(5)
    a = next(x for x in d5.elements() if element_order(d5, x) == 5)
    u = golden_unit(d5, a)
    t = next(x for x in d5.elements() if element_order(d5, x) == 2)
    h = subgroup_from(d5, [t])
    table, kernel = coleman_support_action(u, h)
    # the reflection swaps a and a^-1 and fixes the identity
    assert table[(a, t)] == d5.inverse[a]
    assert table[(0, t)] == 0
    assert kernel.order == 1


def test_coleman_decompose_trivial_units():
    g = build_s3()
    t = next(x for x in g.elements() if element_order(g, x) == 2)
    h = subgroup_from(g, [t])
    for sign in (1, -1):
        for gelem in normalizer(g, h).elements:
            u = GroupRingElement.basis(g, gelem, sign)
            p_sub, x = coleman_decompose(u, h, 2)
            assert p_sub.order == h.order
            assert x == gelem


def test_coleman_decompose_golden_unit():
    d5 = build_dihedral(5)
    a = next(x for x in d5.elements() if element_order(d5, x) == 5)
    u = golden_unit(d5, a)
    t = next(x for x in d5.elements() if element_order(d5, x) == 2)
    h = subgroup_from(d5, [t])
    p_sub, x = coleman_decompose(u, h, 2)
    assert p_sub.order % 2 == 0 or h.order % 2 != 0
    assert (h.order // p_sub.order) % 2 != 0
    assert x in u.support()
    # verify the centralizing condition by direct multiplication
    xinvu = GroupRingElement.basis(d5, d5.inverse[x]) * u
    for helem in p_sub.elements:
        lhs = xinvu * GroupRingElement.basis(d5, helem)
        rhs = GroupRingElement.basis(d5, helem) * xinvu
        assert lhs == rhs


def test_element_text_roundtrip():
    g = from_generators([parse_cycles("(0 1 2)"), parse_cycles("(0 1)")])
    u = elem(g, [(0, -1), (1, 2), (5, 1)])
    text = format_element(u)
    assert parse_element(g, text) == u
    assert format_element(parse_element(g, text)) == text


def test_element_text_example_shape():
    g = from_generators([parse_cycles("(0 1 2)"), parse_cycles("(0 1)")])
    idx = g.index_of_name("(0 1 2)")
    u = elem(g, [(idx, 2), (0, -1)])
    text = format_element(u)
    assert "2*(0 1 2)" in text and "1*id" in text
    assert parse_element(g, "2*(0 1 2) - 1*id") == u


def test_parse_element_zero_and_errors():
    g = build_s3()
    assert parse_element(g, "0").is_zero()
    from normprop import SpecParseError

    with pytest.raises(SpecParseError):
        parse_element(g, "2*nosuch")
