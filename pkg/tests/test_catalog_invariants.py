"""Catalog-wide structural invariants at the scopes the design calls for."""

import warnings
from math import gcd

import pytest

from normprop.catalog import load_catalog
from normprop.certify import CriterionId, certify_np
from normprop.groups import closure, element_order, is_normal, subgroup_from
from normprop.structure import (
    H1Result,
    all_subgroups,
    h1_trivial,
    is_abelian_subgroup,
    is_cyclic_subgroup,
    p_part,
    prime_factors,
    sylow_subgroup,
)

from test_structure import lower_central_series_nilpotent, oracle_subgroups


@pytest.fixture(scope="module")
def catalog():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return load_catalog(check_duplicates=False)


def groups_up_to(catalog, bound):
    return [(e.name, e.group()) for e in catalog if e.order <= bound]


def test_all_subgroups_oracle_on_all_groups_up_to_16(catalog):
    for name, g in groups_up_to(catalog, 16):
        mine = {s.elements for s in all_subgroups(g)}
        assert mine == oracle_subgroups(g), name


def test_sylow_orders_exact_p_part_whole_catalog(catalog):
    for e in catalog:
        g = e.group()
        for p in prime_factors(g.order):
            assert sylow_subgroup(g, p).order == p_part(g.order, p), e.name


def test_nilpotency_matches_lower_central_series_up_to_24(catalog):
    from normprop.structure import is_nilpotent

    for name, g in groups_up_to(catalog, 24):
        assert is_nilpotent(g) == lower_central_series_nilpotent(g), name


def test_nilpotent_iff_product_of_sylows_up_to_24(catalog):
    from normprop.structure import is_nilpotent, sylow_system

    for name, g in groups_up_to(catalog, 24):
        system = sylow_system(g)
        product_order = 1
        union = set()
        for syl in system.values():
            product_order *= syl.order
            union |= set(syl.elements)
        is_product = (
            all(is_normal(g, syl) for syl in system.values())
            and product_order == g.order
            and len(closure(g, union)) == g.order
        )
        assert is_nilpotent(g) == is_product, name


def test_h1_coprime_agrees_with_enumeration_up_to_12(catalog):
    from normprop.structure import _propagate_cocycle
    from normprop.groups import subgroup_generators

    checked = 0
    for name, g in groups_up_to(catalog, 12):
        subs = all_subgroups(g)
        for n_sub in subs:
            if n_sub.order == 1 or not is_abelian_subgroup(n_sub):
                continue
            for w_sub in subs:
                if w_sub.order == 1 or gcd(w_sub.order, n_sub.order) != 1:
                    continue
                if any(
                    g.conj(x, w) not in n_sub
                    for w in w_sub.elements
                    for x in n_sub.elements
                ):
                    continue
                assert h1_trivial(w_sub, n_sub) == H1Result.TRUE_COPRIME
                gens = subgroup_generators(w_sub)
                cocycles = set()
                images = [n_sub.elements] * len(gens)

                def rec(i, chosen):
                    if i == len(gens):
                        f = _propagate_cocycle(
                            g, w_sub.elements, gens, tuple(chosen), n_sub
                        )
                        if f is not None:
                            cocycles.add(tuple(f[x] for x in w_sub.elements))
                        return
                    for img in images[i]:
                        rec(i + 1, chosen + [img])

                rec(0, [])
                coboundaries = {
                    tuple(
                        g.mul(g.inverse[a], g.conj(a, x)) for x in w_sub.elements
                    )
                    for a in n_sub.elements
                }
                assert cocycles <= coboundaries, name
                checked += 1
    assert checked >= 40


def test_class_bound_fires_for_cyclic_subgroups_up_to_24(catalog):
    skip = frozenset(
        {
            CriterionId.CYCLIC,
            CriterionId.P_GROUP,
            CriterionId.OUT_TRIVIAL,
            CriterionId.TWO_GEN,
        }
    )
    for name, g in groups_up_to(catalog, 24):
        for sub in all_subgroups(g):
            if not is_cyclic_subgroup(sub):
                continue
            cert = certify_np(g, sub, skip=skip)
            assert cert.holds(), name
            assert cert.criterion == CriterionId.CLASS_BOUND, name
