"""Acceptance suite: the nine headline criteria, one test each.

Each test prints a single ``ACCEPTANCE n: PASS`` line on success (visible
with ``pytest -s`` or in the captured output section); a failing
criterion fails its test outright.
"""

import itertools
import time
import warnings

import pytest

from normprop.catalog import build_group_spec, load_catalog
from normprop.certify import (
    Budget,
    CriterionId,
    certify_np,
    certify_snp,
    verify_catalog,
)
from normprop.automorphisms import (
    automorphism_group,
    aut_g,
    class_preserving_bound,
    inner_automorphisms,
)
from normprop.groupring import (
    GroupRingElement,
    additive_commutator,
    coleman_decompose,
    in_commutator_span,
    unit_conjugation_images,
)
from normprop.groups import Subgroup, normalizer, subgroup_as_group
from normprop.structure import (
    MetacyclicCase,
    all_subgroups,
    direct_factorization,
    metacyclic_witness,
    prime_factors,
)
from normprop.verify import recheck_snp

from test_groupring import commutator_lattice, lattice_member

PRIME_POWER_ORDERS = {
    2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47,
}
SQUARE_FREE_COPRIME_ORDERS = [6, 10, 14, 21, 22, 26, 33, 34, 38, 39, 42, 46]


def _square_free(n):
    for p in prime_factors(n):
        if n % (p * p) == 0:
            return False
    return True


@pytest.fixture(scope="module")
def catalog():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return load_catalog(check_duplicates=False)


def test_acceptance_1_headline_catalog_run(capsys):
    """Order <= 47 sweep: zero undecided, timed, and fully re-verified."""
    from normprop.cli import main as cli_main

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        exit_code = cli_main(["verify", "--max-order", "47"])
    out = capsys.readouterr().out
    assert exit_code == 0
    assert sum(1 for line in out.splitlines() if "\tHOLDS\t" in line) == 198

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        t_single = time.perf_counter()
        entries = load_catalog(check_duplicates=True)
        report = verify_catalog(entries, 47, jobs=1)
        t_single = time.perf_counter() - t_single
    assert len(report.rows) == 198
    assert report.undecided == []
    assert t_single < 600, f"single-threaded run took {t_single:.1f}s"

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        t_par = time.perf_counter()
        entries_par = load_catalog(check_duplicates=True, jobs=8)
        report_par = verify_catalog(entries_par, 47, jobs=8)
        t_par = time.perf_counter() - t_par
    assert report_par.undecided == []
    assert [r.criterion for r in report_par.rows] == [
        r.criterion for r in report.rows
    ]
    assert t_par < 120, f"8-job run took {t_par:.1f}s"

    # every HOLDS certificate passes the independent witness re-verifier
    rechecked = 0
    for entry in entries:
        group = entry.group()
        cert = certify_snp(group, label=entry.name)
        assert cert.holds(), entry.name
        ok, reason = recheck_snp(group, cert)
        assert ok, f"{entry.name}: {reason}"
        rechecked += 1
    assert rechecked == 198
    print(
        f"\nACCEPTANCE 1: PASS - 198 groups, 0 undecided, all re-verified "
        f"(single {t_single:.1f}s, 8 jobs {t_par:.1f}s)"
    )


def test_acceptance_2_dihedral_family():
    """SNP holds for every dihedral group with 1 <= n <= 24, each under 1s."""
    worst = 0.0
    for n in range(1, 25):
        group = build_group_spec(f"dihedral:{n}")
        t0 = time.perf_counter()
        cert = certify_snp(group, label=f"dihedral:{n}")
        elapsed = time.perf_counter() - t0
        worst = max(worst, elapsed)
        assert cert.holds(), f"dihedral:{n}"
        assert elapsed < 1.0, f"dihedral:{n} took {elapsed:.2f}s"
    print(f"\nACCEPTANCE 2: PASS - dihedral n=1..24 all HOLD (worst {worst:.3f}s)")


def test_acceptance_3_square_free_sylow_cyclic(catalog):
    """Square-free orders certify via cyclic Sylow subgroups; the listed
    nonabelian orders admit a coprime metacyclic witness."""
    checked = 0
    for entry in catalog:
        if not _square_free(entry.order):
            continue
        group = entry.group()
        cert = certify_snp(
            group, skip=frozenset({CriterionId.NILPOTENT}), label=entry.name
        )
        assert cert.holds(), entry.name
        assert cert.criterion == CriterionId.SYLOW_CYCLIC, entry.name
        checked += 1
    nonabelian_hits = 0
    for order in SQUARE_FREE_COPRIME_ORDERS:
        groups = [e.group() for e in catalog if e.order == order]
        nonabelian = [g for g in groups if not g.is_abelian()]
        if order == 33:
            # 3 does not divide 11 - 1, so order 33 has no nonabelian group
            assert nonabelian == []
            continue
        assert nonabelian, f"expected a nonabelian group of order {order}"
        for group in nonabelian:
            witness = metacyclic_witness(group)
            assert witness is not None
            assert witness[1] == MetacyclicCase.COPRIME
            nonabelian_hits += 1
    print(
        f"\nACCEPTANCE 3: PASS - {checked} square-free groups via SYLOW_CYCLIC, "
        f"{nonabelian_hits} nonabelian coprime witnesses"
    )


def test_acceptance_4_prime_power_nilpotent(catalog):
    """Every prime-power-order catalog group certifies via NILPOTENT."""
    checked = 0
    for entry in catalog:
        if entry.order == 1 or entry.order not in PRIME_POWER_ORDERS:
            continue
        cert = certify_snp(entry.group(), label=entry.name)
        assert cert.holds() and cert.criterion == CriterionId.NILPOTENT, entry.name
        checked += 1
    assert checked == 96  # groups of the 22 prime-power orders up to 47
    print(f"\nACCEPTANCE 4: PASS - {checked} prime-power groups via NILPOTENT")


def test_acceptance_5_trivial_units_in_class_bound(catalog):
    """Conjugation by any trivial unit normalizing H stays inside the
    class-preserving bound, over every subgroup of every group of order
    at most 16."""
    violations = 0
    checked = 0
    for entry in catalog:
        if entry.order > 16:
            continue
        group = entry.group()
        for sub in all_subgroups(group):
            bound = class_preserving_bound(group, sub)
            assert bound is not None
            bound_images = {m.images for m in bound}
            for g in normalizer(group, sub).elements:
                for sign in (1, -1):
                    u = GroupRingElement.basis(group, g, sign)
                    images = tuple(unit_conjugation_images(u, sub))
                    checked += 1
                    if images not in bound_images:
                        violations += 1
    assert violations == 0
    print(f"\nACCEPTANCE 5: PASS - {checked} trivial-unit conjugations inside the bound")


def test_acceptance_6_commutator_span_characterization():
    """On Sym(3) and D4: vanishing partial augmentations coincide exactly
    with membership in the integer span of basis additive commutators."""
    total = 0
    for spec in ("symmetric:3", "dihedral:4"):
        group = build_group_spec(spec)
        n = group.order
        basis = commutator_lattice(group)
        for size in range(0, 5):
            for support in itertools.combinations(range(n), size):
                for values in itertools.product((-2, -1, 1, 2), repeat=size):
                    u = GroupRingElement(group, dict(zip(support, values)))
                    vec = [u.coeffs.get(k, 0) for k in range(n)]
                    assert in_commutator_span(u) == lattice_member(basis, vec, n)
                    total += 1
    print(f"\nACCEPTANCE 6: PASS - {total} elements, exact agreement with the lattice oracle")


def test_acceptance_7_coleman_decomposition(catalog):
    """Support-action decomposition postconditions hold for every trivial
    unit normalizing every subgroup of every group of order at most 16,
    for every prime dividing the subgroup order."""
    checked = 0
    for entry in catalog:
        if entry.order > 16:
            continue
        group = entry.group()
        one = GroupRingElement.one(group)
        for sub in all_subgroups(group):
            primes = prime_factors(sub.order)
            norm_elems = normalizer(group, sub).elements
            for g in norm_elems:
                for sign in (1, -1):
                    u = GroupRingElement.basis(group, g, sign)
                    for p in primes:
                        p_sub, x = coleman_decompose(u, sub, p)
                        index = sub.order // p_sub.order
                        assert index % p != 0
                        assert x in u.support()
                        assert all(
                            group.conj(h, x) in p_sub for h in p_sub.elements
                        )
                        rest = GroupRingElement.basis(group, group.inverse[x]) * u
                        for h in p_sub.elements:
                            basis_h = GroupRingElement.basis(group, h)
                            assert rest * basis_h == basis_h * rest
                        checked += 1
    assert checked > 1000
    print(f"\nACCEPTANCE 7: PASS - {checked} decompositions verified by multiplication")


def test_acceptance_8_direct_product_equivalence(catalog):
    """For decomposable catalog groups of order at most 24, the forced
    direct-product route and the route with factorization disabled agree."""
    force_dp = frozenset(
        {
            CriterionId.NILPOTENT,
            CriterionId.SYLOW_CYCLIC,
            CriterionId.DIHEDRAL,
            CriterionId.METACYCLIC_COPRIME,
            CriterionId.METACYCLIC_N_PRIME,
            CriterionId.METACYCLIC_M_PRIME,
            CriterionId.ABELIAN_IDX2,
        }
    )
    no_dp = frozenset({CriterionId.DIRECT_PRODUCT})
    checked = 0
    for entry in catalog:
        if entry.order > 24:
            continue
        group = entry.group()
        if direct_factorization(group) is None:
            continue
        via_dp = certify_snp(group, skip=force_dp, label=entry.name)
        assert via_dp.holds(), entry.name
        assert via_dp.criterion == CriterionId.DIRECT_PRODUCT, entry.name
        without_dp = certify_snp(group, skip=no_dp, label=entry.name)
        assert without_dp.holds(), entry.name
        checked += 1
    assert checked >= 20
    print(f"\nACCEPTANCE 8: PASS - both routes HOLD on {checked} decomposable groups")


def test_acceptance_9_chain_containment(catalog):
    """Inn(H) <= Aut_G(H) <= class-preserving bound <= Aut(H) for every
    subgroup of every catalog group of order at most 24."""
    checked = 0
    skipped = 0
    for entry in catalog:
        if entry.order > 24:
            continue
        group = entry.group()
        for sub in all_subgroups(group):
            full = automorphism_group(sub)
            if full is None:
                skipped += 1
                continue
            inner = {m.images for m in inner_automorphisms(sub)}
            induced = {m.images for m, _ in aut_g(group, sub)}
            bound = class_preserving_bound(group, sub)
            assert bound is not None
            bound_images = {m.images for m in bound}
            full_images = {m.images for m in full}
            assert inner <= induced <= bound_images <= full_images, entry.name
            checked += 1
    assert skipped == 0
    print(f"\nACCEPTANCE 9: PASS - containment chain verified on {checked} subgroups")
