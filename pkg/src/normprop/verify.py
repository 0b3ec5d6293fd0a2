"""Independent re-verification of certificates.

Every HOLDS certificate carries witnesses; this module re-checks them
against the defining predicate of the criterion along a code path that is
deliberately separate from the search that produced them.  Automorphism
sets are re-enumerated here by plain nested products with only an
element-order filter, not the pruned depth-first search the certifier
uses.  A return of (False, reason) means the certificate does not stand
on its own feet.
"""

from __future__ import annotations

import itertools
from math import gcd

from .certify import Certificate, CriterionId
from .groups import (
    FiniteGroup,
    Subgroup,
    class_of,
    closure,
    element_centralizer,
    element_order,
    is_normal,
    subgroup_as_group,
    subgroup_from,
)
from .structure import (
    H1Result,
    all_subgroups,
    h1_trivial,
    is_abelian_subgroup,
    is_prime,
    p_part,
    prime_factors,
)

_BRUTE_AUT_LIMIT = 2 * 10**6


def _brute_automorphisms(group: FiniteGroup, sub: Subgroup):
    """All automorphisms of the subgroup, by exhaustive image assignment.

    Independent of the certifier's search: generators are picked by a
    simple scan, candidates are filtered by element order only, and each
    complete assignment is grown into a map by plain left translation and
    then fully re-checked for multiplicativity.  Returns None when the
    raw candidate space exceeds the brute-force limit.
    """
    elems = sub.elements
    target = set(elems)
    gens: list[int] = []
    reached = {0}
    for g in elems:
        if g not in reached:
            gens.append(g)
            reached = set(closure(group, gens))
        if reached == target:
            break
    if not gens:
        ident = {0: 0}
        return [ident]
    orders = {x: element_order(group, x) for x in elems}
    candidates = [
        [y for y in elems if orders[y] == orders[g]] for g in gens
    ]
    total = 1
    for c in candidates:
        total *= len(c)
        if total > _BRUTE_AUT_LIMIT:
            return None
    found = []
    for images in itertools.product(*candidates):
        if len(set(images)) != len(images):
            continue
        mapping = _grow_map(group, elems, gens, images)
        if mapping is None:
            continue
        if sorted(mapping.values()) != list(elems):
            continue
        ok = all(
            mapping[group.mul(x, y)] == group.mul(mapping[x], mapping[y])
            for x in elems
            for y in elems
        )
        if ok:
            found.append(mapping)
    return found


def _grow_map(group, elems, gens, images):
    mapping = {0: 0}
    frontier = [0]
    gen_img = dict(zip(gens, images))
    while frontier:
        x = frontier.pop()
        for g, img in gen_img.items():
            xg = group.mul(x, g)
            val = group.mul(mapping[x], img)
            if xg in mapping:
                if mapping[xg] != val:
                    return None
            else:
                mapping[xg] = val
                frontier.append(xg)
    if len(mapping) != len(elems):
        return None
    return mapping


def _conjugation_map(group, sub, g):
    return {x: group.conj(x, g) for x in sub.elements}


def _class_preserving(group, sub, mapping) -> bool:
    return all(mapping[x] in class_of(group, x) for x in sub.elements)


def recheck_np(group: FiniteGroup, cert: Certificate):
    """Re-verify a subgroup-level certificate. Returns (ok, reason)."""
    if cert.subgroup == "ALL":
        return False, "subgroup-level certificate without a subgroup target"
    sub = Subgroup(group, tuple(cert.subgroup))
    if cert.verdict != "HOLDS":
        return True, "nothing to verify for UNDECIDED"
    w = cert.witnesses
    crit = cert.criterion

    if crit == CriterionId.CYCLIC:
        g = w.get("generator")
        if g is None or g not in sub:
            return False, "missing or foreign generator witness"
        if closure(group, [g]) != sub.elements:
            return False, "witness does not generate the subgroup"
        return True, "cyclic"

    if crit == CriterionId.P_GROUP:
        p = w.get("prime")
        if not p or not is_prime(p):
            return False, "witness prime missing or composite"
        if p_part(sub.order, p) != sub.order or sub.order == 1:
            return False, "subgroup order is not a power of the witness prime"
        return True, "prime power order"

    if crit == CriterionId.OUT_TRIVIAL:
        auts = _brute_automorphisms(group, sub)
        if auts is None:
            return False, "independent automorphism enumeration over limit"
        if len(auts) != w.get("aut_count"):
            return False, "stored automorphism count is wrong"
        inner = {
            tuple(sorted(_conjugation_map(group, sub, h).items()))
            for h in sub.elements
        }
        for m in auts:
            if tuple(sorted(m.items())) not in inner:
                return False, "an automorphism is not inner"
        return True, "all automorphisms inner"

    if crit == CriterionId.TWO_GEN:
        c, d = w.get("c"), w.get("d")
        if c is None or d is None or c not in sub or d not in sub:
            return False, "generator pair missing"
        if set(closure(group, [c, d])) != set(sub.elements):
            return False, "pair does not generate the subgroup"
        orbit = {group.conj(c, x) for x in element_centralizer(group, d)}
        if orbit != set(class_of(group, c)):
            return False, "centralizer orbit does not cover the class"
        return True, "generating pair with full fused class"

    if crit in (CriterionId.CLASS_BOUND, CriterionId.COLEMAN_BOUND):
        return _recheck_bound(group, sub, cert)

    if crit == CriterionId.NORMAL_COMPLEMENT:
        return _recheck_normal_complement(group, sub, cert)

    return False, f"unknown subgroup criterion {crit}"


def _recheck_bound(group, sub, cert):
    w = cert.witnesses
    stored = {tuple(images): g for images, g in w.get("maps", [])}
    # each stored pair must be a genuine induced automorphism
    for images, g in stored.items():
        if len(images) != sub.order:
            return False, "stored map has the wrong length"
        for x, y in zip(sub.elements, images):
            if group.conj(x, g) != y:
                return False, "stored witness element does not induce the map"
        if any(group.conj(h, g) not in sub for h in sub.elements):
            return False, "stored witness element does not normalize"
    # completeness: independently recompute the class-preserving maps
    auts = _brute_automorphisms(group, sub)
    if auts is None:
        return False, "independent automorphism enumeration over limit"
    relevant = [m for m in auts if _class_preserving(group, sub, m)]
    if cert.criterion == CriterionId.COLEMAN_BOUND:
        sylows = _sylows_of_subgroup(group, sub)
        if sylows is None:
            return False, "subgroup is not nilpotent"
        filtered = []
        for m in relevant:
            if all(
                _piece_induced(group, piece, m) for piece in sylows.values()
            ):
                filtered.append(m)
        relevant = filtered
        stored_sylows = {
            int(p): tuple(v) for p, v in cert.witnesses.get("sylows", {}).items()
        }
        for p, piece in sylows.items():
            if stored_sylows.get(p) != piece.elements:
                return False, "stored Sylow data does not match"
    for m in relevant:
        images = tuple(m[x] for x in sub.elements)
        if images not in stored:
            return False, "a class-preserving automorphism is unaccounted for"
    return True, "bound covered by induced maps"


def _sylows_of_subgroup(group, sub):
    """Sylow pieces of the subgroup when each is its full set of p-elements.

    In a nilpotent subgroup the elements of p-power order form the unique
    Sylow p-subgroup; when the count does not match the p-part the
    subgroup is not nilpotent and None is returned.
    """
    pieces = {}
    for p in prime_factors(sub.order):
        want = p_part(sub.order, p)
        members = tuple(
            sorted(
                x
                for x in sub.elements
                if p_part(element_order(group, x), p) == element_order(group, x)
            )
        )
        if len(members) != want:
            return None
        pieces[p] = Subgroup(group, members)
    return pieces


def _piece_induced(group, piece, mapping):
    for g in group.elements():
        ok = all(group.conj(x, g) == mapping[x] for x in piece.elements)
        if ok:
            return True
    return False


def _recheck_normal_complement(group, sub, cert):
    w = cert.witnesses
    if not is_normal(group, sub):
        return False, "subgroup is not normal in the group"
    n_sub = Subgroup(group, tuple(w["N"]))
    w_sub = Subgroup(group, tuple(w["W"]))
    if not is_abelian_subgroup(n_sub):
        return False, "N is not abelian"
    if not _characteristic_by_route(sub, n_sub, w.get("char_route", "")):
        return False, f"characteristic route {w.get('char_route')!r} fails"
    if n_sub.order * w_sub.order != sub.order:
        return False, "complement orders do not multiply up"
    if set(n_sub.elements) & set(w_sub.elements) != {0}:
        return False, "complement intersects N"
    for g in w_sub.elements:
        if g == 0:
            continue
        if all(group.conj(x, g) == x for x in n_sub.elements):
            return False, "complement does not act faithfully"
    h1 = h1_trivial(w_sub, n_sub)
    if h1 not in (H1Result.TRUE_COPRIME, H1Result.TRUE_ENUM):
        return False, "first cohomology is not verifiably trivial"
    if len(cert.subcertificates) != 1:
        return False, "missing subcertificate for N"
    inner = cert.subcertificates[0]
    if tuple(inner.subgroup) != n_sub.elements or not inner.holds():
        return False, "subcertificate does not certify N"
    return recheck_np(group, inner)


def _characteristic_by_route(sub, n_sub, route):
    group = sub.parent
    hgrp, hmap = subgroup_as_group(sub)
    local = {x: i for i, x in enumerate(hmap)}
    n_local = tuple(sorted(local[x] for x in n_sub.elements))
    if route == "center":
        from .groups import center

        return center(hgrp).elements == n_local
    if route == "derived":
        from .groups import derived_subgroup

        der = derived_subgroup(hgrp)
        return der.elements == n_local and is_abelian_subgroup(der)
    if route == "unique-normal-of-order":
        same_order_normals = [
            s
            for s in all_subgroups(hgrp)
            if s.order == len(n_local) and is_normal(hgrp, s)
        ]
        return len(same_order_normals) == 1 and same_order_normals[0].elements == n_local
    if route == "normal-sylow":
        order = len(n_local)
        primes = prime_factors(order)
        if len(primes) != 1:
            return False
        p = primes[0]
        if p_part(hgrp.order, p) != order:
            return False
        piece = Subgroup(hgrp, n_local)
        return is_normal(hgrp, piece)
    if route == "aut-invariant":
        auts = _brute_automorphisms(hgrp, subgroup_from(hgrp, range(hgrp.order)))
        if auts is None:
            return False
        nset = set(n_local)
        return all({m[x] for x in n_local} == nset for m in auts)
    return False


# ---------------------------------------------------------------------------
# group-level certificates


def recheck_snp(group: FiniteGroup, cert: Certificate):
    """Re-verify a group-level certificate. Returns (ok, reason)."""
    if cert.verdict != "HOLDS":
        return True, "nothing to verify for UNDECIDED"
    w = cert.witnesses
    crit = cert.criterion

    if crit == CriterionId.NILPOTENT:
        sylows = {int(p): tuple(v) for p, v in w.get("sylows", {}).items()}
        if sorted(sylows) != prime_factors(group.order):
            return False, "wrong prime set"
        total = 1
        union = set()
        for p, elems in sylows.items():
            piece = Subgroup(group, elems)
            if p_part(group.order, p) != piece.order:
                return False, "piece is not a full Sylow subgroup"
            if not is_normal(group, piece):
                return False, "a Sylow piece is not normal"
            if union & set(elems) != {0} and union:
                return False, "Sylow pieces overlap"
            union |= set(elems)
            total *= piece.order
        if total != group.order:
            return False, "Sylow piece orders do not multiply to |G|"
        if len(closure(group, union)) != group.order:
            return False, "Sylow pieces do not generate"
        return True, "internal product of normal Sylow subgroups"

    if crit == CriterionId.SYLOW_CYCLIC:
        gens = {int(p): g for p, g in w.get("generators", {}).items()}
        if sorted(gens) != prime_factors(group.order):
            return False, "wrong prime set"
        for p, g in gens.items():
            if element_order(group, g) != p_part(group.order, p):
                return False, "generator does not span a full Sylow subgroup"
        return True, "every Sylow subgroup cyclic"

    if crit == CriterionId.DIHEDRAL:
        rot = Subgroup(group, tuple(w["rotation"]))
        t = w["reflection"]
        if 2 * rot.order != group.order:
            return False, "rotation subgroup is not index 2"
        if not any(element_order(group, x) == rot.order for x in rot.elements):
            return False, "rotation subgroup is not cyclic"
        if t in rot or element_order(group, t) != 2:
            return False, "reflection witness is not an outside involution"
        for a in rot.elements:
            if group.conj(a, t) != group.inverse[a]:
                return False, "reflection does not invert the rotations"
        return True, "dihedral witness checks"

    if crit in (
        CriterionId.METACYCLIC_COPRIME,
        CriterionId.METACYCLIC_N_PRIME,
        CriterionId.METACYCLIC_M_PRIME,
    ):
        from .groups import quotient

        a_sub = Subgroup(group, tuple(w["kernel"]))
        if not any(element_order(group, x) == a_sub.order for x in a_sub.elements):
            return False, "kernel is not cyclic"
        if not is_normal(group, a_sub):
            return False, "kernel is not normal"
        quot, _ = quotient(group, a_sub)
        if not any(element_order(quot, x) == quot.order for x in quot.elements()):
            return False, "quotient is not cyclic"
        m, n = a_sub.order, quot.order
        if (m, n) != (w.get("m"), w.get("n")):
            return False, "stored orders disagree"
        if crit == CriterionId.METACYCLIC_COPRIME and gcd(m, n) != 1:
            return False, "orders are not coprime"
        if crit == CriterionId.METACYCLIC_N_PRIME and not is_prime(n):
            return False, "quotient order is not prime"
        if crit == CriterionId.METACYCLIC_M_PRIME and not is_prime(m):
            return False, "kernel order is not prime"
        return True, "metacyclic witness checks"

    if crit == CriterionId.ABELIAN_IDX2:
        b = Subgroup(group, tuple(w["abelian_subgroup"]))
        if 2 * b.order != group.order:
            return False, "subgroup is not index 2"
        if not is_abelian_subgroup(b):
            return False, "subgroup is not abelian"
        return True, "abelian subgroup of index 2"

    if crit == CriterionId.DIRECT_PRODUCT:
        n1 = Subgroup(group, tuple(w["N1"]))
        n2 = Subgroup(group, tuple(w["N2"]))
        if not (is_normal(group, n1) and is_normal(group, n2)):
            return False, "factors are not normal"
        if set(n1.elements) & set(n2.elements) != {0}:
            return False, "factors intersect"
        if n1.order * n2.order != group.order:
            return False, "factor orders do not multiply to |G|"
        if len(cert.subcertificates) != 2:
            return False, "need exactly two factor subcertificates"
        for part, inner in zip((n1, n2), cert.subcertificates):
            fgrp, _ = subgroup_as_group(part)
            ok, reason = recheck_snp(fgrp, inner)
            if not ok:
                return False, f"factor fails: {reason}"
        return True, "internal direct product with certified factors"

    if crit == CriterionId.ALL_SUBGROUPS:
        subs = all_subgroups(group)
        covered = {tuple(c.subgroup): c for c in cert.subcertificates}
        if len(covered) != len(subs):
            return False, "subcertificate count mismatch"
        for s in subs:
            inner = covered.get(s.elements)
            if inner is None:
                return False, "a subgroup is missing a subcertificate"
            if not inner.holds():
                return False, "a subgroup certificate does not hold"
            ok, reason = recheck_np(group, inner)
            if not ok:
                return False, f"subgroup {list(s.elements)} fails: {reason}"
        return True, "every subgroup individually certified"

    return False, f"unknown group criterion {crit}"
