"""Proof-carrying certification of the normalizer property.

``certify_np`` decides NP(H <= G, Z): every unit of ZG normalizing H acts
on H like an element of the normalizer.  ``certify_snp`` decides the
quantified form SNP(G, Z) over all subgroups.  Each verdict HOLDS carries
the criterion that fired plus witnesses that an independent re-verifier
can check; budget exhaustion always degrades to UNDECIDED, never to a
wrong HOLDS.

Subgroup-level criteria, tried in order:

  CYCLIC             cyclic subgroups always have the property
  P_GROUP            prime-power subgroups (support-action argument)
  OUT_TRIVIAL        Aut(H) = Inn(H) leaves units nothing extra to induce
  TWO_GEN            a generating pair (c, d) with c^G = c^{C_G(d)}
  CLASS_BOUND        every class-preserving automorphism is group-induced
  COLEMAN_BOUND      class-preserving maps whose restrictions to each
                     Sylow subgroup of a nilpotent H are group-induced
                     must be; a per-prime refinement of CLASS_BOUND
  NORMAL_COMPLEMENT  an abelian characteristic N with complement acting
                     faithfully and trivial first cohomology reduces
                     NP(H <= G) to NP(N <= G)

Group-level criteria: NILPOTENT, SYLOW_CYCLIC, DIHEDRAL, METACYCLIC_*,
ABELIAN_IDX2, DIRECT_PRODUCT, then the per-subgroup fallback
ALL_SUBGROUPS.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .automorphisms import (
    automorphism_group,
    class_preserving_bound,
    induced_by,
    inner_automorphisms,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    class_of,
    closure,
    element_centralizer,
    element_order,
    is_normal,
    normalizer,
    subgroup_as_group,
)
from .structure import (
    H1Result,
    MetacyclicCase,
    abelian_index2_witness,
    acts_faithfully,
    all_subgroups,
    characteristic_abelian_candidates,
    complements,
    dihedral_witness,
    direct_factorization,
    h1_trivial,
    is_nilpotent,
    metacyclic_witness,
    prime_factors,
    sylow_system,
)


class CriterionId(Enum):
    CYCLIC = "CYCLIC"
    P_GROUP = "P_GROUP"
    OUT_TRIVIAL = "OUT_TRIVIAL"
    TWO_GEN = "TWO_GEN"
    CLASS_BOUND = "CLASS_BOUND"
    COLEMAN_BOUND = "COLEMAN_BOUND"
    NORMAL_COMPLEMENT = "NORMAL_COMPLEMENT"
    NILPOTENT = "NILPOTENT"
    METACYCLIC_COPRIME = "METACYCLIC_COPRIME"
    METACYCLIC_N_PRIME = "METACYCLIC_N_PRIME"
    METACYCLIC_M_PRIME = "METACYCLIC_M_PRIME"
    DIHEDRAL = "DIHEDRAL"
    SYLOW_CYCLIC = "SYLOW_CYCLIC"
    ABELIAN_IDX2 = "ABELIAN_IDX2"
    DIRECT_PRODUCT = "DIRECT_PRODUCT"
    ALL_SUBGROUPS = "ALL_SUBGROUPS"
    NONE = "NONE"


METACYCLIC_CRITERIA = {
    MetacyclicCase.COPRIME: CriterionId.METACYCLIC_COPRIME,
    MetacyclicCase.N_PRIME: CriterionId.METACYCLIC_N_PRIME,
    MetacyclicCase.M_PRIME: CriterionId.METACYCLIC_M_PRIME,
}

NP_CHAIN = (
    CriterionId.CYCLIC,
    CriterionId.P_GROUP,
    CriterionId.OUT_TRIVIAL,
    CriterionId.TWO_GEN,
    CriterionId.CLASS_BOUND,
    CriterionId.COLEMAN_BOUND,
    CriterionId.NORMAL_COMPLEMENT,
)


@dataclass(frozen=True)
class Budget:
    """Caps for the searches a certification run is allowed to perform."""

    aut_cap: int = 10**7
    h1_cap: int = 10**6
    subgroup_cap: int = 128
    order_cap: int = 2048


DEFAULT_BUDGET = Budget()


@dataclass
class Certificate:
    """Outcome of one certification target, with re-checkable witnesses."""

    group: str
    subgroup: object  # "ALL" or a tuple of element indices
    verdict: str  # "HOLDS" or "UNDECIDED"
    criterion: CriterionId
    witnesses: dict = field(default_factory=dict)
    subcertificates: list = field(default_factory=list)

    def holds(self) -> bool:
        return self.verdict == "HOLDS"

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "subgroup": list(self.subgroup) if self.subgroup != "ALL" else "ALL",
            "verdict": self.verdict,
            "criterion": self.criterion.value,
            "witnesses": self.witnesses,
            "subcertificates": [c.to_json() for c in self.subcertificates],
        }

    def to_lines(self, indent: int = 0) -> list[str]:
        pad = "  " * indent
        sub = self.subgroup if self.subgroup == "ALL" else list(self.subgroup)
        lines = [
            f"{pad}group={self.group} subgroup={sub} verdict={self.verdict} "
            f"criterion={self.criterion.value} witnesses={self.witnesses}"
        ]
        for c in self.subcertificates:
            lines.extend(c.to_lines(indent + 1))
        return lines

    def __str__(self):
        return "\n".join(self.to_lines())


# ---------------------------------------------------------------------------
# NP criteria


def _try_cyclic(group, sub, budget):
    for g in sub.elements:
        if element_order(group, g) == sub.order:
            return {"generator": g}
    return None


def _try_p_group(group, sub, budget):
    if sub.order == 1:
        return None
    primes = prime_factors(sub.order)
    if len(primes) == 1:
        return {"prime": primes[0]}
    return None


def _try_out_trivial(group, sub, budget):
    auts = automorphism_group(sub, cap=budget.aut_cap)
    if auts is None:
        return None
    inner = inner_automorphisms(sub)
    if {m.images for m in auts} == {m.images for m in inner}:
        return {"aut_count": len(auts)}
    return None


def _two_gen_pair_ok(group, sub, c, d):
    cls = class_of(group, c)
    orbit = set()
    for w in element_centralizer(group, d):
        orbit.add(group.conj(c, w))
        if len(orbit) == len(cls):
            break
    return len(orbit) == len(cls)


def _try_two_gen(group, sub, budget):
    elems = sub.elements
    target = set(elems)
    for c in elems:
        for d in elems:
            if not _two_gen_pair_ok(group, sub, c, d):
                continue
            if set(closure(group, [c, d])) == target:
                return {"c": c, "d": d}
    return None


def _try_class_bound(group, sub, budget):
    bound = class_preserving_bound(group, sub, cap=budget.aut_cap)
    if bound is None:
        return None
    pairs = []
    for sigma in bound:
        g = induced_by(group, sub, sigma)
        if g is None:
            return None
        pairs.append([list(sigma.images), g])
    return {"maps": pairs}


def _restriction_induced(group, part: Subgroup, sigma, cache) -> bool:
    """Does some normalizer element of the Sylow piece induce sigma there?"""
    key = part.elements
    if key not in cache:
        cache[key] = normalizer(group, part).elements
    for g in cache[key]:
        if all(group.conj(x, g) == sigma.apply(x) for x in part.elements):
            return True
    return False


def _try_coleman_bound(group, sub, budget):
    hgrp, hmap = subgroup_as_group(sub)
    if not is_nilpotent(hgrp):
        return None
    bound = class_preserving_bound(group, sub, cap=budget.aut_cap)
    if bound is None:
        return None
    sylows = {}
    for p, syl in sylow_system(hgrp).items():
        sylows[p] = Subgroup(group, tuple(sorted(hmap[i] for i in syl.elements)))
    ncache = {}
    pairs = []
    for sigma in bound:
        survives = all(
            _restriction_induced(group, part, sigma, ncache)
            for part in sylows.values()
        )
        if not survives:
            continue
        g = induced_by(group, sub, sigma)
        if g is None:
            return None
        pairs.append([list(sigma.images), g])
    return {
        "maps": pairs,
        "sylows": {str(p): list(s.elements) for p, s in sylows.items()},
    }


def _try_normal_complement(group, sub, budget):
    if not is_normal(group, sub):
        return None
    hgrp, hmap = subgroup_as_group(sub)
    local = {x: i for i, x in enumerate(hmap)}
    for n_sub, route in characteristic_abelian_candidates(sub):
        if n_sub.order in (1, sub.order):
            continue
        n_local = Subgroup(hgrp, tuple(sorted(local[x] for x in n_sub.elements)))
        for w_local in complements(hgrp, n_local):
            w_sub = Subgroup(group, tuple(sorted(hmap[i] for i in w_local.elements)))
            if not acts_faithfully(w_sub, n_sub):
                continue
            h1 = h1_trivial(w_sub, n_sub, enum_bound=budget.h1_cap)
            if h1 not in (H1Result.TRUE_COPRIME, H1Result.TRUE_ENUM):
                continue
            sub_cert = certify_np(
                group,
                n_sub,
                budget=budget,
                skip=frozenset({CriterionId.NORMAL_COMPLEMENT}),
                label="G",
            )
            if sub_cert.holds():
                return (
                    {
                        "N": list(n_sub.elements),
                        "W": list(w_sub.elements),
                        "char_route": route,
                        "h1": h1.value,
                    },
                    [sub_cert],
                )
    return None


_NP_TRIERS = {
    CriterionId.CYCLIC: _try_cyclic,
    CriterionId.P_GROUP: _try_p_group,
    CriterionId.OUT_TRIVIAL: _try_out_trivial,
    CriterionId.TWO_GEN: _try_two_gen,
    CriterionId.CLASS_BOUND: _try_class_bound,
    CriterionId.COLEMAN_BOUND: _try_coleman_bound,
}


def certify_np(
    group: FiniteGroup,
    sub: Subgroup,
    budget: Budget = DEFAULT_BUDGET,
    skip: frozenset = frozenset(),
    label: str = "G",
) -> Certificate:
    """Certify NP(H <= G, Z) by the first criterion that fires.

    ``skip`` removes criteria from the chain (used by tests and by the
    complement recursion).  An exhausted budget or an empty chain yields
    verdict UNDECIDED with criterion NONE, never a wrong HOLDS.
    """
    for crit in NP_CHAIN:
        if crit in skip:
            continue
        if crit == CriterionId.NORMAL_COMPLEMENT:
            got = _try_normal_complement(group, sub, budget)
            if got is not None:
                witnesses, subcerts = got
                return Certificate(
                    label, sub.elements, "HOLDS", crit, witnesses, subcerts
                )
            continue
        witnesses = _NP_TRIERS[crit](group, sub, budget)
        if witnesses is not None:
            return Certificate(label, sub.elements, "HOLDS", crit, witnesses)
    return Certificate(label, sub.elements, "UNDECIDED", CriterionId.NONE)


# ---------------------------------------------------------------------------
# SNP criteria


def certify_snp(
    group: FiniteGroup,
    budget: Budget = DEFAULT_BUDGET,
    skip: frozenset = frozenset(),
    label: str = "G",
) -> Certificate:
    """Certify SNP(G, Z): the normalizer property for every subgroup.

    Structural criteria are tried cheapest-first; when none fires the
    certifier falls back to per-subgroup NP certificates, which must all
    hold.  ``skip`` disables criteria at this level only; recursion into
    direct factors always runs the full chain.
    """
    if CriterionId.NILPOTENT not in skip and is_nilpotent(group):
        sylows = {
            str(p): list(s.elements) for p, s in sylow_system(group).items()
        }
        return Certificate(
            label, "ALL", "HOLDS", CriterionId.NILPOTENT, {"sylows": sylows}
        )

    if CriterionId.SYLOW_CYCLIC not in skip:
        system = sylow_system(group)
        gens = {}
        for p, syl in system.items():
            g = next(
                (x for x in syl.elements if element_order(group, x) == syl.order),
                None,
            )
            if g is None:
                gens = None
                break
            gens[str(p)] = g
        if gens is not None:
            return Certificate(
                label, "ALL", "HOLDS", CriterionId.SYLOW_CYCLIC, {"generators": gens}
            )

    if CriterionId.DIHEDRAL not in skip:
        got = dihedral_witness(group)
        if got is not None:
            rot, refl = got
            return Certificate(
                label,
                "ALL",
                "HOLDS",
                CriterionId.DIHEDRAL,
                {"rotation": list(rot.elements), "reflection": refl},
            )

    metacyclic_skipped = all(c in skip for c in METACYCLIC_CRITERIA.values())
    if not metacyclic_skipped:
        got = metacyclic_witness(group)
        if got is not None:
            a_sub, case = got
            crit = METACYCLIC_CRITERIA[case]
            if crit not in skip:
                return Certificate(
                    label,
                    "ALL",
                    "HOLDS",
                    crit,
                    {
                        "kernel": list(a_sub.elements),
                        "m": a_sub.order,
                        "n": group.order // a_sub.order,
                    },
                )

    if CriterionId.ABELIAN_IDX2 not in skip:
        b = abelian_index2_witness(group)
        if b is not None:
            return Certificate(
                label,
                "ALL",
                "HOLDS",
                CriterionId.ABELIAN_IDX2,
                {"abelian_subgroup": list(b.elements)},
            )

    if CriterionId.DIRECT_PRODUCT not in skip:
        got = direct_factorization(group)
        if got is not None:
            n1, n2 = got
            subcerts = []
            ok = True
            for tag, part in (("f1", n1), ("f2", n2)):
                factor, _ = subgroup_as_group(part)
                cert = certify_snp(factor, budget=budget, label=f"{label}.{tag}")
                subcerts.append(cert)
                ok = ok and cert.holds()
            if ok:
                return Certificate(
                    label,
                    "ALL",
                    "HOLDS",
                    CriterionId.DIRECT_PRODUCT,
                    {"N1": list(n1.elements), "N2": list(n2.elements)},
                    subcerts,
                )

    # fallback: certify every subgroup individually
    subcerts = []
    all_hold = True
    for sub in all_subgroups(group, cap=budget.subgroup_cap):
        cert = certify_np(group, sub, budget=budget, label=label)
        subcerts.append(cert)
        all_hold = all_hold and cert.holds()
    if all_hold:
        return Certificate(
            label,
            "ALL",
            "HOLDS",
            CriterionId.ALL_SUBGROUPS,
            {"subgroup_count": len(subcerts)},
            subcerts,
        )
    return Certificate(
        label,
        "ALL",
        "UNDECIDED",
        CriterionId.NONE,
        {"subgroup_count": len(subcerts)},
        subcerts,
    )


# ---------------------------------------------------------------------------
# catalog verification


@dataclass
class ReportRow:
    group: str
    order: int
    verdict: str
    criterion: str
    detail: str
    certificate: Optional[Certificate] = None

    def as_tsv(self) -> str:
        return "\t".join(
            [self.group, str(self.order), self.verdict, self.criterion, self.detail]
        )


@dataclass
class VerifyReport:
    rows: list
    criterion_counts: dict
    undecided: list
    wall_time: float

    def to_tsv(self, header: bool = True) -> str:
        lines = []
        if header:
            lines.append("group\torder\tverdict\tcriterion\tdetail")
        lines.extend(row.as_tsv() for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "report": [
                {
                    "group": r.group,
                    "order": r.order,
                    "verdict": r.verdict,
                    "criterion": r.criterion,
                    "detail": r.detail,
                }
                for r in self.rows
            ],
            "summary": {
                "groups": len(self.rows),
                "criteria": self.criterion_counts,
                "undecided": self.undecided,
            },
        }


def _describe(cert: Certificate) -> str:
    w = cert.witnesses
    c = cert.criterion
    if c == CriterionId.NILPOTENT:
        return "sylow orders " + ",".join(
            str(len(v)) for v in w.get("sylows", {}).values()
        )
    if c == CriterionId.SYLOW_CYCLIC:
        return "cyclic sylows p=" + ",".join(sorted(w.get("generators", {})))
    if c == CriterionId.DIHEDRAL:
        return f"rotation order {len(w.get('rotation', []))}"
    if c in (
        CriterionId.METACYCLIC_COPRIME,
        CriterionId.METACYCLIC_N_PRIME,
        CriterionId.METACYCLIC_M_PRIME,
    ):
        return f"m={w.get('m')} n={w.get('n')}"
    if c == CriterionId.ABELIAN_IDX2:
        return f"abelian subgroup of order {len(w.get('abelian_subgroup', []))}"
    if c == CriterionId.DIRECT_PRODUCT:
        return f"factors {len(w.get('N1', []))}x{len(w.get('N2', []))}"
    if c == CriterionId.ALL_SUBGROUPS:
        crits = sorted(
            {s.criterion.value for s in cert.subcertificates}
        )
        return f"{w.get('subgroup_count')} subgroups via {','.join(crits)}"
    if c == CriterionId.NONE:
        bad = [
            list(s.subgroup)
            for s in cert.subcertificates
            if not s.holds()
        ]
        return f"undecided subgroups: {bad[:3]}"
    return ""


def certify_entry(name: str, group: FiniteGroup, budget: Budget = DEFAULT_BUDGET) -> ReportRow:
    cert = certify_snp(group, budget=budget, label=name)
    return ReportRow(
        group=name,
        order=group.order,
        verdict=cert.verdict,
        criterion=cert.criterion.value,
        detail=_describe(cert),
        certificate=cert,
    )


def _certify_worker(args):
    from .catalog import build_entry_group

    name, order, gen_text, budget_tuple = args
    group = build_entry_group(gen_text)
    budget = Budget(*budget_tuple)
    row = certify_entry(name, group, budget)
    row.certificate = None  # keep the payload picklable and small
    return row


def verify_catalog(
    entries: Iterable,
    max_order: int,
    budget: Budget = DEFAULT_BUDGET,
    jobs: int = 1,
) -> VerifyReport:
    """Run certify_snp over the catalog entries of order at most max_order.

    Rows appear in catalog order.  With jobs > 1 the per-group work is
    distributed over a process pool; results are still deterministic.
    """
    selected = [e for e in entries if e.order <= max_order]
    start = time.perf_counter()
    rows: list[ReportRow] = []
    if jobs <= 1:
        for entry in selected:
            rows.append(certify_entry(entry.name, entry.group(), budget))
    else:
        import concurrent.futures

        payload = [
            (
                e.name,
                e.order,
                e.generator_text,
                (budget.aut_cap, budget.h1_cap, budget.subgroup_cap, budget.order_cap),
            )
            for e in selected
        ]
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_certify_worker, payload))
    wall = time.perf_counter() - start
    counts: dict[str, int] = {}
    undecided = []
    for row in rows:
        counts[row.criterion] = counts.get(row.criterion, 0) + 1
        if row.verdict != "HOLDS":
            undecided.append(row.group)
    return VerifyReport(rows, counts, undecided, wall)
