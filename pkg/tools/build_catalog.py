#!/usr/bin/env python3
"""Generate the bundled small-groups catalog (one entry per isomorphism
type, orders 1 through 47).

Method: every group of order n <= 47 is solvable, hence has a normal
subgroup of prime index p, so it arises as a cyclic extension of a group
N of order n/p by data (beta, z) with beta an automorphism of N,
beta(z) = z and beta^p = conjugation by z.  Working upward by order and
enumerating all such data over all smaller types therefore reaches every
isomorphism type.  Candidates are deduplicated by invariant bucketing
plus explicit isomorphism search, and the resulting counts are asserted
against the standard census, which is the strongest end-to-end check of
the construction.

Output: src/normprop/data/smallgroups.tsv with right-regular-representation
generators in cycle notation.

Run from the repository root:  python3 tools/build_catalog.py
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from normprop.automorphisms import automorphism_group
from normprop.groups import (
    FiniteGroup,
    Permutation,
    center,
    conjugacy_classes,
    class_of,
    derived_subgroup,
    element_orders,
    minimal_generating_set,
    whole_subgroup,
)
from normprop.structure import prime_factors

# number of isomorphism types per order (standard small-group census)
CENSUS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
    11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5,
    21: 2, 22: 2, 23: 1, 24: 15, 25: 2, 26: 2, 27: 5, 28: 4, 29: 1, 30: 4,
    31: 1, 32: 51, 33: 1, 34: 2, 35: 1, 36: 14, 37: 1, 38: 2, 39: 2, 40: 14,
    41: 1, 42: 6, 43: 1, 44: 4, 45: 2, 46: 2, 47: 1,
}

MAX_ORDER = 47
ISO_NODE_CAP = 5_000_000


# ---------------------------------------------------------------------------
# cyclic extensions


def cyclic_extensions(n_group: FiniteGroup, p: int):
    """All extension data (beta, z) of the given group by a cyclic group
    of prime order p, yielding the built candidate groups."""
    m = n_group.order
    auts = automorphism_group(whole_subgroup(n_group))
    if auts is None:
        raise RuntimeError(f"automorphism search capped for order {m}")
    abelian = n_group.is_abelian()
    identity = tuple(range(m))
    conj_cache: dict[int, tuple] = {}

    def conj_by(z):
        if z not in conj_cache:
            conj_cache[z] = tuple(n_group.conj(a, z) for a in range(m))
        return conj_cache[z]

    for amap in auts:
        beta = amap.images
        bp = beta
        for _ in range(p - 1):
            bp = tuple(beta[x] for x in bp)
        fixed = [z for z in range(m) if beta[z] == z]
        for z in fixed:
            target = identity if abelian else conj_by(z)
            if bp != target:
                continue
            yield build_extension(n_group, p, beta, z)


def build_extension(n_group: FiniteGroup, p: int, beta, z) -> FiniteGroup:
    m = n_group.order
    size = m * p
    nt = n_group.table
    betapow = [tuple(range(m))]
    for _ in range(p - 1):
        betapow.append(tuple(beta[x] for x in betapow[-1]))
    table = [[0] * size for _ in range(size)]
    for j1 in range(p):
        for a1 in range(m):
            row = table[j1 * m + a1]
            for j2 in range(p):
                x1 = betapow[j2][a1]
                jj = j1 + j2
                if jj >= p:
                    jj -= p
                    base = nt[z][x1]
                else:
                    base = x1
                brow = nt[base]
                off = jj * m
                col = j2 * m
                for a2 in range(m):
                    row[col + a2] = off + brow[a2]
    return FiniteGroup(table, generators=())


# ---------------------------------------------------------------------------
# invariants and isomorphism testing


def cheap_fingerprint(group: FiniteGroup) -> tuple:
    orders = element_orders(group)
    classes = conjugacy_classes(group)
    profile = []
    for cls in classes:
        x = cls[0]
        sq = group.mul(x, x)
        profile.append(
            (len(cls), orders[x], len(class_of(group, sq)), orders[sq])
        )
    profile.sort()
    return (
        group.order,
        tuple(sorted(orders)),
        tuple(profile),
        center(group).order,
        derived_subgroup(group).order,
    )


def element_invariants(group: FiniteGroup) -> list[tuple]:
    orders = element_orders(group)
    inv = []
    t = group.table
    for x in range(group.order):
        cent = [g for g in range(group.order) if t[g][x] == t[x][g]]
        cent_profile = tuple(sorted(orders[g] for g in cent))
        sq = group.mul(x, x)
        inv.append(
            (
                orders[x],
                len(class_of(group, x)),
                len(class_of(group, sq)),
                cent_profile,
            )
        )
    return inv


def _extend_partial(g1, g2, gens, images):
    """Map <gens> -> g2 by left translations; None on conflict or collapse."""
    f = {0: 0}
    frontier = [0]
    pairs = list(zip(gens, images))
    while frontier:
        x = frontier.pop()
        fx = f[x]
        for g, img in pairs:
            xg = g1.table[x][g]
            val = g2.table[fx][img]
            known = f.get(xg)
            if known is None:
                f[xg] = val
                frontier.append(xg)
            elif known != val:
                return None
    if len(set(f.values())) != len(f):
        return None
    return f


def find_isomorphism(g1: FiniteGroup, g2: FiniteGroup):
    """An isomorphism as an index map, or None. Raises if the search blows
    past the node cap (add stronger invariants in that case)."""
    if g1.order != g2.order:
        return None
    inv1 = element_invariants(g1)
    inv2 = element_invariants(g2)
    if sorted(inv1) != sorted(inv2):
        return None
    gens = minimal_generating_set(g1, tuple(range(g1.order)))
    if not gens:
        return {0: 0}
    candidates = [
        [y for y in range(g2.order) if inv2[y] == inv1[g]] for g in gens
    ]
    nodes = 0

    def dfs(depth, images):
        nonlocal nodes
        if depth == len(gens):
            f = _extend_partial(g1, g2, gens, images)
            if f is not None and len(f) == g1.order:
                return f
            return None
        for y in candidates[depth]:
            if y in images:
                continue
            nodes += 1
            if nodes > ISO_NODE_CAP:
                raise RuntimeError("isomorphism search exceeded the node cap")
            partial = _extend_partial(g1, g2, gens[: depth + 1], images + [y])
            if partial is None:
                continue
            result = dfs(depth + 1, images + [y])
            if result is not None:
                return result
        return None

    return dfs(0, [])


# ---------------------------------------------------------------------------
# naming


def abelian_invariant_factors(group: FiniteGroup) -> list[int]:
    """Invariant factor decomposition of an abelian group.

    For each prime, #{x : x^(p^k) = 1} = p^(sum_i min(lambda_i, k))
    determines the primary partition lambda; the per-index products of the
    primary parts give the invariant factors, largest first.
    """
    if group.order == 1:
        return [1]
    orders = element_orders(group)
    primary: dict[int, list[int]] = {}
    for p in prime_factors(group.order):
        ms = [0]
        k = 1
        while True:
            count = sum(1 for o in orders if p**k % o == 0)
            e = 0
            while count % p == 0:
                count //= p
                e += 1
            assert count == 1, "element counts in an abelian p-layer are p-powers"
            if e == ms[-1]:
                break
            ms.append(e)
            k += 1
        d = [ms[i] - ms[i - 1] for i in range(1, len(ms))]
        lam = []
        i = 1
        while True:
            cnt = sum(1 for dk in d if dk >= i)
            if cnt == 0:
                break
            lam.append(cnt)
            i += 1
        primary[p] = lam
    length = max(len(v) for v in primary.values())
    factors = []
    for j in range(length):
        f = 1
        for p, exps in primary.items():
            if j < len(exps):
                f *= p ** exps[j]
        factors.append(f)
    return factors


def dicyclic_witness(group: FiniteGroup):
    n = group.order
    if n % 4 != 0:
        return False
    orders = element_orders(group)
    if sum(1 for o in orders if o == 2) != 1:
        return False
    half = n // 2
    for g in range(n):
        if orders[g] != half:
            continue
        sub = set()
        x = 0
        for _ in range(half):
            sub.add(x)
            x = group.table[x][g]
        zed = None
        for y in sub:
            if orders[y] == 2:
                zed = y
        for t in range(n):
            if t in sub:
                continue
            if group.table[t][t] != zed:
                continue
            if all(group.conj(a, t) == group.inverse[a] for a in sub):
                return True
    return False


def assign_name(group: FiniteGroup, order: int, index: int, used: set) -> str:
    from normprop.structure import dihedral_witness as dw

    name = None
    if group.is_abelian():
        factors = abelian_invariant_factors(group)
        name = "x".join(f"C{f}" for f in factors)
    elif dw(group) is not None:
        name = f"D{order}"
    elif dicyclic_witness(group):
        name = f"Q{order}" if order & (order - 1) == 0 else f"Dic{order // 4}"
    if name is None or name in used:
        name = f"{order}.{index}"
    used.add(name)
    return name


# ---------------------------------------------------------------------------
# driver


def dedup(candidates):
    reps = []
    buckets: dict[tuple, list[FiniteGroup]] = {}
    for g in candidates:
        fp = cheap_fingerprint(g)
        bucket = buckets.setdefault(fp, [])
        if any(find_isomorphism(g, seen) is not None for seen in bucket):
            continue
        bucket.append(g)
        reps.append(g)
    return reps


def regular_representation_line(group: FiniteGroup) -> str:
    gens = minimal_generating_set(group, tuple(range(group.order)))
    perms = []
    for g in gens:
        images = tuple(group.table[x][g] for x in range(group.order))
        perms.append(Permutation(images).cycle_string())
    return ";".join(perms)


def main() -> int:
    started = time.time()
    by_order: dict[int, list[FiniteGroup]] = {
        1: [FiniteGroup([[0]], generators=())]
    }
    for n in range(2, MAX_ORDER + 1):
        t0 = time.time()
        candidates = []
        for p in prime_factors(n):
            m = n // p
            for base in by_order[m]:
                candidates.extend(cyclic_extensions(base, p))
        reps = dedup(candidates)
        if len(reps) != CENSUS[n]:
            raise SystemExit(
                f"order {n}: found {len(reps)} types, census says {CENSUS[n]}"
            )
        by_order[n] = reps
        print(
            f"order {n:2d}: {len(candidates):5d} candidates -> {len(reps):2d} types"
            f"  ({time.time() - t0:.1f}s)",
            flush=True,
        )

    out_path = (
        Path(__file__).resolve().parent.parent
        / "src"
        / "normprop"
        / "data"
        / "smallgroups.tsv"
    )
    out_path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        "# small groups catalog: one entry per isomorphism type, orders 1..47",
        "# columns: name<TAB>order<TAB>generators (cycle notation, ';'-joined)",
        "# generators are given in the right regular representation",
    ]
    total = 0
    used: set[str] = set()
    for n in range(1, MAX_ORDER + 1):
        for idx, group in enumerate(by_order[n], start=1):
            name = assign_name(group, n, idx, used)
            lines.append(f"{name}\t{n}\t{regular_representation_line(group)}")
            total += 1
    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {total} entries to {out_path} in {time.time() - started:.1f}s")

    # final self-check: rebuild every entry and verify pairwise distinctness
    from normprop.catalog import load_catalog

    entries = load_catalog(out_path, check_duplicates=False)
    assert len(entries) == sum(CENSUS.values())
    rebuilt: dict[int, list] = {}
    for e in entries:
        rebuilt.setdefault(e.order, []).append(e.group())
    for n, groups in rebuilt.items():
        assert len(groups) == CENSUS[n], f"order {n} reload count"
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                if cheap_fingerprint(groups[i]) == cheap_fingerprint(groups[j]):
                    assert (
                        find_isomorphism(groups[i], groups[j]) is None
                    ), f"order {n}: entries {i} and {j} are isomorphic"
    print("reload check passed: all entries pairwise non-isomorphic")
    return 0


if __name__ == "__main__":
    sys.exit(main())
