"""Command-line interface.

Subcommands:
    verify   run the catalog sweep and emit a TSV or JSON report
    inspect  structural summary of one group spec
    np       certify one subgroup target, pretty-printed
    ring     group ring diagnostics for one element

Exit codes: 0 success, 1 error, 2 at least one UNDECIDED verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .catalog import build_group_spec, load_catalog, parse_group_spec
from .certify import Budget, certify_np, verify_catalog
from .errors import NormpropError
from .groupring import (
    augmentation,
    format_element,
    parse_element,
    partial_augmentation,
    try_invert,
)
from .groups import conjugacy_classes, subgroup_from
from .structure import (
    abelian_index2,
    all_subgroups,
    is_cyclic_subgroup,
    is_dihedral,
    is_nilpotent,
    metacyclic_witness,
    sylow_system,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2


def _add_budget_args(parser):
    parser.add_argument(
        "--aut-cap",
        type=int,
        default=Budget().aut_cap,
        help="candidate-image cap for automorphism searches",
    )
    parser.add_argument(
        "--h1-cap",
        type=int,
        default=Budget().h1_cap,
        help="enumeration bound for first-cohomology checks",
    )


def _budget_from(args) -> Budget:
    return Budget(aut_cap=args.aut_cap, h1_cap=args.h1_cap)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normprop",
        description="Certify the normalizer property for integral group rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="certify SNP over the catalog")
    p_verify.add_argument("--max-order", type=int, default=47)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p_verify.add_argument("--catalog", default=None, help="path to a catalog file")
    p_verify.add_argument(
        "--timestamp",
        action="store_true",
        help="include a timestamp header (off by default so reports are byte-identical)",
    )
    _add_budget_args(p_verify)

    p_inspect = sub.add_parser("inspect", help="structural summary of one group")
    p_inspect.add_argument("spec")

    p_np = sub.add_parser("np", help="certify one subgroup target")
    p_np.add_argument("spec")
    p_np.add_argument(
        "--subgroup",
        required=True,
        help="comma- or space-separated element names generating the subgroup",
    )
    _add_budget_args(p_np)

    p_ring = sub.add_parser("ring", help="group ring diagnostics")
    p_ring.add_argument("spec")
    p_ring.add_argument("--element", required=True, help="element text, e.g. '2*a - 1*id'")
    p_ring.add_argument("--invert", action="store_true")
    p_ring.add_argument("--partials", action="store_true")

    return parser


def cmd_verify(args) -> int:
    entries = load_catalog(args.catalog, jobs=args.jobs)
    report = verify_catalog(
        entries, args.max_order, budget=_budget_from(args), jobs=args.jobs
    )
    if args.timestamp:
        stamp = time.strftime("%Y-%m-%dT%H:%M:%S")
        print(f"# generated {stamp}")
    if args.format == "tsv":
        sys.stdout.write(report.to_tsv())
    else:
        json.dump(report.to_json(), sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    print(
        f"groups={len(report.rows)} undecided={len(report.undecided)} "
        f"wall={report.wall_time:.2f}s",
        file=sys.stderr,
    )
    return EXIT_UNDECIDED if report.undecided else EXIT_OK


def cmd_inspect(args) -> int:
    group = build_group_spec(args.spec)
    classes = conjugacy_classes(group)
    print(f"spec:       {parse_group_spec(args.spec).format()}")
    print(f"order:      {group.order}")
    print(f"classes:    {len(classes)} (sizes {sorted(len(c) for c in classes)})")
    from .groups import center

    z = center(group)
    print(f"center:     order {z.order}")
    for p, syl in sorted(sylow_system(group).items()):
        kind = "cyclic" if is_cyclic_subgroup(syl) else "non-cyclic"
        print(f"sylow {p}:    order {syl.order} ({kind})")
    print(f"subgroups:  {len(all_subgroups(group))}")
    print(f"nilpotent:  {is_nilpotent(group)}")
    print(f"dihedral:   {is_dihedral(group)}")
    witness = metacyclic_witness(group)
    if witness is None:
        print("metacyclic: none")
    else:
        a, case = witness
        print(f"metacyclic: kernel order {a.order}, case {case.value}")
    if group.order % 2 == 0:
        print(f"abelian index-2 subgroup: {abelian_index2(group)}")
    return EXIT_OK


def _split_names(text: str) -> list[str]:
    """Split on commas and whitespace, but never inside parentheses."""
    out = []
    current = []
    depth = 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and (ch.isspace() or ch == ","):
            if current:
                out.append("".join(current))
                current = []
            continue
        current.append(ch)
    if current:
        out.append("".join(current))
    return out


def cmd_np(args) -> int:
    group = build_group_spec(args.spec)
    names = _split_names(args.subgroup)
    try:
        gens = [group.index_of_name(name) for name in names]
    except KeyError as exc:
        raise NormpropError(str(exc)) from exc
    sub = subgroup_from(group, gens)
    cert = certify_np(group, sub, budget=_budget_from(args), label=args.spec)
    print(f"target:    {args.spec} subgroup of order {sub.order}")
    print(f"elements:  {[group.names[x] for x in sub.elements]}")
    print(f"verdict:   {cert.verdict}")
    print(f"criterion: {cert.criterion.value}")
    if cert.witnesses:
        print(f"witnesses: {cert.witnesses}")
    for line in [l for c in cert.subcertificates for l in c.to_lines(1)]:
        print(line)
    return EXIT_OK if cert.holds() else EXIT_UNDECIDED


def cmd_ring(args) -> int:
    group = build_group_spec(args.spec)
    u = parse_element(group, args.element)
    print(f"element:      {format_element(u)}")
    print(f"augmentation: {augmentation(u)}")
    print(f"support:      {[group.names[g] for g in u.support()]}")
    if args.partials:
        for cls in conjugacy_classes(group):
            value = partial_augmentation(u, cls)
            rep = group.names[cls[0]]
            print(f"partial[{rep}]: {value} (class size {len(cls)})")
    if args.invert:
        v = try_invert(u)
        if v is None:
            print("inverse:      not a unit of ZG")
        else:
            print(f"inverse:      {format_element(v)}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    handlers = {
        "verify": cmd_verify,
        "inspect": cmd_inspect,
        "np": cmd_np,
        "ring": cmd_ring,
    }
    try:
        return handlers[args.command](args)
    except NormpropError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
