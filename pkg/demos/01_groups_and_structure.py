#!/usr/bin/env python3
"""Tour of the group engine: constructing groups and querying structure.

Groups are plain multiplication tables over indices 0..n-1 with the
identity at 0.  Everything here is exact integer computation.
"""

from normprop import (
    center,
    centralizer,
    class_of,
    conjugacy_classes,
    from_generators,
    normalizer,
    parse_cycles,
    quotient,
    subgroup_from,
)
from normprop.catalog import build_group_spec
from normprop.structure import (
    all_subgroups,
    is_dihedral,
    is_nilpotent,
    metacyclic_witness,
    sylow_system,
)

# Sym(3) from two permutation generators; padding to a common degree is
# automatic, mirroring how cycle notation is usually written.
s3 = from_generators([parse_cycles("(0 1 2)"), parse_cycles("(0 1)")])
print("Sym(3) order:", s3.order)
print("element names:", s3.names)
print("class sizes:", [len(c) for c in conjugacy_classes(s3)])

rot = subgroup_from(s3, [s3.index_of_name("(0 1 2)")])
print("rotation subgroup order:", rot.order)
print("its normalizer has order:", normalizer(s3, rot).order)
print("its centralizer has order:", centralizer(s3, rot.elements).order)

q, phi = quotient(s3, rot)
print("Sym(3) / rotations has order:", q.order)

# The spec mini-language builds the same groups more conveniently.
q8 = build_group_spec("quaternion:8")
print("\nquaternion:8")
print("  center order:", center(q8).order)
print("  nilpotent:", is_nilpotent(q8))
print("  subgroup count:", len(all_subgroups(q8)))
print("  dihedral:", is_dihedral(q8))

d12 = build_group_spec("dihedral:6")
witness = metacyclic_witness(d12)
print("\ndihedral:6 (order 12)")
print("  dihedral:", is_dihedral(d12))
print("  metacyclic witness: kernel order", witness[0].order, "case", witness[1].value)
print("  sylow orders:", {p: s.order for p, s in sylow_system(d12).items()})

# Fused conjugacy: the three double transpositions of Alt(4) form one
# class, although the Klein four group that contains them is abelian.
a4 = from_generators([parse_cycles("(0 1 2)"), parse_cycles("(0 1)(2 3)")])
invol = next(x for x in a4.elements() if a4.names[x].count("(") == 2)
print("\nAlt(4): class of", a4.names[invol], "has size", len(class_of(a4, invol)))
