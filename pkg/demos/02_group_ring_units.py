#!/usr/bin/env python3
"""Integral group ring arithmetic: augmentations, commutators, units, and
the support action of a normalizing unit.
"""

from normprop import subgroup_from
from normprop.catalog import build_group_spec
from normprop.groupring import (
    GroupRingElement,
    additive_commutator,
    augmentation,
    centralizes,
    coleman_decompose,
    coleman_support_action,
    format_element,
    in_commutator_span,
    normalizes,
    parse_element,
    partial_augmentation,
    try_invert,
)
from normprop.groups import conjugacy_classes, element_order

s3 = build_group_spec("symmetric:3")
u = parse_element(s3, "2*(0 1 2) - 1*id")
print("u =", format_element(u))
print("augmentation:", augmentation(u))
for cls in conjugacy_classes(s3):
    print(f"  partial augmentation on class of {s3.names[cls[0]]}:",
          partial_augmentation(u, cls))

# Additive commutators span exactly the elements whose partial
# augmentations all vanish.
x = parse_element(s3, "1*(0 1 2) + 3*(0 1)")
y = parse_element(s3, "2*id - 1*(0 2)")
comm = additive_commutator(x, y)
print("\n[x, y] =", format_element(comm))
print("in commutator span:", in_commutator_span(comm))

# A genuinely nontrivial unit: for a of order 5, -1 + a + a^4 has inverse
# with integer coefficients (its norm in the cyclotomic field is 1).
d5 = build_group_spec("dihedral:5")
a = next(x for x in d5.elements() if element_order(d5, x) == 5)
golden = GroupRingElement(d5, {0: -1, a: 1, d5.inverse[a]: 1})
inv = try_invert(golden)
print("\nu =", format_element(golden), " over the dihedral group of order 10")
print("u^-1 =", format_element(inv))

rotations = subgroup_from(d5, [a])
print("normalizes the rotation subgroup:", normalizes(golden, rotations))
print("centralizes it:", centralizes(golden, rotations))

# The unit's support carries a right action of any normalized subgroup;
# its kernel drives the decomposition u = x * (unit centralizing P).
reflection = next(x for x in d5.elements() if element_order(d5, x) == 2)
h = subgroup_from(d5, [reflection])
table, kernel = coleman_support_action(golden, h)
print("\nsupport action of the order-2 subgroup on supp(u):")
for (point, helem), image in sorted(table.items()):
    if helem:
        print(f"  {d5.names[point]} . {d5.names[helem]} -> {d5.names[image]}")
print("action kernel order:", kernel.order)

p_sub, x = coleman_decompose(golden, h, 2)
print(f"decomposition at p=2: P has order {p_sub.order}, x = {d5.names[x]}")
print("x^-1 u centralizes P:",
      centralizes(GroupRingElement.basis(d5, d5.inverse[x]) * golden, p_sub))
