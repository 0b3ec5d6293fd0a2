#!/usr/bin/env python3
"""Certifying the normalizer property, with the full criterion chain on
display.

Alt(4) is the most instructive small case: no single structural criterion
covers it, so the certifier falls back to per-subgroup work where the
Klein four subgroup needs the prime-power criterion and the whole group
needs a generating pair with a fused class.
"""

import json

from normprop.catalog import build_group_spec
from normprop.certify import certify_np, certify_snp
from normprop.groups import subgroup_from
from normprop.structure import all_subgroups
from normprop.verify import recheck_snp

a4 = build_group_spec("perm:(0 1 2);(0 1)(2 3)")
print("certifying SNP for Alt(4):")
cert = certify_snp(a4, label="Alt(4)")
print(" verdict:", cert.verdict, "via", cert.criterion.value)
for sub_cert in cert.subcertificates:
    print(f"   subgroup {list(sub_cert.subgroup)}: {sub_cert.criterion.value}")
ok, reason = recheck_snp(a4, cert)
print(" independent recheck:", ok, "-", reason)

# The Klein four subgroup in isolation: conjugation in Alt(4) fuses all
# three involutions, so class-preserving maps form the full symmetric
# group on them, strictly more than the group induces.  The prime-power
# criterion settles it anyway.
v4 = next(s for s in all_subgroups(a4) if s.order == 4)
np_cert = certify_np(a4, v4)
print("\nKlein four subgroup of Alt(4):", np_cert.criterion.value, np_cert.witnesses)

# A cyclic target prints the one-line story.
d12 = build_group_spec("dihedral:6")
rot = subgroup_from(d12, [d12.index_of_name("r")])
np_cert = certify_np(d12, rot, label="dihedral:6")
print("\nrotation subgroup of dihedral:6:", np_cert.criterion.value)
print(json.dumps(np_cert.to_json(), indent=2))

# Certificates serialize to a line-oriented record too.
print("\nline format:")
print(certify_snp(build_group_spec("symmetric:4"), label="Sym(4)"))
