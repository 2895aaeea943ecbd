"""Restricting family B to its last four planes recovers family A.

Each restriction has nine planes and the same matroid as family_A(alpha);
the matching bijection is found by a bounded search.
"""

from freearr import family_A, family_B, restrict
from freearr.arrangement import family_B_forms
from freearr.lattice import matroid_isomorphism

alpha = -2
b, a = family_B(alpha), family_A(alpha)
for pos, h in enumerate(family_B_forms(alpha)[10:14], start=10):
    res = restrict(b, h)
    perm = matroid_isomorphism(res.restricted, a)
    image = ", ".join(str(f) for f in res.restricted.forms)
    print(f"form {pos} ({h}): {len(res.restricted)} planes [{image}]")
    print(f"  matroid-isomorphic to family_A({alpha}): {perm is not None}")
