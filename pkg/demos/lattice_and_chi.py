"""Intersection lattice, characteristic polynomial and chamber count.

Walks through family A at a generic and two special parameter values and
shows how coincidences among the lines change the lattice.
"""

from fractions import Fraction

from freearr import char_poly, family_A, intersection_lattice, num_chambers, poincare_poly
from freearr.lattice import labeled_flats
from freearr.arrangement import family_A_forms

for alpha in (Fraction(-2), Fraction(-1), Fraction(1), Fraction(1, 2)):
    a = family_A(alpha)
    lat = intersection_lattice(a)
    chi = char_poly(a)
    print(f"alpha = {alpha}: {len(a)} planes, flats by rank {lat.counts()}")
    print(f"  chi(t) = {chi}, integer roots {chi.integer_roots().roots}")
    print(f"  Poincare polynomial coefficients {poincare_poly(a)}, chambers {num_chambers(a)}")

# The labeled lattice is the same for every generic alpha; it changes exactly
# where two listed forms coincide or three become dependent.
reference = labeled_flats(family_A_forms(-2))
for alpha in (-3, 2, Fraction(1, 2), -1, 1, 0):
    same = labeled_flats(family_A_forms(alpha)) == reference
    print(f"labeled lattice at alpha = {alpha} matches alpha = -2: {same}")
