"""Saito's criterion applied to the explicit derivation basis.

The printed basis with parameter -2 fails membership for family_A(-2) and
is a basis for family_A(2): the parameter enters with the opposite sign.
"""

from freearr import family_A, saito_check, terao_basis

basis = terao_basis(-2)
for theta in basis:
    print(f"degree {theta.degree}: ({', '.join(str(c) for c in theta.coeffs)})")

for alpha in (-2, 2):
    res = saito_check(family_A(alpha), basis)
    status = f"basis, det = {res.constant} * Q" if res.is_basis else f"not a basis ({res.reason})"
    print(f"against family_A({alpha}): {status}")
