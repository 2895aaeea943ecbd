"""Deciding freeness with checkable certificates.

Free verdicts come with an addition-deletion tree, non-free verdicts with a
characteristic polynomial that has no integer factorization. Both kinds are
serialized to JSON and checked again from scratch.
"""

from freearr import decide, family_A, family_B, load_certificate, verify_certificate
from freearr.freeness import first_hilbert_mismatch

for name, a in [("A(-2)", family_A(-2)), ("A(-1)", family_A(-1)),
                ("B(-2)", family_B(-2)), ("B(0)", family_B(0)), ("B(-1)", family_B(-1))]:
    d = decide(a)
    cert = d.certificate
    text = cert.to_json()
    ok = verify_certificate(load_certificate(text))
    print(f"{name:6s} {d.status:9s} exponents={d.exponents} certificate={cert.kind} "
          f"({len(text)} bytes, re-verified: {ok})")

# B(-1) is not free: its characteristic polynomial has the irreducible factor
# t^2 - 10t + 26. The derivation module also disagrees with the Hilbert
# function that exponents {1, 4, 4, 5} would force.
degree, expected, computed = first_hilbert_mismatch(family_B(-1), (1, 4, 4, 5), 6)
print(f"B(-1): dim D_{degree} is {computed}, a free module with exponents 1,4,4,5 would give {expected}")
