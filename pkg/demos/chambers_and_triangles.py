"""Chambers, simple triangles and the K(pi,1) verdict for rank-3 arrangements."""

from fractions import Fraction

from freearr import enumerate_chambers, family_A, find_simple_triangles, kpi1_verdict, num_chambers

for alpha in (-2, -3, Fraction(-1, 2), -1, 1, 2):
    a = family_A(alpha)
    chambers = enumerate_chambers(a)
    triangles = find_simple_triangles(a)
    walls = sorted({tuple(sorted(str(a.forms[i]) for i in t.walls)) for t in triangles})
    verdict = kpi1_verdict(a)
    print(f"alpha = {alpha}: {len(chambers)} chambers (Zaslavsky {num_chambers(a)}), "
          f"{verdict.status} by {verdict.reason}")
    for w in walls:
        print(f"  simple triangle with walls {{{', '.join(w)}}}")

# every chamber carries an exact interior point
c = enumerate_chambers(family_A(-2))[0]
print(f"first chamber of A(-2): signs {c.signs}, witness {tuple(str(v) for v in c.witness)}")
