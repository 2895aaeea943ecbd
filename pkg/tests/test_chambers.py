import math
import random
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from freearr.arrangement import (
    family_A,
    family_boolean,
    family_braid,
    from_forms,
    kernel_basis,
    make_arrangement,
    normalize_form,
    rank,
)
from freearr.chambers import (
    enumerate_chambers,
    find_simple_triangles,
    is_simplicial,
    kpi1_verdict,
    plot_svg,
)
from freearr.lattice import num_chambers

SVG = "{http://www.w3.org/2000/svg}"


def rank3_subarrangements(a, count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        sub = from_forms(3, rng.sample(list(a.forms), rng.randint(3, len(a))))
        if rank(sub) == 3:
            out.append(sub)
    return out


def planar_sign_vectors(forms2):
    """Sign vectors of the sectors of a central line arrangement in R^2."""
    dirs = []
    for g in forms2:
        dirs += [(-g[1], g[0]), (g[1], -g[0])]
    dirs.sort(key=lambda d: math.atan2(d[1], d[0]))
    out = set()
    for k in range(len(dirs)):
        a, b = dirs[k], dirs[(k + 1) % len(dirs)]
        p = (a[0] + b[0], a[1] + b[1])
        out.add(tuple((g[0] * p[0] + g[1] * p[1] > 0) - (g[0] * p[0] + g[1] * p[1] < 0) for g in forms2))
    return out


def walls_oracle(a, chamber):
    """Form i is a wall iff the chamber's other signs are realized by a sector
    of the restriction to H_i."""
    walls = set()
    for i, h in enumerate(a.forms):
        e1, e2 = kernel_basis(h)
        classes = {}
        ok = True
        for j, f in enumerate(a.forms):
            if j == i:
                continue
            pulled = (sum(c * v for c, v in zip(f, e1)), sum(c * v for c, v in zip(f, e2)))
            g = normalize_form(pulled)
            lam = Fraction(pulled[0], g[0]) if g[0] else Fraction(pulled[1], g[1])
            s = chamber.signs[j] * (1 if lam > 0 else -1)
            if classes.setdefault(tuple(g), s) != s:
                ok = False
        if not ok:
            continue
        forms2 = sorted(classes)
        target = tuple(classes[g] for g in forms2)
        if len(forms2) == 1 or target in planar_sign_vectors(forms2):
            walls.add(i)
    return walls


CASES = [family_boolean(3), family_A(-1), family_A(-2), family_A(1), family_A(2)]


@pytest.mark.parametrize("a, expected", [(family_boolean(3), 8), (family_A(-1), 48), (family_A(-2), 50)])
def test_chamber_counts(a, expected):
    assert len(enumerate_chambers(a)) == expected == num_chambers(a)


@pytest.mark.parametrize("a", rank3_subarrangements(family_A(-2), 20, seed=2024))
def test_zaslavsky_on_subarrangements(a):
    assert len(enumerate_chambers(a)) == num_chambers(a)


@pytest.mark.parametrize("a", CASES + rank3_subarrangements(family_A(-3), 4, seed=1))
def test_chamber_invariants(a):
    chambers = enumerate_chambers(a)
    signs = [c.signs for c in chambers]
    assert len(set(signs)) == len(signs)
    assert signs == sorted(signs)
    as_set = set(signs)
    for c in chambers:
        for f, s in zip(a.forms, c.signs):
            value = sum(x * y for x, y in zip(f, c.witness))
            assert value * s > 0
        assert len(c.walls) >= 3
        assert tuple(-s for s in c.signs) in as_set


@pytest.mark.parametrize("a", [family_A(-2), family_A(-1), family_boolean(3)])
def test_walls_match_restriction_oracle(a):
    for c in enumerate_chambers(a):
        assert c.walls == walls_oracle(a, c)


def test_boolean_octants():
    for c in enumerate_chambers(family_boolean(3)):
        assert c.walls == {0, 1, 2}


def test_is_simplicial():
    assert is_simplicial(family_boolean(3))
    assert is_simplicial(family_A(-1))
    assert not is_simplicial(family_A(-2))


def _wall_names(a, report):
    return {str(a.forms[i]) for i in report.walls}


@pytest.mark.parametrize("alpha", [-2, -3, Fraction(-1, 2), -5])
def test_simple_triangle_in_negative_family(alpha):
    a = family_A(alpha)
    want = {normalize_form(v) for v in ([1, 0, -1], [1, -alpha, 0], [0, 1, -alpha])}
    reports = find_simple_triangles(a)
    assert any({a.forms[i] for i in r.walls} == want for r in reports)
    for r in reports:
        assert all(len(v.support) == 2 for v in r.vertices)
        assert all(set(v.support) <= set(r.walls) for v in r.vertices)


def test_simple_triangles_other_cases():
    assert find_simple_triangles(family_A(-1)) == []
    assert len(find_simple_triangles(family_boolean(3))) == 8


def test_kpi1_verdicts():
    v = kpi1_verdict(family_A(-2))
    assert (v.status, v.reason) == ("NotKPi1", "simple_triangle")
    assert v.triangle is not None
    assert (kpi1_verdict(family_A(-1)).status, kpi1_verdict(family_A(-1)).reason) == ("KPi1", "simplicial")
    assert kpi1_verdict(family_boolean(3)).reason == "simplicial"
    assert kpi1_verdict(family_braid(3)).status == "KPi1"
    assert kpi1_verdict(family_braid(4)).status == "KPi1"  # rank 3 after essentializing


def test_boolean_guard():
    # four planes in general position: not simplicial, no modular line, has triangles
    generic = make_arrangement(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    assert kpi1_verdict(generic).status == "NotKPi1"
    # three coordinate planes carry simple triangles but are simplicial
    assert kpi1_verdict(family_boolean(3)).status == "KPi1"


def test_chambers_precondition():
    with pytest.raises(ValueError):
        enumerate_chambers(family_braid(3))
    with pytest.raises(ValueError):
        enumerate_chambers(family_braid(4))


def _svg_elements(svg, tag):
    root = ET.fromstring(svg)
    return root.findall(f".//{SVG}{tag}")


def test_plot_family_A():
    svg = plot_svg(family_A(-2), (0, 0, 1))
    assert len(_svg_elements(svg, "line")) == 8
    tris = _svg_elements(svg, "polygon")
    assert len(tris) >= 1
    assert {"x + 2y", "x - z", "y + 2z"} == set(tris[0].get("data-walls").split(", "))
    svg = plot_svg(family_A(-1), (0, 0, 1))
    assert len(_svg_elements(svg, "line")) == 8 and not _svg_elements(svg, "polygon")


def test_plot_boolean_and_errors():
    svg = plot_svg(family_boolean(3), (0, 0, 1))
    assert len(_svg_elements(svg, "line")) == 2
    with pytest.raises(ValueError):
        plot_svg(family_A(-2), (1, 1, 1))
    with pytest.raises(ValueError):
        plot_svg(family_braid(3), (1, -1, 0))


def test_plot_is_deterministic():
    assert plot_svg(family_A(-3), (1, 0, 0)) == plot_svg(family_A(-3), (1, 0, 0))
