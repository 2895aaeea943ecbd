"""Chambers of rank-3 central arrangements, walls, simple triangles, K(pi,1) verdicts
and SVG drawings in a projective chart.

Every chamber of an essential rank-3 arrangement is a pointed cone whose
extreme rays lie on lines of the arrangement (rank-2 flats). Chambers are
found by walking once around each such line: the planes through it cut a
small neighbourhood into sectors, and a point pushed slightly off the line
into a sector is an exact interior witness of the chamber there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .arrangement import Arrangement, LinearForm, essentialize, kernel_basis, rank
from .exactmath import mat_rank, primitive_integer_vector, solve
from .lattice import Flat, intersection_lattice, is_supersolvable

Signs = Tuple[int, ...]


@dataclass(frozen=True)
class Chamber:
    """A connected component of the complement.

    ``signs`` holds +1/-1 per form, ``witness`` is an integer point strictly
    inside, ``walls`` the indices of forms carrying a 2-dimensional face and
    ``rays`` the extreme rays (as primitive integer vectors).
    """

    signs: Signs
    witness: Tuple[int, ...]
    walls: FrozenSet[int]
    rays: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class TriangleReport:
    """A chamber with three walls whose pairwise intersections are simple lines."""

    chamber: Chamber
    walls: Tuple[int, int, int]
    vertices: Tuple[Flat, Flat, Flat]


@dataclass(frozen=True)
class Kpi1Verdict:
    status: str  # "KPi1", "NotKPi1" or "Unknown"
    reason: str  # "simplicial", "supersolvable", "simple_triangle" or "none"
    triangle: Optional[TriangleReport] = None


def _dot(f: Sequence[int], v: Sequence) -> Fraction:
    return sum((Fraction(c) * x for c, x in zip(f, v)), Fraction(0))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _cross(a: Sequence, b: Sequence) -> Tuple:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _check_rank3(a: Arrangement) -> None:
    if a.dim != 3 or rank(a) != 3:
        raise ValueError("chamber computations need an essential arrangement of rank 3 in R^3")


def line_direction(flat: Flat) -> Tuple[int, ...]:
    """Primitive integer direction of a rank-2 flat in R^3."""
    n1, n2 = flat.normals
    return primitive_integer_vector(_cross(n1, n2))


def _angle_cmp(u: Tuple[Fraction, Fraction], v: Tuple[Fraction, Fraction]) -> int:
    # exact polar-angle order on [0, 2pi)
    def half(p):
        return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -_sign(c)


def _sectors_around(a: Arrangement, flat: Flat) -> List[Tuple[int, ...]]:
    """Exact interior points of every chamber touching the ray(s) of a line."""
    v = line_direction(flat)
    # complete v to a basis with two standard vectors
    helpers = []
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        if mat_rank([v] + helpers + [e]) == len(helpers) + 2:
            helpers.append(e)
        if len(helpers) == 2:
            break
    ua, ub = helpers
    through = sorted(flat.support)
    boundary = []
    for j in through:
        f = a.forms[j]
        fa, fb = _dot(f, ua), _dot(f, ub)
        boundary += [(-fb, fa), (fb, -fa)]
    boundary.sort(key=cmp_to_key(_angle_cmp))
    points = []
    for ray in (v, tuple(-c for c in v)):
        others = [(a.forms[j], _dot(a.forms[j], ray)) for j in range(len(a)) if j not in flat.support]
        for k in range(len(boundary)):
            s, t = (boundary[k][0] + boundary[(k + 1) % len(boundary)][0],
                    boundary[k][1] + boundary[(k + 1) % len(boundary)][1])
            u = tuple(s * x + t * y for x, y in zip(ua, ub))
            eps = Fraction(1)
            for f, fv in others:
                fu = _dot(f, u)
                if fu:
                    eps = min(eps, abs(fv) / (2 * abs(fu)))
            p = tuple(r + eps * x for r, x in zip(ray, u))
            points.append(primitive_integer_vector(p))
    return points


@lru_cache(maxsize=256)
def enumerate_chambers(a: Arrangement) -> Tuple[Chamber, ...]:
    """All chambers, sorted by sign vector, with exact witnesses and walls."""
    _check_rank3(a)
    lat = intersection_lattice(a)
    lines = lat.ranks[2]
    rays = []
    for flat in lines:
        v = line_direction(flat)
        for r in (v, tuple(-c for c in v)):
            rays.append((r, tuple(_sign(_dot(f, r)) for f in a.forms)))
    found: Dict[Signs, Tuple[int, ...]] = {}
    for flat in lines:
        for p in _sectors_around(a, flat):
            signs = tuple(_sign(_dot(f, p)) for f in a.forms)
            if 0 in signs:
                raise AssertionError("sector witness landed on a hyperplane")
            found.setdefault(signs, p)
    chambers = []
    for signs in sorted(found):
        vertex_rays = [r for r, s in rays if all(x == 0 or x == y for x, y in zip(s, signs))]
        walls = set()
        for i in range(len(a)):
            on = [r for r in vertex_rays if _dot(a.forms[i], r) == 0]
            # two vertex rays on H span the face; their sum is a relative-interior witness
            for r1, r2 in combinations(on, 2):
                mid = tuple(x + y for x, y in zip(r1, r2))
                if all(j == i or _sign(_dot(a.forms[j], mid)) == signs[j] for j in range(len(a))):
                    walls.add(i)
                    break
        chambers.append(Chamber(signs, found[signs], frozenset(walls), tuple(sorted(vertex_rays))))
    return tuple(chambers)


def is_simplicial(a: Arrangement) -> bool:
    for c in enumerate_chambers(a):
        if len(c.walls) != 3 or mat_rank([a.forms[i] for i in c.walls]) != 3:
            return False
    return True


def find_simple_triangles(a: Arrangement) -> List[TriangleReport]:
    lat = intersection_lattice(a)
    reports = []
    for c in enumerate_chambers(a):
        if len(c.walls) != 3:
            continue
        walls = tuple(sorted(c.walls))
        vertices = []
        for i, j in combinations(walls, 2):
            line = next(f for f in lat.ranks[2] if {i, j} <= f.support)
            if len(line.support) != 2:
                break
            vertices.append(line)
        else:
            reports.append(TriangleReport(c, walls, tuple(vertices)))
    return reports


def kpi1_verdict(a: Arrangement) -> Kpi1Verdict:
    """Combine the admitted sufficient conditions into a verdict.

    Rank <= 2 arrangements are always K(pi,1). In rank 3 the order is:
    simplicial, supersolvable, then a simple triangle with at least four
    hyperplanes (the Boolean arrangement has simple-triangle chambers but a
    torus complement). Rank >= 4 only has the supersolvable rule.
    """
    r = rank(a)
    if r <= 2:
        return Kpi1Verdict("KPi1", "simplicial")
    if r > 3:
        if is_supersolvable(a):
            return Kpi1Verdict("KPi1", "supersolvable")
        return Kpi1Verdict("Unknown", "none")
    ess = essentialize(a)
    simplicial = is_simplicial(ess)
    triangles = find_simple_triangles(ess) if len(ess) >= 4 else []
    if simplicial and triangles:
        raise AssertionError("an arrangement cannot be both simplicial and carry a simple triangle")
    if simplicial:
        return Kpi1Verdict("KPi1", "simplicial")
    if is_supersolvable(ess):
        return Kpi1Verdict("KPi1", "supersolvable")
    if triangles:
        return Kpi1Verdict("NotKPi1", "simple_triangle", triangles[0])
    return Kpi1Verdict("Unknown", "none")


# -- SVG ----------------------------------------------------------------------------


def _chart(h: LinearForm):
    """Affine coordinates on {h = 1}: p = p0 + s*e1 + t*e2."""
    e1, e2 = kernel_basis(h)
    p = h.pivot()
    p0 = [Fraction(0)] * 3
    p0[p] = Fraction(1, h[p])
    return p0, e1, e2


def _to_chart(point: Sequence, chart) -> Optional[Tuple[Fraction, Fraction]]:
    p0, e1, e2 = chart
    cols = [[p0[i], e1[i], e2[i]] for i in range(3)]
    lam, ls, lt = solve(cols, list(point))
    if lam == 0:
        return None
    return ls / lam, lt / lam


def _clip(coef: Tuple[Fraction, Fraction, Fraction], box) -> Optional[Tuple[Tuple[float, float], Tuple[float, float]]]:
    """Segment of {c + a s + b t = 0} inside box = (smin, smax, tmin, tmax)."""
    c, a, b = coef
    smin, smax, tmin, tmax = box
    pts = []
    if b:
        for s in (smin, smax):
            t = -(c + a * s) / b
            if tmin <= t <= tmax:
                pts.append((s, t))
    if a:
        for t in (tmin, tmax):
            s = -(c + b * t) / a
            if smin <= s <= smax:
                pts.append((s, t))
    pts = sorted(set(pts))
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def plot_svg(a: Arrangement, infinity: Sequence[int], size: int = 480) -> str:
    """Draw the arrangement in the affine chart where ``infinity`` is the line
    at infinity.

    One <line> per remaining hyperplane, a <circle> per finite vertex and a
    shaded <polygon> per simple triangle not touching the line at infinity.
    Coordinates are exact until the final formatting.
    """
    _check_rank3(a)
    h = LinearForm(infinity)
    hi = a.index(h)
    chart = _chart(h)
    p0, e1, e2 = chart
    lat = intersection_lattice(a)
    drawn = [i for i in range(len(a)) if i != hi]
    coefs = {i: (_dot(a.forms[i], p0), _dot(a.forms[i], e1), _dot(a.forms[i], e2)) for i in drawn}
    vertices = []
    for flat in lat.ranks[2]:
        if hi in flat.support:
            continue
        pt = _to_chart(line_direction(flat), chart)
        if pt is not None:
            vertices.append((pt, flat))
    if vertices:
        ss = [p[0] for p, _ in vertices]
        ts = [p[1] for p, _ in vertices]
        span = max(max(ss) - min(ss), max(ts) - min(ts), Fraction(1))
        pad = span / 5
        box = (min(ss) - pad, max(ss) + pad, min(ts) - pad, max(ts) + pad)
    else:
        box = (Fraction(-1), Fraction(1), Fraction(-1), Fraction(1))
    smin, smax, tmin, tmax = box
    scale = Fraction(size) / max(smax - smin, tmax - tmin)
    width = float((smax - smin) * scale)
    height = float((tmax - tmin) * scale)

    def xy(s, t) -> str:
        return f"{float((s - smin) * scale):.3f},{float((tmax - t) * scale):.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3f}" '
        f'height="{height:.3f}" viewBox="0 0 {width:.3f} {height:.3f}">',
        f"<title>{_escape(str(a))}, {_escape(str(h))} = 0 at infinity</title>",
        f'<rect x="0" y="0" width="{width:.3f}" height="{height:.3f}" fill="white" stroke="none"/>',
    ]
    shaded = set()
    for tri in find_simple_triangles(a) if len(a) >= 4 else []:
        # a chamber and its negative are the same triangle in the projective plane
        if hi in tri.walls or tri.walls in shaded:
            continue
        shaded.add(tri.walls)
        pts = [_to_chart(line_direction(v), chart) for v in tri.vertices]
        if any(p is None for p in pts):
            continue
        label = ", ".join(str(a.forms[i]) for i in tri.walls)
        poly = " ".join(xy(*p) for p in pts)
        out.append(
            f'<polygon class="simple-triangle" data-walls="{_escape(label)}" points="{poly}" '
            f'fill="#f4a261" fill-opacity="0.6" stroke="none"/>'
        )
    for i in drawn:
        seg = _clip(coefs[i], box)
        if seg is None:
            continue
        (s1, t1), (s2, t2) = seg
        x1, y1 = xy(s1, t1).split(",")
        x2, y2 = xy(s2, t2).split(",")
        out.append(
            f'<line class="hyperplane" data-form="{_escape(str(a.forms[i]))}" x1="{x1}" y1="{y1}" '
            f'x2="{x2}" y2="{y2}" stroke="black" stroke-width="1.5"/>'
        )
    for pt, flat in vertices:
        x, y = xy(*pt).split(",")
        r = 2.5 if len(flat.support) == 2 else 4
        out.append(f'<circle class="vertex" data-multiplicity="{len(flat.support)}" cx="{x}" cy="{y}" r="{r}" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
