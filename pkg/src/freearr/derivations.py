"""Logarithmic derivations of an arrangement: membership, Saito's criterion,
graded dimensions and the explicit degree-4 basis for the 3-dimensional family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangement import Arrangement, defining_polynomial
from .exactmath import (
    Monomial,
    MvPoly,
    as_rational,
    monomials,
    nullspace,
    poly_det,
    reduce_mod_linear,
    sparse_rank,
)


@dataclass(frozen=True)
class Derivation:
    """theta = sum_i coeffs[i] * d/dx_i.

    All nonzero coefficients must be homogeneous of one common degree; the
    zero derivation is allowed and has degree None.
    """

    coeffs: Tuple[MvPoly, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a derivation needs at least one coefficient")
        n = self.coeffs[0].nvars
        if len(self.coeffs) != n or any(c.nvars != n for c in self.coeffs):
            raise ValueError("need one coefficient per variable, all in the same ring")
        degrees = {c.degree() for c in self.coeffs if not c.is_zero()}
        if len(degrees) > 1 or not all(c.is_homogeneous() for c in self.coeffs):
            raise ValueError("coefficients must be homogeneous of a common degree")

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> Optional[int]:
        return next((c.degree() for c in self.coeffs if not c.is_zero()), None)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    @classmethod
    def euler(cls, dim: int) -> "Derivation":
        return cls(tuple(MvPoly.var(i, dim) for i in range(dim)))

    @classmethod
    def zero(cls, dim: int) -> "Derivation":
        return cls(tuple(MvPoly.zero(dim) for _ in range(dim)))

    def __str__(self) -> str:
        from .exactmath import var_names

        names = var_names(self.dim)
        parts = [f"({c}) d/d{n}" for c, n in zip(self.coeffs, names) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


def apply(theta: Derivation, p: MvPoly) -> MvPoly:
    if theta.dim != p.nvars:
        raise ValueError("derivation and polynomial live in different rings")
    out = MvPoly.zero(p.nvars)
    for i, f in enumerate(theta.coeffs):
        if not f.is_zero():
            out = out + f * p.diff(i)
    return out


def is_member(theta: Derivation, a: Arrangement) -> bool:
    """theta(l_H) divisible by l_H for every hyperplane H."""
    if theta.dim != a.dim:
        raise ValueError("derivation and arrangement have different dimensions")
    for h in a.forms:
        l = h.poly()
        if not reduce_mod_linear(apply(theta, l), l).is_zero():
            return False
    return True


@dataclass(frozen=True)
class SaitoResult:
    """Outcome of Saito's criterion.

    ``constant`` is c with det = c * Q when ``is_basis``; otherwise
    ``reason`` is one of membership_failure, degree_mismatch, det_zero,
    det_not_proportional.
    """

    is_basis: bool
    constant: Optional[Fraction] = None
    reason: Optional[str] = None
    determinant: Optional[MvPoly] = None

    def __bool__(self) -> bool:
        return self.is_basis


def saito_check(a: Arrangement, thetas: Sequence[Derivation]) -> SaitoResult:
    if len(thetas) != a.dim:
        raise ValueError(f"need exactly {a.dim} derivations, got {len(thetas)}")
    for t in thetas:
        if t.dim != a.dim:
            raise ValueError("derivation dimension does not match the arrangement")
    if not all(is_member(t, a) for t in thetas):
        return SaitoResult(False, reason="membership_failure")
    det = poly_det([list(t.coeffs) for t in thetas])
    if det.is_zero():
        return SaitoResult(False, reason="det_zero", determinant=det)
    q = defining_polynomial(a)
    if sum(t.degree or 0 for t in thetas) != len(a) or det.degree() != q.degree():
        return SaitoResult(False, reason="degree_mismatch", determinant=det)
    lead = q.leading_monomial()
    c = det.coefficient(lead) / q.coefficient(lead)
    if not c or not (det - q * c).is_zero():
        return SaitoResult(False, reason="det_not_proportional", determinant=det)
    return SaitoResult(True, constant=c, determinant=det)


def terao_basis(alpha) -> List[Derivation]:
    """The three derivations of degrees 1, 4, 4 written down for the family,
    with ``alpha`` substituted and no sign adjustment.

    The factors appear as x + a*y, x + a*z, y + a*z, so as printed these fit
    the arrangement with forms x - (-a)y etc., i.e. ``family_A(-alpha)``.
    """
    a = as_rational(alpha)
    x, y, z = (MvPoly.var(i, 3) for i in range(3))
    zero = MvPoly.zero(3)
    theta1 = Derivation((x, y, z))
    theta2 = Derivation((
        x * (x - z) * (x + z * a) * (x + y * a),
        y * (y - z) * (y + z * a) * (x + y * a),
        zero,
    ))
    theta3 = Derivation((
        x * (x - z) * (x + z * a) * (x + y * (a - 1) - z * a),
        y * (y - z) * (y + z * a) * (x - z) * a,
        zero,
    ))
    return [theta1, theta2, theta3]


# -- graded pieces --------------------------------------------------------------


@dataclass(frozen=True)
class GradedSlice:
    degree: int
    dimension: int
    basis: Optional[Tuple[Derivation, ...]] = None


def _constraint_rows(a: Arrangement, d: int) -> Tuple[List[Dict[int, int]], List[Tuple[int, Monomial]]]:
    """Linear constraints on the coefficients of a degree-d derivation.

    Unknowns are indexed by (component, monomial). For each hyperplane with
    pivot p the constraint is that theta(l_H), reduced by eliminating x_p,
    vanishes; everything is scaled by l_p^d to stay integral.
    """
    n = a.dim
    monos = monomials(n, d)
    unknowns = [(i, m) for i in range(n) for m in monos]
    col = {u: k for k, u in enumerate(unknowns)}
    rows: List[Dict[int, int]] = []
    for h in a.forms:
        p = h.pivot()
        lp = h[p]
        # l_p * x_p = -(sum_{j != p} l_j x_j); powers kept as integer dicts
        sub = {}
        for j in range(n):
            if j != p and h[j]:
                e = [0] * n
                e[j] = 1
                sub[tuple(e)] = -h[j]
        powers = [{(0,) * n: 1}]
        images: Dict[Monomial, Dict[Monomial, int]] = {}
        for m in monos:
            k = m[p]
            while len(powers) <= k:
                powers.append(_mul_int(powers[-1], sub))
            rest = list(m)
            rest[p] = 0
            scale = lp ** (d - k)
            images[m] = {
                tuple(r + s for r, s in zip(rest, mono)): c * scale
                for mono, c in powers[k].items()
            }
        block: Dict[Monomial, Dict[int, int]] = {}
        for i in range(n):
            if not h[i]:
                continue
            for m in monos:
                u = col[(i, m)]
                for mono, c in images[m].items():
                    row = block.setdefault(mono, {})
                    row[u] = row.get(u, 0) + h[i] * c
        rows.extend(r for r in block.values() if any(r.values()))
    return rows, unknowns


def _mul_int(a: Dict[Monomial, int], b: Dict[Monomial, int]) -> Dict[Monomial, int]:
    out: Dict[Monomial, int] = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def derivation_dim(a: Arrangement, d: int, with_basis: bool = False) -> GradedSlice:
    """Dimension over Q of the degree-d part of D(A).

    Computed as (#unknown coefficients) - rank(constraint matrix). With
    ``with_basis`` an explicit basis is extracted from the nullspace.
    """
    if d < 0:
        return GradedSlice(d, 0, () if with_basis else None)
    rows, unknowns = _constraint_rows(a, d)
    if not with_basis:
        return GradedSlice(d, len(unknowns) - sparse_rank(rows))
    dense = [[row.get(k, 0) for k in range(len(unknowns))] for row in rows]
    kernel = nullspace(dense, len(unknowns))
    basis = []
    for vec in kernel:
        comps = [dict() for _ in range(a.dim)]
        for (i, m), v in zip(unknowns, vec):
            if v:
                comps[i][m] = v
        basis.append(Derivation(tuple(MvPoly(a.dim, c) for c in comps)))
    return GradedSlice(d, len(basis), tuple(basis))


def free_hilbert(exponents: Sequence[int], dim: int, d: int) -> int:
    """dim_d of a free module with generators in the given degrees:
    sum_i C(d - e_i + dim - 1, dim - 1)."""
    total = 0
    for e in exponents:
        top = d - e + dim - 1
        if top >= dim - 1:
            total += comb(top, dim - 1)
    return total
