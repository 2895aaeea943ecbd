"""Exact rational scalars, multivariate polynomials over Q and exact linear algebra.

Scalars are :class:`fractions.Fraction`; nothing here ever touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce as _fold
from itertools import combinations_with_replacement
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

Rational = Fraction
Scalar = Union[int, Fraction]
Monomial = Tuple[int, ...]

VAR_NAMES = ("x", "y", "z", "w")


def var_names(n: int) -> Tuple[str, ...]:
    if n <= len(VAR_NAMES):
        return VAR_NAMES[:n]
    return tuple(f"x{i + 1}" for i in range(n))


def as_rational(value) -> Fraction:
    """Parse ``value`` as an exact rational.

    Accepts ints, Fractions and strings like ``"-3"`` or ``"1/2"``. Floats and
    decimal strings are rejected: the interesting parameter values must be hit
    exactly.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"{value!r} is not an exact rational; write it as p/q")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def monomials(nvars: int, degree: int) -> List[Monomial]:
    """All exponent vectors of total degree ``degree`` in ``nvars`` variables, sorted."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return sorted(out, reverse=True)


class MvPoly:
    """A polynomial in ``nvars`` variables with rational coefficients.

    Terms are stored as a dict from exponent tuples to nonzero Fractions; the
    zero polynomial has no terms. Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Monomial, Scalar]] = None):
        if nvars < 0:
            raise ValueError("variable count must be non-negative")
        self.nvars = nvars
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            if len(mono) != nvars:
                raise ValueError(f"exponent vector {mono} has wrong length for {nvars} variables")
            if coeff:
                clean[tuple(mono)] = Fraction(coeff)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Monomial, Fraction]) -> "MvPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "MvPoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, value: Scalar, nvars: int) -> "MvPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def var(cls, index: int, nvars: int) -> "MvPoly":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range")
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence[Scalar]) -> "MvPoly":
        """The linear form sum(c_i * x_i)."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                exps = [0] * n
                exps[i] = 1
                terms[tuple(exps)] = Fraction(c)
        return cls._raw(n, terms)

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_linear_form(self) -> bool:
        return bool(self.terms) and all(sum(m) == 1 for m in self.terms)

    def linear_coeffs(self) -> List[Fraction]:
        if not self.is_linear_form():
            raise ValueError("not a nonzero homogeneous linear polynomial")
        coeffs = [Fraction(0)] * self.nvars
        for mono, c in self.terms.items():
            coeffs[mono.index(1)] = c
        return coeffs

    def leading_monomial(self) -> Monomial:
        """Largest monomial in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=lambda m: (sum(m), m))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for mono, c in self.terms.items():
            term = c
            for v, e in zip(pt, mono):
                if e:
                    term *= v ** e
            total += term
        return total

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "MvPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MvPoly":
        if isinstance(other, MvPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MvPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return MvPoly._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MvPoly":
        return MvPoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return MvPoly.zero(self.nvars)
            return MvPoly._raw(self.nvars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return MvPoly._raw(self.nvars, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MvPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MvPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, index: int) -> "MvPoly":
        """Partial derivative with respect to variable ``index``."""
        terms = {}
        for mono, c in self.terms.items():
            e = mono[index]
            if e:
                m = list(mono)
                m[index] = e - 1
                terms[tuple(m)] = c * e
        return MvPoly._raw(self.nvars, terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = MvPoly.const(other, self.nvars)
        if not isinstance(other, MvPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MvPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = var_names(self.nvars)
        parts = []
        for mono in sorted(self.terms, key=lambda m: (sum(m), m), reverse=True):
            c = self.terms[mono]
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            mag = abs(c)
            if body and mag == 1:
                text = body
            elif body:
                text = f"{mag}*{body}"
            else:
                text = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out


def poly_arith(a: MvPoly, b: MvPoly, op: str) -> MvPoly:
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials."""
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_det(matrix: Sequence[Sequence[MvPoly]]) -> MvPoly:
    """Determinant of a square matrix of polynomials.

    Cofactor expansion along rows with minors memoized on their column set,
    so the cost is O(n 2^n) polynomial products.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        raise ValueError("empty matrix has no variable count")
    nvars = matrix[0][0].nvars
    for row in matrix:
        for entry in row:
            if entry.nvars != nvars:
                raise ValueError("matrix entries do not share a variable count")

    memo: Dict[Tuple[int, ...], MvPoly] = {}

    def minor(cols: Tuple[int, ...]) -> MvPoly:
        # determinant of rows n-len(cols).. with the given columns
        if not cols:
            return MvPoly.const(1, nvars)
        if cols in memo:
            return memo[cols]
        r = n - len(cols)
        total = MvPoly.zero(nvars)
        for pos, c in enumerate(cols):
            entry = matrix[r][c]
            if entry.is_zero():
                continue
            sub = minor(cols[:pos] + cols[pos + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return minor(tuple(range(n)))


def _pivot(coeffs: Sequence[Fraction]) -> int:
    for i, c in enumerate(coeffs):
        if c:
            return i
    raise ValueError("linear form is zero")


def reduce_mod_linear(p: MvPoly, l: MvPoly) -> MvPoly:
    """Reduce ``p`` modulo the linear form ``l``.

    The first variable with a nonzero coefficient in ``l`` is eliminated by
    substituting its solution of ``l = 0``. The result does not involve that
    variable, is congruent to ``p`` mod ``l``, and is zero exactly when ``l``
    divides ``p``.
    """
    p._check(l)
    if not l.is_linear_form():
        raise ValueError("reduction needs a nonzero homogeneous linear form")
    coeffs = l.linear_coeffs()
    piv = _pivot(coeffs)
    sub_coeffs = [-c / coeffs[piv] if i != piv else Fraction(0) for i, c in enumerate(coeffs)]
    substitute = MvPoly.linear(sub_coeffs)
    powers = [MvPoly.const(1, p.nvars)]
    result = MvPoly.zero(p.nvars)
    for mono, c in p.terms.items():
        e = mono[piv]
        while len(powers) <= e:
            powers.append(powers[-1] * substitute)
        rest = list(mono)
        rest[piv] = 0
        result = result + MvPoly._raw(p.nvars, {tuple(rest): c}) * powers[e]
    return result


def is_divisible_by_linear(p: MvPoly, l: MvPoly) -> bool:
    return reduce_mod_linear(p, l).is_zero()


# -- exact linear algebra ---------------------------------------------------


def _integer_row(row: Iterable[Scalar]) -> Dict[int, int]:
    """Scale a rational row to a primitive sparse integer row."""
    entries = [(j, Fraction(v)) for j, v in enumerate(row) if v]
    return _primitive({j: v for j, v in entries})


def _primitive(row: Dict[int, Fraction]) -> Dict[int, int]:
    if not row:
        return {}
    den = _fold(lambda a, b: a * b // gcd(a, b), (Fraction(v).denominator for v in row.values()), 1)
    ints = {j: int(Fraction(v) * den) for j, v in row.items()}
    g = _fold(gcd, (abs(v) for v in ints.values()), 0)
    return {j: v // g for j, v in ints.items()}


def sparse_rank(rows: Iterable[Dict[int, Scalar]]) -> int:
    """Rank over Q of sparse rows given as {column: value} dicts.

    Fraction-free elimination on primitive integer rows; each row is
    re-normalized by its content after every update to keep entries small.
    """
    pivots: Dict[int, Dict[int, int]] = {}
    for raw in rows:
        row = _primitive({j: Fraction(v) for j, v in raw.items() if v})
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                pivots[col] = row
                break
            a, b = prow[col], row[col]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {}
            for j in set(row) | set(prow):
                v = fa * row.get(j, 0) - fb * prow.get(j, 0)
                if v:
                    new[j] = v
            row = _primitive(new) if new else {}
    return len(pivots)


def mat_rank(m: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank over Q of a dense rational matrix (list of rows)."""
    return sparse_rank({j: v for j, v in enumerate(row) if v} for row in m)


def rref(m: Sequence[Sequence[Scalar]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    rows = [[Fraction(v) for v in row] for row in m]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(m: Sequence[Sequence[Scalar]], ncols: int) -> List[List[Fraction]]:
    """Basis of {v : m v = 0} over Q, one vector per free column."""
    reduced, pivots = rref(m) if m else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(m: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> Optional[List[Fraction]]:
    """One exact solution of m v = rhs, or None when inconsistent."""
    if not m:
        return [] if all(v == 0 for v in rhs) else None
    ncols = len(m[0])
    aug = [list(row) + [b] for row, b in zip(m, rhs)]
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        v[p] = row[ncols]
    return v


def primitive_integer_vector(v: Sequence[Scalar]) -> Tuple[int, ...]:
    """Clear denominators and divide by the content; keeps the direction."""
    fr = [Fraction(x) for x in v]
    if not any(fr):
        raise ValueError("zero vector")
    den = _fold(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = _fold(gcd, (abs(x) for x in ints), 0)
    return tuple(x // g for x in ints)
