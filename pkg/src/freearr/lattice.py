"""Intersection lattices, Möbius values, characteristic polynomials, supersolvability."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .arrangement import Arrangement, LinearForm, from_forms

Support = FrozenSet[int]


@dataclass(frozen=True)
class Flat:
    """An intersection of hyperplanes.

    ``support`` holds the indices of every form vanishing on the subspace;
    ``normals`` is the reduced row basis of the span of those forms, so the
    subspace itself is their common kernel.
    """

    support: Support
    rank: int
    normals: Tuple[Tuple[Fraction, ...], ...]

    def dim(self, ambient: int) -> int:
        return ambient - self.rank


class _Span:
    """Incrementally reduced row space used for closure computations."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: List[List[Fraction]] = []
        self.pivots: List[int] = []

    def copy(self) -> "_Span":
        s = _Span(self.dim)
        s.rows = [r[:] for r in self.rows]
        s.pivots = self.pivots[:]
        return s

    def residue(self, v: Sequence[int]) -> List[Fraction]:
        r = [Fraction(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            if r[p]:
                f = r[p]
                r = [a - f * b for a, b in zip(r, row)]
        return r

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.residue(v))

    def add(self, v: Sequence[int]) -> bool:
        r = self.residue(v)
        p = next((i for i, x in enumerate(r) if x), None)
        if p is None:
            return False
        inv = 1 / r[p]
        r = [x * inv for x in r]
        for k, row in enumerate(self.rows):
            if row[p]:
                f = row[p]
                self.rows[k] = [a - f * b for a, b in zip(row, r)]
        self.rows.append(r)
        self.pivots.append(p)
        return True

    def canonical(self) -> Tuple[Tuple[Fraction, ...], ...]:
        order = sorted(range(len(self.pivots)), key=lambda k: self.pivots[k])
        return tuple(tuple(self.rows[k]) for k in order)


class IntersectionLattice:
    """All flats of an arrangement, graded by rank, with Möbius values mu(V, X)."""

    def __init__(self, arrangement: Arrangement):
        self.arrangement = arrangement
        forms = arrangement.forms
        n = len(forms)
        bottom = Flat(frozenset(), 0, ())
        self.ranks: List[List[Flat]] = [[bottom]]
        spans: Dict[Support, _Span] = {bottom.support: _Span(arrangement.dim)}
        self._by_support: Dict[Support, Flat] = {bottom.support: bottom}
        while True:
            current = self.ranks[-1]
            nxt: Dict[Support, Flat] = {}
            for flat in current:
                base = spans[flat.support]
                done = set(flat.support)
                for i in range(n):
                    # an atom inside an already found cover of this flat adds nothing new
                    if i in done:
                        continue
                    span = base.copy()
                    span.add(forms[i])
                    support = frozenset(
                        j for j in range(n)
                        if j in flat.support or j == i or span.contains(forms[j])
                    )
                    done |= support
                    if support not in nxt:
                        nxt[support] = Flat(support, flat.rank + 1, span.canonical())
                        spans[support] = span
            if not nxt:
                break
            layer = sorted(nxt.values(), key=lambda f: sorted(f.support))
            self.ranks.append(layer)
            for f in layer:
                self._by_support[f.support] = f
        self.mobius: Dict[Support, int] = {}
        for layer in self.ranks:
            for x in layer:
                if not x.support:
                    self.mobius[x.support] = 1
                    continue
                self.mobius[x.support] = -sum(
                    self.mobius[y.support] for y in self.below(x)
                )

    # -- structure --------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.ranks) - 1

    @property
    def flats(self) -> List[Flat]:
        return [f for layer in self.ranks for f in layer]

    @property
    def top(self) -> Flat:
        return self.ranks[-1][0]

    @property
    def bottom(self) -> Flat:
        return self.ranks[0][0]

    def __len__(self) -> int:
        return sum(len(layer) for layer in self.ranks)

    def counts(self) -> List[int]:
        return [len(layer) for layer in self.ranks]

    def flat(self, support) -> Flat:
        return self._by_support[frozenset(support)]

    def supports(self) -> FrozenSet[Support]:
        return frozenset(self._by_support)

    def below(self, x: Flat) -> List[Flat]:
        return [y for layer in self.ranks[: x.rank] for y in layer if y.support < x.support]

    @staticmethod
    def leq(x: Flat, y: Flat) -> bool:
        return x.support <= y.support

    def meet(self, x: Flat, y: Flat) -> Flat:
        return self._by_support[x.support & y.support]

    def join(self, x: Flat, y: Flat) -> Flat:
        union = x.support | y.support
        for layer in self.ranks[max(x.rank, y.rank):]:
            for f in layer:
                if union <= f.support:
                    return f
        raise AssertionError("lattice has no top element")

    def mu(self, x: Flat) -> int:
        return self.mobius[x.support]


@lru_cache(maxsize=8192)
def intersection_lattice(a: Arrangement) -> IntersectionLattice:
    return IntersectionLattice(a)


# -- characteristic polynomial ------------------------------------------------


@dataclass(frozen=True)
class RootSearch:
    """Transcript of the integer-root search on a characteristic polynomial.

    ``roots`` are the non-negative integer roots found (with multiplicity),
    ``tested`` lists (candidate, divides) pairs in the order tried and
    ``residual`` is what is left after dividing the roots out.
    """

    roots: Tuple[int, ...]
    tested: Tuple[Tuple[int, bool], ...]
    residual: Tuple[int, ...]

    @property
    def complete(self) -> bool:
        return len(self.residual) == 1


@dataclass(frozen=True)
class CharPoly:
    """Integer polynomial in t, coefficients ordered from t^0 upwards."""

    coeffs: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * t + c
        return total

    def __sub__(self, other: "CharPoly") -> "CharPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        out = [x - y for x, y in zip(a, b)]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return CharPoly(tuple(out))

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "CharPoly":
        coeffs = [1]
        for r in roots:
            shifted = [0] + coeffs
            coeffs = [s - r * c for s, c in zip(shifted, coeffs + [0])]
        return cls(tuple(coeffs))

    def integer_roots(self) -> RootSearch:
        """Divide out non-negative integer roots until none is left.

        Roots 0 are read off the low zero coefficients; other candidates are
        the positive divisors of the lowest nonzero coefficient.
        """
        coeffs = list(self.coeffs)
        roots: List[int] = []
        tested: List[Tuple[int, bool]] = []
        while len(coeffs) > 1 and coeffs[0] == 0:
            coeffs.pop(0)
            roots.append(0)
            tested.append((0, True))
        while len(coeffs) > 1:
            const = abs(coeffs[0])
            found = None
            for r in _divisors(const):
                ok = _horner(coeffs, r) == 0
                tested.append((r, ok))
                if ok:
                    found = r
                    break
            if found is None:
                break
            coeffs = _deflate(coeffs, found)
            roots.append(found)
        return RootSearch(tuple(sorted(roots)), tuple(tested), tuple(coeffs))

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}{mono}" if mono else str(mag))
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for s, b in terms[1:]:
            out += f" {s} {b}"
        return out


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _horner(coeffs: Sequence[int], t: int) -> int:
    total = 0
    for c in reversed(coeffs):
        total = total * t + c
    return total


def _deflate(coeffs: Sequence[int], r: int) -> List[int]:
    """Divide by (t - r); coefficients low to high, remainder assumed zero."""
    high = list(reversed(coeffs))
    out = [high[0]]
    for c in high[1:-1]:
        out.append(c + r * out[-1])
    return list(reversed(out))


def char_poly(a: Arrangement) -> CharPoly:
    """chi(A, t) = sum over flats X of mu(X) t^dim(X)."""
    lat = intersection_lattice(a)
    coeffs = [0] * (a.dim + 1)
    for x in lat.flats:
        coeffs[a.dim - x.rank] += lat.mu(x)
    return CharPoly(tuple(coeffs))


def num_chambers(a: Arrangement) -> int:
    """Zaslavsky's count (-1)^dim chi(-1)."""
    value = char_poly(a)(-1)
    return int(value if a.dim % 2 == 0 else -value)


def poincare_poly(a: Arrangement) -> Tuple[int, ...]:
    """Coefficients (from t^0) of (-t)^dim chi(-1/t); all non-negative."""
    chi = char_poly(a).coeffs
    d = a.dim
    return tuple((-1) ** k * chi[d - k] for k in range(d + 1))


# -- labeled comparison and isomorphism ------------------------------------------


def lattices_equal_labeled(a: Arrangement, b: Arrangement, bijection) -> bool:
    """True iff ``bijection`` (a-index -> b-index) carries L(a) onto L(b)."""
    if len(a) != len(b):
        raise ValueError("arrangements have different sizes")
    mapping = dict(enumerate(bijection)) if not isinstance(bijection, Mapping) else dict(bijection)
    if sorted(mapping) != list(range(len(a))) or sorted(mapping.values()) != list(range(len(b))):
        raise ValueError("bijection must be total and one-to-one")
    la, lb = intersection_lattice(a), intersection_lattice(b)
    image = {frozenset(mapping[i] for i in s) for s in la.supports()}
    return image == lb.supports()


def labeled_flats(forms: Sequence[LinearForm]) -> FrozenSet[Support]:
    """Flats of a listed family of forms, as sets of list positions.

    Repeated forms share every flat, so coincidences at special parameter
    values show up as a different labeled lattice.
    """
    dim = len(forms[0])
    arr = from_forms(dim, forms)
    lat = intersection_lattice(arr)
    positions: Dict[int, List[int]] = {}
    for pos, f in enumerate(forms):
        positions.setdefault(arr.index(f), []).append(pos)
    return frozenset(
        frozenset(p for i in s for p in positions[i]) for s in lat.supports()
    )


def natural_bijection(forms_a: Sequence[LinearForm], a: Arrangement,
                      forms_b: Sequence[LinearForm], b: Arrangement) -> Dict[int, int]:
    """Index map a -> b induced by two listings of the same family."""
    return {a.index(fa): b.index(fb) for fa, fb in zip(forms_a, forms_b)}


def matroid_isomorphism(a: Arrangement, b: Arrangement) -> Optional[Dict[int, int]]:
    """A form bijection a -> b inducing a lattice isomorphism, or None.

    Backtracking over atoms, pruned by per-atom flat profiles and by
    checking every flat as soon as all of its atoms are assigned.
    """
    if len(a) != len(b):
        return None
    la, lb = intersection_lattice(a), intersection_lattice(b)
    if la.counts() != lb.counts():
        return None
    n = len(a)

    def profile(lat: IntersectionLattice, i: int):
        return tuple(sorted((f.rank, len(f.support)) for f in lat.flats if i in f.support))

    pa = [profile(la, i) for i in range(n)]
    pb = [profile(lb, j) for j in range(n)]
    if sorted(pa) != sorted(pb):
        return None
    b_supports = {f.support: f.rank for f in lb.flats}
    order = sorted(range(n), key=lambda i: (sum(1 for j in range(n) if pb[j] == pa[i]), i))
    # flats of a to check once their last atom (in assignment order) is placed
    position = {atom: k for k, atom in enumerate(order)}
    checks: Dict[int, List[Flat]] = {}
    for f in la.flats:
        if f.support:
            last = max(f.support, key=lambda i: position[i])
            checks.setdefault(last, []).append(f)
    mapping: Dict[int, int] = {}
    used = set()

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if j in used or pb[j] != pa[i]:
                continue
            mapping[i] = j
            used.add(j)
            if all(
                b_supports.get(frozenset(mapping[x] for x in f.support)) == f.rank
                for f in checks.get(i, ())
            ) and extend(k + 1):
                return True
            del mapping[i]
            used.discard(j)
        return False

    return dict(mapping) if extend(0) else None


def is_matroid_isomorphic(a: Arrangement, b: Arrangement) -> bool:
    return matroid_isomorphism(a, b) is not None


# -- modularity ---------------------------------------------------------------


def modular_flats(lat: IntersectionLattice) -> List[Flat]:
    """Flats X with r(X) + r(Y) = r(X v Y) + r(X ^ Y) for every flat Y."""
    flats = lat.flats
    out = []
    for x in flats:
        if all(
            x.rank + y.rank == lat.join(x, y).rank + lat.meet(x, y).rank
            for y in flats
        ):
            out.append(x)
    return out


def modular_chain(lat: IntersectionLattice) -> Optional[List[Flat]]:
    """A maximal chain of modular flats from bottom to top, if one exists."""
    modular = {f.support for f in modular_flats(lat)}

    @lru_cache(maxsize=None)
    def climb(support: Support) -> Optional[Tuple[Support, ...]]:
        x = lat.flat(support)
        if x.rank == lat.rank:
            return (support,)
        for y in lat.ranks[x.rank + 1]:
            if y.support in modular and support < y.support:
                rest = climb(y.support)
                if rest is not None:
                    return (support,) + rest
        return None

    chain = climb(lat.bottom.support)
    return None if chain is None else [lat.flat(s) for s in chain]


def is_supersolvable(a: Arrangement) -> bool:
    return modular_chain(intersection_lattice(a)) is not None
