"""Central hyperplane arrangements: canonical forms, deletion, restriction, families."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .exactmath import (
    MvPoly,
    Scalar,
    as_rational,
    mat_rank,
    primitive_integer_vector,
    rref,
    var_names,
)


class LinearForm(tuple):
    """Primitive integer covector with positive leading entry.

    This is the canonical representative of a hyperplane's defining form up
    to scalar multiples; build one with :func:`normalize_form`.
    """

    def __new__(cls, coeffs: Iterable[int]):
        t = tuple(int(c) for c in coeffs)
        if not any(t):
            raise ValueError("a linear form cannot be zero")
        return super().__new__(cls, t)

    @property
    def dim(self) -> int:
        return len(self)

    def pivot(self) -> int:
        return next(i for i, c in enumerate(self) if c)

    def poly(self) -> MvPoly:
        return MvPoly.linear(self)

    def __call__(self, point: Sequence[Scalar]) -> Fraction:
        return sum((Fraction(c) * v for c, v in zip(self, point)), Fraction(0))

    def __str__(self) -> str:
        names = var_names(len(self))
        out = ""
        for c, name in zip(self, names):
            if not c:
                continue
            mag = abs(c)
            term = name if mag == 1 else f"{mag}{name}"
            if not out:
                out = ("-" if c < 0 else "") + term
            else:
                out += (" - " if c < 0 else " + ") + term
        return out

    def __repr__(self) -> str:
        return f"LinearForm({tuple(self)})"


def normalize_form(v: Sequence[Scalar]) -> LinearForm:
    """Canonical primitive integer form proportional to the rational vector ``v``."""
    ints = primitive_integer_vector(v)
    lead = next(c for c in ints if c)
    if lead < 0:
        ints = tuple(-c for c in ints)
    return LinearForm(ints)


@dataclass(frozen=True)
class Arrangement:
    """A central arrangement: ambient dimension plus sorted distinct forms."""

    dim: int
    forms: Tuple[LinearForm, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("ambient dimension must be positive")
        for f in self.forms:
            if len(f) != self.dim:
                raise ValueError(f"form {tuple(f)} does not have length {self.dim}")
        if any(a >= b for a, b in zip(self.forms, self.forms[1:])):
            raise ValueError("forms must be strictly sorted; use make_arrangement")

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __contains__(self, h) -> bool:
        return tuple(h) in set(map(tuple, self.forms))

    def index(self, h: Sequence[int]) -> int:
        try:
            return self.forms.index(LinearForm(h))
        except ValueError:
            raise ValueError(f"{tuple(h)} is not a hyperplane of the arrangement") from None

    def key(self) -> str:
        """Canonical serialization used for memoization and certificates."""
        body = ";".join(",".join(map(str, f)) for f in self.forms)
        return f"{self.dim}|{body}"

    def __str__(self) -> str:
        return "{" + ", ".join(str(f) for f in self.forms) + f"}} in R^{self.dim}"


def make_arrangement(dim: int, raw_forms: Iterable[Sequence[Scalar]]) -> Arrangement:
    forms = set()
    for v in raw_forms:
        if len(v) != dim:
            raise ValueError(f"form {tuple(v)} has length {len(v)}, expected {dim}")
        forms.add(normalize_form(v))
    return Arrangement(dim, tuple(sorted(forms)))


def from_forms(dim: int, forms: Iterable[LinearForm]) -> Arrangement:
    """Fast constructor for forms that are already canonical."""
    return Arrangement(dim, tuple(sorted(set(forms))))


# -- families -----------------------------------------------------------------


def family_A_forms(alpha) -> List[LinearForm]:
    """The nine forms x, y, z, x-y, x-z, y-z, x-ay, x-az, y-az, in that order.

    The list keeps the listing order (and any coincidences at a = 0, 1), so
    index i always names the same hyperplane across parameter values.
    """
    a = as_rational(alpha)
    raw = [
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (1, -1, 0), (1, 0, -1), (0, 1, -1),
        (1, -a, 0), (1, 0, -a), (0, 1, -a),
    ]
    return [normalize_form(v) for v in raw]


def family_B_forms(alpha) -> List[LinearForm]:
    """The fourteen forms of the four-dimensional family, in listing order.

    Indices 10..13 are x-az, y-az, x-aw, y-aw: restricting to any of them
    gives a copy of the three-dimensional family.
    """
    a = as_rational(alpha)
    raw = [
        (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
        (1, -1, 0, 0), (1, 0, -1, 0), (1, 0, 0, -1),
        (0, 1, -1, 0), (0, 1, 0, -1), (0, 0, 1, -1),
        (1, 0, -a, 0), (0, 1, -a, 0), (1, 0, 0, -a), (0, 1, 0, -a),
    ]
    return [normalize_form(v) for v in raw]


def family_A(alpha) -> Arrangement:
    return from_forms(3, family_A_forms(alpha))


def family_B(alpha) -> Arrangement:
    return from_forms(4, family_B_forms(alpha))


def family_braid(d: int) -> Arrangement:
    """The forms x_i - x_j, i < j, in R^d."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    raw = []
    for i, j in combinations(range(d), 2):
        v = [0] * d
        v[i], v[j] = 1, -1
        raw.append(v)
    return make_arrangement(d, raw)


def family_boolean(d: int) -> Arrangement:
    """The d coordinate hyperplanes."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return make_arrangement(d, [[int(i == j) for j in range(d)] for i in range(d)])


# -- operators ----------------------------------------------------------------


def delete(a: Arrangement, h: Sequence[int]) -> Arrangement:
    idx = a.index(h)
    return Arrangement(a.dim, a.forms[:idx] + a.forms[idx + 1:])


def add(a: Arrangement, h: Sequence[Scalar]) -> Arrangement:
    return from_forms(a.dim, a.forms + (normalize_form(h),))


@dataclass(frozen=True)
class RestrictionResult:
    """The arrangement induced on a hyperplane H.

    ``embedding`` is a dim x (dim-1) integer matrix (list of rows) whose
    columns span H; ``provenance`` maps each restricted form to the original
    forms inducing it.
    """

    restricted: Arrangement
    embedding: Tuple[Tuple[int, ...], ...]
    provenance: Dict[LinearForm, FrozenSet[LinearForm]] = field(compare=False)


def kernel_basis(h: Sequence[int]) -> List[Tuple[int, ...]]:
    """Deterministic integer basis of ker(h).

    With p the pivot of h, the j-th vector is h_p e_j - h_j e_p for j != p,
    made primitive.
    """
    h = tuple(int(c) for c in h)
    p = next(i for i, c in enumerate(h) if c)
    basis = []
    for j in range(len(h)):
        if j == p:
            continue
        v = [0] * len(h)
        v[j] = h[p]
        v[p] -= h[j]
        basis.append(primitive_integer_vector(v))
    return basis


def restrict(a: Arrangement, h: Sequence[int]) -> RestrictionResult:
    if a.dim < 2:
        raise ValueError("restriction needs ambient dimension at least 2")
    a.index(h)
    h = LinearForm(h)
    basis = kernel_basis(h)
    embedding = tuple(tuple(basis[k][i] for k in range(len(basis))) for i in range(a.dim))
    provenance: Dict[LinearForm, set] = {}
    for f in a.forms:
        if f == h:
            continue
        pulled = [sum(f[i] * col[i] for i in range(a.dim)) for col in basis]
        if not any(pulled):
            raise AssertionError(f"{f} vanishes on {h}: arrangement is not simple")
        provenance.setdefault(normalize_form(pulled), set()).add(f)
    restricted = Arrangement(a.dim - 1, tuple(sorted(provenance)))
    return RestrictionResult(
        restricted, embedding, {k: frozenset(v) for k, v in provenance.items()}
    )


def defining_polynomial(a: Arrangement) -> MvPoly:
    q = MvPoly.const(1, a.dim)
    for f in a.forms:
        q = q * f.poly()
    return q


def rank(a: Arrangement) -> int:
    return mat_rank(a.forms) if a.forms else 0


def essentialize(a: Arrangement) -> Arrangement:
    """The essential arrangement with the same matroid, in R^rank.

    Forms are rewritten in the coordinates of the reduced row basis of their
    span. An empty arrangement becomes the empty arrangement in R^1.
    """
    r = rank(a)
    if r == a.dim:
        return a
    if r == 0:
        return Arrangement(1, ())
    basis, pivots = rref(a.forms)
    # in reduced echelon form, the coordinate of f along basis row k is f[pivot_k]
    return make_arrangement(r, [[f[p] for p in pivots] for f in a.forms])


# -- text format ----------------------------------------------------------------


def dumps(a: Arrangement) -> str:
    lines = [f"arrangement dim={a.dim}"]
    lines += [" ".join(str(c) for c in f) for f in a.forms]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Arrangement:
    """Parse the line-oriented arrangement format.

    The first non-comment line is ``arrangement dim=<d>``; every further
    non-empty line holds d rationals (``p/q`` or integers). ``#`` starts a
    comment.
    """
    rows = []
    dim = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            head = line.split()
            if len(head) != 2 or head[0] != "arrangement" or not head[1].startswith("dim="):
                raise ValueError(f"line {lineno}: expected 'arrangement dim=<d>'")
            try:
                dim = int(head[1][4:])
            except ValueError:
                raise ValueError(f"line {lineno}: bad dimension {head[1][4:]!r}") from None
            if dim < 1:
                raise ValueError(f"line {lineno}: dimension must be positive")
            continue
        try:
            vals = [as_rational(tok) for tok in line.split()]
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if len(vals) != dim:
            raise ValueError(f"line {lineno}: expected {dim} entries, got {len(vals)}")
        if not any(vals):
            raise ValueError(f"line {lineno}: zero form")
        rows.append(vals)
    if dim is None:
        raise ValueError("missing 'arrangement dim=<d>' header")
    return make_arrangement(dim, rows)


def load(path) -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(a: Arrangement, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(a))
