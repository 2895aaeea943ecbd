import random
from fractions import Fraction
from itertools import combinations

import pytest

from freearr.arrangement import (
    delete,
    family_A,
    family_A_forms,
    family_B,
    family_boolean,
    family_braid,
    from_forms,
    make_arrangement,
    rank,
    restrict,
)
from freearr.exactmath import mat_rank
from freearr.lattice import (
    CharPoly,
    char_poly,
    intersection_lattice,
    is_supersolvable,
    labeled_flats,
    lattices_equal_labeled,
    matroid_isomorphism,
    modular_chain,
    modular_flats,
    natural_bijection,
    num_chambers,
    poincare_poly,
)


def whitney_chi(a):
    """chi(t) = sum over all subsets S of (-1)^|S| t^(dim - rank S)."""
    coeffs = [0] * (a.dim + 1)
    forms = list(a.forms)
    for k in range(len(forms) + 1):
        for sub in combinations(forms, k):
            r = mat_rank(sub) if sub else 0
            coeffs[a.dim - r] += (-1) ** k
    return tuple(coeffs)


def brute_flats(a):
    """Distinct closures of all subsets, counted by rank."""
    forms = list(a.forms)
    seen = {}
    for k in range(len(forms) + 1):
        for sub in combinations(range(len(forms)), k):
            r = mat_rank([forms[i] for i in sub]) if sub else 0
            closure = frozenset(
                j for j in range(len(forms))
                if mat_rank([forms[i] for i in sub] + [forms[j]]) == r
            )
            seen[closure] = r
    counts = [0] * (max(seen.values()) + 1)
    for r in seen.values():
        counts[r] += 1
    return counts, set(seen)


def test_small_lattices():
    assert intersection_lattice(family_boolean(2)).counts() == [1, 2, 1]
    assert len(intersection_lattice(family_braid(3))) == 5


def test_family_A_flat_counts_against_brute_force():
    a = family_A(-2)
    counts, supports = brute_flats(a)
    lat = intersection_lattice(a)
    assert lat.counts() == counts == [1, 9, 15, 1]
    assert lat.supports() == supports


@pytest.mark.parametrize("a, expected", [
    (family_boolean(3), CharPoly.from_roots([1, 1, 1])),
    (family_braid(3), CharPoly.from_roots([0, 1, 2])),
    (family_A(-2), CharPoly.from_roots([1, 4, 4])),
])
def test_char_poly_examples(a, expected):
    assert whitney_chi(a) == expected.coeffs
    assert char_poly(a) == expected


def test_generic_four_planes():
    a = make_arrangement(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    chi = char_poly(a)
    assert chi.coeffs == whitney_chi(a) == (-3, 6, -4, 1)  # (t-1)(t^2-3t+3)
    search = chi.integer_roots()
    assert search.roots == (1,) and search.residual == (3, -3, 1)


def test_num_chambers():
    assert num_chambers(family_boolean(3)) == 8
    assert num_chambers(family_A(-1)) == 48
    assert num_chambers(family_A(-2)) == 50


def test_poincare():
    assert poincare_poly(family_boolean(3)) == (1, 3, 3, 1)
    assert poincare_poly(make_arrangement(2, [])) == (1, 0, 0)
    # (1+t)(1+4t)^2
    assert poincare_poly(family_A(-2)) == (1, 9, 24, 16)


def random_subarrangements(a, count, seed, min_size=1):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(min_size, len(a))
        out.append(from_forms(a.dim, rng.sample(list(a.forms), k)))
    return out


@pytest.mark.parametrize("a", random_subarrangements(family_B(-2), 25, seed=7)
                         + [family_A(-1), family_A(3), family_B(-1)])
def test_deletion_restriction_recurrence(a):
    chi = char_poly(a)
    for h in a.forms:
        assert chi == char_poly(delete(a, h)) - char_poly(restrict(a, h).restricted)


@pytest.mark.parametrize("a", [family_A(-2), family_B(-1), family_braid(4)]
                         + random_subarrangements(family_B(3), 5, seed=3))
def test_mobius_invariants(a):
    lat = intersection_lattice(a)
    assert lat.mu(lat.bottom) == 1
    for x in lat.flats:
        assert (-1) ** x.rank * lat.mu(x) > 0
        if x.rank:
            assert sum(lat.mu(y) for y in lat.below(x)) + lat.mu(x) == 0
    assert len(lat.ranks[1]) == len(a)
    if len(a):
        assert char_poly(a)(1) == 0


def test_lattices_equal_labeled():
    a = family_A(-2)
    assert lattices_equal_labeled(a, a, list(range(len(a))))
    fb, b = family_A_forms(-3), family_A(-3)
    bij = natural_bijection(family_A_forms(-2), a, fb, b)
    assert lattices_equal_labeled(a, b, bij)
    c = family_A(-1)
    assert not lattices_equal_labeled(a, c, natural_bijection(family_A_forms(-2), a, family_A_forms(-1), c))
    with pytest.raises(ValueError):
        lattices_equal_labeled(a, family_A(1), list(range(9)))


def test_labeled_flats_shows_coincidences():
    generic = labeled_flats(family_A_forms(-2))
    assert labeled_flats(family_A_forms(Fraction(1, 2))) == generic
    assert labeled_flats(family_A_forms(1)) != generic
    assert labeled_flats(family_A_forms(-1)) != generic


def test_matroid_isomorphism():
    a = family_A(-2)
    perm = matroid_isomorphism(a, family_A(2))
    assert perm is not None
    assert lattices_equal_labeled(a, family_A(2), perm)
    assert matroid_isomorphism(a, family_A(-1)) is None
    assert matroid_isomorphism(family_boolean(3), family_braid(3)) is None


def test_supersolvable():
    for d in (2, 3, 4):
        b = family_boolean(d)
        assert len(modular_flats(intersection_lattice(b))) == len(intersection_lattice(b))
        assert is_supersolvable(b)
    assert is_supersolvable(family_braid(4))
    chain = modular_chain(intersection_lattice(family_braid(4)))
    assert [f.rank for f in chain] == [0, 1, 2, 3]
    assert not is_supersolvable(family_A(-2))
    assert is_supersolvable(family_A(-1))  # B3 is supersolvable as well


def test_supersolvable_brute_force_rank3():
    # rank 3: supersolvable iff some line X is modular, i.e. every pair of
    # hyperplanes meets in a line which shares a hyperplane with X
    for a in [family_A(-2), family_A(-1), family_A(1), family_A(2)]:
        lat = intersection_lattice(a)
        lines = lat.ranks[2]

        def modular_line(x):
            return all(
                any(p.support & x.support for p in lines if {i, j} <= p.support)
                for i, j in combinations(range(len(a)), 2)
            )

        assert is_supersolvable(a) == any(modular_line(x) for x in lines)
