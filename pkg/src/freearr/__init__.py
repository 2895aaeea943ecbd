"""Exact computations on central real hyperplane arrangements: intersection
lattices, logarithmic derivations, certified freeness, chambers and simple
triangles."""

__version__ = "0.1.0"

from .arrangement import (
    Arrangement,
    LinearForm,
    delete,
    defining_polynomial,
    essentialize,
    family_A,
    family_B,
    family_boolean,
    family_braid,
    make_arrangement,
    normalize_form,
    rank,
    restrict,
)
from .chambers import enumerate_chambers, find_simple_triangles, is_simplicial, kpi1_verdict, plot_svg
from .derivations import Derivation, derivation_dim, is_member, saito_check, terao_basis
from .freeness import decide, load_certificate, prove_free_AD, prove_nonfree, verify_certificate
from .lattice import (
    char_poly,
    intersection_lattice,
    is_supersolvable,
    lattices_equal_labeled,
    matroid_isomorphism,
    num_chambers,
    poincare_poly,
)
