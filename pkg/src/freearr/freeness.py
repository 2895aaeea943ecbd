"""Freeness verdicts backed by checkable certificates.

Free arrangements are certified by an Addition-Deletion tree or a Saito
witness; non-free ones by the characteristic polynomial failing to split
into non-negative integer roots, or by a Hilbert-function mismatch against
the only exponents the characteristic polynomial allows. Both non-freeness
rules rest on Terao's factorization theorem, which is admitted (not proved
here) and named in every certificate that uses it.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .arrangement import Arrangement, LinearForm, delete, rank, restrict
from .derivations import Derivation, derivation_dim, free_hilbert, saito_check
from .exactmath import MvPoly
from .lattice import CharPoly, RootSearch, char_poly, intersection_lattice

SCHEMA = "freearr.certificate/1"
TERAO_RULE = "terao_factorization"
DEFAULT_BUDGET = 10_000

Exponents = Tuple[int, ...]


class CertificateError(ValueError):
    """A certificate document is malformed (as opposed to merely wrong)."""


# -- witnesses ------------------------------------------------------------------


@dataclass(frozen=True)
class ADNode:
    """One claim of an Addition-Deletion tree.

    ``rule`` is "base" (rank <= 2, exponents read off directly) or
    "addition": with H = ``hyperplane``, the deletion has exponents
    E - {e} + {e-1} and the restriction has E - {e}, hence E.
    """

    arrangement: Arrangement
    exponents: Exponents
    rule: str
    hyperplane: Optional[LinearForm] = None
    deletion: Optional[str] = None
    restriction: Optional[str] = None


@dataclass(frozen=True)
class AdditionDeletionTree:
    root: str
    nodes: Dict[str, ADNode] = field(hash=False)

    kind = "addition_deletion"


@dataclass(frozen=True)
class SaitoWitness:
    derivations: Tuple[Derivation, ...]
    constant: Fraction

    kind = "saito"


@dataclass(frozen=True)
class ChiRootsWitness:
    chi: Tuple[int, ...]
    search: RootSearch

    kind = "chi_roots"


@dataclass(frozen=True)
class HilbertMismatchWitness:
    chi: Tuple[int, ...]
    exponents: Exponents
    degree: int
    expected: int
    computed: int

    kind = "hilbert_mismatch"


Witness = Union[AdditionDeletionTree, SaitoWitness, ChiRootsWitness, HilbertMismatchWitness]


@dataclass(frozen=True)
class FreenessCertificate:
    verdict: str  # "free" or "not_free"
    arrangement: Arrangement
    witness: Witness
    exponents: Optional[Exponents] = None

    @property
    def kind(self) -> str:
        return self.witness.kind

    def to_dict(self) -> dict:
        return certificate_to_dict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


# -- addition-deletion prover ----------------------------------------------------


def base_exponents(a: Arrangement) -> Optional[Exponents]:
    """Exponents of an arrangement of rank at most 2, None otherwise."""
    r = rank(a)
    if r == 0:
        e = []
    elif r == 1:
        e = [1]
    elif r == 2:
        e = [1, len(a) - 1]
    else:
        return None
    return tuple(sorted(e + [0] * (a.dim - r)))


def chi_exponents(a: Arrangement) -> Optional[Exponents]:
    """Non-negative integer roots of chi when it splits completely, else None."""
    search = char_poly(a).integer_roots()
    return search.roots if search.complete else None


def _ad_step(e_big: Exponents, e_del: Exponents, e_res: Exponents) -> bool:
    """Is there e with e_res + {e} = e_big and e_res + {e-1} = e_del?"""
    big, res = Counter(e_big), Counter(e_res)
    extra = big - res
    if sum(extra.values()) != 1 or res - big:
        return False
    (e,) = extra.elements()
    return e >= 1 and Counter(e_del) == res + Counter([e - 1])


class _BudgetExceeded(Exception):
    pass


class _Prover:
    def __init__(self, budget: int, memo: Optional[Dict[str, Optional[ADNode]]] = None):
        self.budget = budget
        self.visited = 0
        self.memo: Dict[str, Optional[ADNode]] = {} if memo is None else memo

    def prove(self, a: Arrangement) -> Optional[ADNode]:
        key = a.key()
        if key in self.memo:
            return self.memo[key]
        self.visited += 1
        if self.visited > self.budget:
            raise _BudgetExceeded
        node = self._search(a)
        self.memo[key] = node
        return node

    def _search(self, a: Arrangement) -> Optional[ADNode]:
        base = base_exponents(a)
        if base is not None:
            return ADNode(a, base, "base")
        target = chi_exponents(a)
        if target is None:
            return None
        for h, deletion, restriction in self._candidates(a):
            # chi of a free arrangement splits with its exponents; filter cheaply first
            e_del, e_res = chi_exponents(deletion), chi_exponents(restriction)
            if e_del is None or e_res is None or not _ad_step(target, e_del, e_res):
                continue
            res_node = self.prove(restriction)
            if res_node is None:
                continue
            del_node = self.prove(deletion)
            if del_node is None:
                continue
            if _ad_step(target, del_node.exponents, res_node.exponents):
                return ADNode(a, target, "addition", h, deletion.key(), restriction.key())
        return None

    @staticmethod
    def _candidates(a: Arrangement):
        out = []
        for h in a.forms:
            res = restrict(a, h).restricted
            out.append((len(intersection_lattice(res)), h, delete(a, h), res))
        out.sort(key=lambda t: (t[0], t[1]))
        return [(h, d, r) for _, h, d, r in out]


def prove_free_AD(a: Arrangement, budget: int = DEFAULT_BUDGET,
                  memo: Optional[dict] = None) -> Optional[FreenessCertificate]:
    """Search for an Addition-Deletion proof of freeness.

    Returns a certificate, or None when the search fails or visits more
    than ``budget`` arrangements. ``memo`` may be shared between calls; it
    is keyed by canonical arrangement, so sharing never changes a verdict.
    """
    prover = _Prover(budget, memo)
    try:
        root = prover.prove(a)
    except _BudgetExceeded:
        return None
    if root is None:
        return None
    nodes: Dict[str, ADNode] = {}
    stack = [a.key()]
    while stack:
        key = stack.pop()
        if key in nodes:
            continue
        node = prover.memo[key]
        nodes[key] = node
        if node.rule == "addition":
            stack += [node.deletion, node.restriction]
    tree = AdditionDeletionTree(a.key(), dict(sorted(nodes.items())))
    return FreenessCertificate("free", a, tree, root.exponents)


def saito_certificate(a: Arrangement, thetas: Sequence[Derivation]) -> Optional[FreenessCertificate]:
    result = saito_check(a, thetas)
    if not result.is_basis:
        return None
    exps = tuple(sorted(t.degree or 0 for t in thetas))
    return FreenessCertificate("free", a, SaitoWitness(tuple(thetas), result.constant), exps)


# -- non-freeness ---------------------------------------------------------------


def prove_nonfree(a: Arrangement) -> Optional[FreenessCertificate]:
    """Certify non-freeness, or return None when neither rule applies."""
    chi = char_poly(a)
    search = chi.integer_roots()
    if not search.complete:
        return FreenessCertificate("not_free", a, ChiRootsWitness(chi.coeffs, search))
    exps = search.roots
    for d in range(0, max(exps, default=0) + 2):
        expected = free_hilbert(exps, a.dim, d)
        computed = derivation_dim(a, d).dimension
        if expected != computed:
            witness = HilbertMismatchWitness(chi.coeffs, exps, d, expected, computed)
            return FreenessCertificate("not_free", a, witness)
    return None


def first_hilbert_mismatch(a: Arrangement, exponents: Sequence[int],
                           max_degree: int) -> Optional[Tuple[int, int, int]]:
    """First degree d <= max_degree where dim D(A)_d differs from the free
    Hilbert function for ``exponents``, as (d, expected, computed)."""
    for d in range(max_degree + 1):
        expected = free_hilbert(exponents, a.dim, d)
        computed = derivation_dim(a, d).dimension
        if expected != computed:
            return d, expected, computed
    return None


# -- verification -----------------------------------------------------------------


def certificate_failure(cert: FreenessCertificate) -> Optional[str]:
    """Path of the first claim that does not check out, or None if all do.

    Every claim is re-checked locally; nothing is searched.
    """
    a = cert.arrangement
    w = cert.witness
    if cert.verdict == "free":
        if cert.exponents is None:
            return "exponents"
        if len(cert.exponents) != a.dim or sum(cert.exponents) != len(a):
            return "exponents"
        if isinstance(w, AdditionDeletionTree):
            return _check_tree(cert, w)
        if isinstance(w, SaitoWitness):
            result = saito_check(a, list(w.derivations))
            if not result.is_basis or result.constant != w.constant:
                return "witness.constant" if result.is_basis else f"witness.saito.{result.reason}"
            if tuple(sorted(t.degree or 0 for t in w.derivations)) != tuple(cert.exponents):
                return "exponents"
            return None
        return "witness.kind"
    if cert.verdict == "not_free":
        chi = char_poly(a)
        if isinstance(w, ChiRootsWitness):
            if tuple(w.chi) != chi.coeffs:
                return "witness.chi"
            s = w.search
            residual = CharPoly(tuple(s.residual))
            if residual.degree < 1 or s.residual[-1] != 1:
                return "witness.search.residual"
            if CharPoly.from_roots(s.roots).coeffs and _poly_mul(
                CharPoly.from_roots(s.roots).coeffs, s.residual
            ) != chi.coeffs:
                return "witness.search.roots"
            if s.residual[0] == 0:
                return "witness.search.residual"
            c0 = abs(s.residual[0])
            if any(residual(r) == 0 for r in range(1, c0 + 1) if c0 % r == 0):
                return "witness.search.residual"
            return None
        if isinstance(w, HilbertMismatchWitness):
            if tuple(w.chi) != chi.coeffs:
                return "witness.chi"
            search = chi.integer_roots()
            if not search.complete or search.roots != tuple(w.exponents):
                return "witness.exponents"
            if free_hilbert(w.exponents, a.dim, w.degree) != w.expected:
                return "witness.expected"
            if derivation_dim(a, w.degree).dimension != w.computed:
                return "witness.computed"
            if w.expected == w.computed:
                return "witness.degree"
            return None
        return "witness.kind"
    return "verdict"


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> Tuple[int, ...]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def _check_tree(cert: FreenessCertificate, tree: AdditionDeletionTree) -> Optional[str]:
    a = cert.arrangement
    if tree.root != a.key() or tree.root not in tree.nodes:
        return "witness.root"
    if tuple(tree.nodes[tree.root].exponents) != tuple(cert.exponents):
        return "exponents"
    for key, node in tree.nodes.items():
        path = f"witness.nodes[{key}]"
        arr = node.arrangement
        if arr.key() != key:
            return f"{path}.arrangement"
        exps = tuple(node.exponents)
        if len(exps) != arr.dim or sum(exps) != len(arr) or list(exps) != sorted(exps):
            return f"{path}.exponents"
        if node.rule == "base":
            if base_exponents(arr) != exps:
                return f"{path}.exponents"
            continue
        if node.rule != "addition":
            return f"{path}.rule"
        h = node.hyperplane
        if h is None or h not in arr:
            return f"{path}.hyperplane"
        if node.deletion != delete(arr, h).key():
            return f"{path}.deletion"
        if node.restriction != restrict(arr, h).restricted.key():
            return f"{path}.restriction"
        child_d = tree.nodes.get(node.deletion)
        child_r = tree.nodes.get(node.restriction)
        if child_d is None:
            return f"{path}.deletion"
        if child_r is None:
            return f"{path}.restriction"
        if not _ad_step(exps, tuple(child_d.exponents), tuple(child_r.exponents)):
            return f"{path}.exponents"
    return None


def verify_certificate(cert: FreenessCertificate) -> bool:
    return certificate_failure(cert) is None


# -- decision ---------------------------------------------------------------------


_BASES: Dict[str, List[Tuple[Derivation, ...]]] = {}


def register_basis(a: Arrangement, thetas: Sequence[Derivation]) -> None:
    """Offer a candidate basis that :func:`decide` checks with Saito's criterion."""
    _BASES.setdefault(a.key(), []).append(tuple(thetas))


@dataclass(frozen=True)
class Decision:
    status: str  # "free", "not_free" or "unknown"
    exponents: Optional[Exponents] = None
    certificate: Optional[FreenessCertificate] = None


def _checked_free(cert: FreenessCertificate) -> Decision:
    a = cert.arrangement
    exps = tuple(cert.exponents)
    if sum(exps) != len(a):
        raise AssertionError(f"exponents {exps} do not sum to |A| = {len(a)}")
    if chi_exponents(a) != exps:
        raise AssertionError(f"exponents {exps} disagree with the roots of chi")
    return Decision("free", exps, cert)


def decide(a: Arrangement, budget: int = DEFAULT_BUDGET,
           bases: Sequence[Sequence[Derivation]] = (), memo: Optional[dict] = None) -> Decision:
    cert = prove_free_AD(a, budget, memo)
    if cert is not None:
        return _checked_free(cert)
    for thetas in list(bases) + _BASES.get(a.key(), []):
        if len(thetas) != a.dim:
            continue
        cert = saito_certificate(a, thetas)
        if cert is not None:
            return _checked_free(cert)
    cert = prove_nonfree(a)
    if cert is not None:
        return Decision("not_free", None, cert)
    return Decision("unknown")


# -- serialization ----------------------------------------------------------------


def _frac(q: Fraction) -> str:
    return str(Fraction(q))


def _poly_to_json(p: MvPoly) -> list:
    return [[list(m), _frac(c)] for m, c in sorted(p.terms.items(), reverse=True)]


def _poly_from_json(nvars: int, data) -> MvPoly:
    return MvPoly(nvars, {tuple(m): Fraction(c) for m, c in data})


def _arr_to_json(a: Arrangement) -> dict:
    return {"dim": a.dim, "forms": [list(f) for f in a.forms]}


def _arr_from_json(data) -> Arrangement:
    return Arrangement(int(data["dim"]), tuple(LinearForm(f) for f in data["forms"]))


def certificate_to_dict(cert: FreenessCertificate) -> dict:
    w = cert.witness
    out = {
        "schema": SCHEMA,
        "verdict": cert.verdict,
        "kind": w.kind,
        "arrangement": _arr_to_json(cert.arrangement),
        "exponents": None if cert.exponents is None else list(cert.exponents),
    }
    if isinstance(w, AdditionDeletionTree):
        nodes = {}
        for key, node in w.nodes.items():
            entry = {
                "arrangement": _arr_to_json(node.arrangement),
                "exponents": list(node.exponents),
                "rule": node.rule,
            }
            if node.rule == "addition":
                entry["hyperplane"] = list(node.hyperplane)
                entry["deletion"] = node.deletion
                entry["restriction"] = node.restriction
            nodes[key] = entry
        out["witness"] = {"root": w.root, "nodes": nodes}
    elif isinstance(w, SaitoWitness):
        out["witness"] = {
            "constant": _frac(w.constant),
            "derivations": [[_poly_to_json(c) for c in t.coeffs] for t in w.derivations],
        }
    elif isinstance(w, ChiRootsWitness):
        out["witness"] = {
            "rule": TERAO_RULE,
            "chi": list(w.chi),
            "roots": list(w.search.roots),
            "tested": [list(t) for t in w.search.tested],
            "residual": list(w.search.residual),
        }
    elif isinstance(w, HilbertMismatchWitness):
        out["witness"] = {
            "rule": TERAO_RULE,
            "chi": list(w.chi),
            "exponents": list(w.exponents),
            "degree": w.degree,
            "expected": w.expected,
            "computed": w.computed,
        }
    return out


def certificate_from_dict(data: dict) -> FreenessCertificate:
    try:
        if data.get("schema") != SCHEMA:
            raise CertificateError(f"unsupported schema {data.get('schema')!r}")
        a = _arr_from_json(data["arrangement"])
        exps = data.get("exponents")
        exps = None if exps is None else tuple(int(e) for e in exps)
        kind = data["kind"]
        w = data["witness"]
        if kind == "addition_deletion":
            nodes = {}
            for key, entry in w["nodes"].items():
                h = entry.get("hyperplane")
                nodes[key] = ADNode(
                    _arr_from_json(entry["arrangement"]),
                    tuple(int(e) for e in entry["exponents"]),
                    entry["rule"],
                    None if h is None else LinearForm(h),
                    entry.get("deletion"),
                    entry.get("restriction"),
                )
            witness = AdditionDeletionTree(w["root"], nodes)
        elif kind == "saito":
            thetas = tuple(
                Derivation(tuple(_poly_from_json(a.dim, c) for c in t)) for t in w["derivations"]
            )
            witness = SaitoWitness(thetas, Fraction(w["constant"]))
        elif kind == "chi_roots":
            search = RootSearch(
                tuple(w["roots"]), tuple((int(r), bool(ok)) for r, ok in w["tested"]), tuple(w["residual"])
            )
            witness = ChiRootsWitness(tuple(w["chi"]), search)
        elif kind == "hilbert_mismatch":
            witness = HilbertMismatchWitness(
                tuple(w["chi"]), tuple(w["exponents"]), int(w["degree"]), int(w["expected"]), int(w["computed"])
            )
        else:
            raise CertificateError(f"unknown witness kind {kind!r}")
        return FreenessCertificate(data["verdict"], a, witness, exps)
    except CertificateError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from None


def load_certificate(text: str) -> FreenessCertificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise CertificateError("certificate must be a JSON object")
    return certificate_from_dict(data)
