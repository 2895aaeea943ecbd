"""Assemble JSON run reports from the individual computations."""

from __future__ import annotations

import hashlib
import json
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .arrangement import (
    Arrangement,
    dumps,
    essentialize,
    family_A,
    family_A_forms,
    family_B,
    family_B_forms,
    family_boolean,
    family_braid,
    rank,
)
from .chambers import enumerate_chambers, find_simple_triangles, is_simplicial, kpi1_verdict
from .derivations import terao_basis
from .exactmath import as_rational
from .freeness import DEFAULT_BUDGET, decide, verify_certificate
from .lattice import (
    char_poly,
    intersection_lattice,
    is_supersolvable,
    labeled_flats,
    num_chambers,
    poincare_poly,
)

REPORT_SCHEMA = "freearr.report/1"
FAMILIES = ("A", "B", "braid", "boolean")


def build_family(family: str, alpha=None) -> Arrangement:
    if family == "A":
        return family_A(_need_alpha(alpha))
    if family == "B":
        return family_B(_need_alpha(alpha))
    if family in ("braid", "boolean"):
        if alpha is None:
            raise ValueError(f"family {family} needs --alpha as its dimension")
        d = as_rational(alpha)
        if d.denominator != 1 or d < 1:
            raise ValueError(f"family {family} needs a positive integer dimension")
        return family_braid(int(d)) if family == "braid" else family_boolean(int(d))
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def _need_alpha(alpha) -> Fraction:
    if alpha is None:
        raise ValueError("this family needs --alpha")
    return as_rational(alpha)


def known_result(family: str, alpha: Fraction) -> Optional[dict]:
    """The published classification for the two one-parameter families."""
    if family == "A":
        if alpha in (0, 1):
            exps, kpi1 = [1, 2, 3], "KPi1"
        elif alpha == -1:
            exps, kpi1 = [1, 3, 5], "KPi1"
        else:
            exps, kpi1 = [1, 4, 4], "NotKPi1"
        return {"free": True, "exponents": exps, "kpi1": kpi1}
    if family == "B":
        if alpha == -1:
            return {"free": False, "exponents": None}
        return {"free": True, "exponents": [1, 2, 3, 4] if alpha in (0, 1) else [1, 4, 4, 5]}
    return None


def labeled_lattice_digest(family: str, alpha) -> Optional[str]:
    """Digest of the lattice with flats labeled by listing position."""
    if family == "A":
        forms = family_A_forms(alpha)
    elif family == "B":
        forms = family_B_forms(alpha)
    else:
        return None
    flats = sorted(sorted(s) for s in labeled_flats(forms))
    return hashlib.sha256(json.dumps(flats).encode()).hexdigest()[:16]


def analyze(a: Arrangement, source: dict, budget: int = DEFAULT_BUDGET,
            bases: Sequence = (), timing: bool = False):
    """Run lattice, freeness and (rank 3) chamber computations on ``a``.

    Returns ``(report, certificate)``; the report embeds the certificate's
    digest rather than the certificate itself.
    """
    start = time.perf_counter()
    lat = intersection_lattice(a)
    chi = char_poly(a)
    report = {
        "schema": REPORT_SCHEMA,
        "tool_version": __version__,
        "input": source,
        "arrangement": {
            "dim": a.dim,
            "rank": rank(a),
            "size": len(a),
            "forms": [str(f) for f in a.forms],
            "canonical": dumps(a),
        },
        "lattice": {
            "flat_counts": lat.counts(),
            "chi": list(chi.coeffs),
            "chi_text": str(chi),
            "poincare": list(poincare_poly(a)),
            "num_chambers": num_chambers(a),
            "supersolvable": is_supersolvable(a),
        },
    }
    decision = decide(a, budget=budget, bases=bases)
    cert = decision.certificate
    report["freeness"] = {
        "status": decision.status,
        "exponents": None if decision.exponents is None else list(decision.exponents),
        "certificate_kind": None if cert is None else cert.kind,
        "certificate_verified": None if cert is None else verify_certificate(cert),
        "certificate_sha256": None if cert is None else hashlib.sha256(cert.to_json().encode()).hexdigest(),
    }
    r = rank(a)
    if r == 3:
        ess = essentialize(a)
        chambers = enumerate_chambers(ess)
        if len(chambers) != report["lattice"]["num_chambers"]:
            raise AssertionError("chamber enumeration disagrees with Zaslavsky's count")
        triangles = find_simple_triangles(ess) if len(ess) >= 4 else []
        seen = []
        for t in triangles:
            walls = sorted(str(ess.forms[i]) for i in t.walls)
            if walls not in seen:
                seen.append(walls)
        report["chambers"] = {
            "count": len(chambers),
            "essentialized": ess != a,
            "simplicial": is_simplicial(ess),
            "simple_triangles": seen,
        }
    verdict = kpi1_verdict(a)
    report["kpi1"] = {
        "status": verdict.status,
        "reason": verdict.reason,
        "triangle": None if verdict.triangle is None
        else sorted(str(essentialize(a).forms[i]) for i in verdict.triangle.walls),
    }
    family = source.get("family")
    if family in ("A", "B"):
        alpha = as_rational(source["alpha"])
        report["known_result"] = known_result(family, alpha)
        report["labeled_lattice"] = labeled_lattice_digest(family, alpha)
    if timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 3)
    return report, cert


def analyze_family(family: str, alpha, budget: int = DEFAULT_BUDGET, timing: bool = False):
    a = build_family(family, alpha)
    source = {"family": family, "alpha": None if alpha is None else str(as_rational(alpha))}
    bases = [terao_basis(-as_rational(alpha))] if family == "A" else []
    return analyze(a, source, budget=budget, bases=bases, timing=timing)


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
