"""Angle ranks and exotic Tate classes of abelian varieties over finite fields."""

import json as _json

from ._core import (
    AngleLattice,
    AngleRankError,
    FrobeniusSpectrum,
    WeilPolynomial,
    angle_rank,
    analyze_json,
    base_extend,
    certify_relation,
    check_lemma_form,
    compute_spectrum,
    find_relation_lattice,
    galois_stability_probe,
    newton_class,
    newton_polygon,
    parse_weil,
    selftest,
    simplicity,
)

__all__ = [
    "AngleLattice",
    "AngleRankError",
    "FrobeniusSpectrum",
    "WeilPolynomial",
    "analyze",
    "analyze_json",
    "angle_rank",
    "base_extend",
    "certify_relation",
    "check_lemma_form",
    "compute_spectrum",
    "find_relation_lattice",
    "galois_stability_probe",
    "newton_class",
    "newton_polygon",
    "parse_weil",
    "selftest",
    "simplicity",
]

__version__ = "0.1.0"


def analyze(label, q, coeffs, e_trace=None, **kwargs):
    """Full pipeline on one Weil polynomial; returns the report as a dict."""
    return _json.loads(analyze_json(label, q, list(coeffs), e_trace, **kwargs))
