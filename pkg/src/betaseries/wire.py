"""JSON wire formats.

Rationals travel as strings (``"num/den"``, or plain ``"num"`` when the
denominator is 1) so no precision is ever lost; floats travel as decimal
strings with an explicit digit count.  ``parse -> serialize -> parse`` is
the identity on every spec.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from mpmath import mp, mpf

from .derive import DerivedSeries, ParamDerivedSeries
from .hyper import GroupedSeries, HypSeriesSpec
from .polynomials import ParamPolynomial, Polynomial, rational


def rat_str(x: Fraction) -> str:
    x = rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_list(xs) -> List[str]:
    return [rat_str(x) for x in xs]


def float_str(value: mpf, digits: int) -> str:
    """Deterministic decimal rendering with an explicit digit count."""
    return mp.nstr(value, digits, strip_zeros=False)


def series_spec_to_dict(ds: DerivedSeries, expr: Optional[str] = None) -> dict:
    doc = {
        "a": rat_str(ds.a),
        "b": rat_str(ds.b),
        "k": ds.k,
        "s": ds.s,
        "z": rat_str(ds.z),
        "qcoeffs": rat_list(ds.qcoeffs),
        "seed_p_coeffs": rat_list(ds.seed_p.coeffs),
    }
    if expr is not None:
        doc["expr"] = expr
    return doc


def series_spec_from_dict(doc: dict) -> DerivedSeries:
    return DerivedSeries(
        a=rational(doc["a"]),
        b=rational(doc["b"]),
        k=int(doc["k"]),
        s=int(doc["s"]),
        z=rational(doc["z"]),
        qcoeffs=tuple(rational(c) for c in doc["qcoeffs"]),
        seed_p=Polynomial(rational(c) for c in doc["seed_p_coeffs"])
        if "seed_p_coeffs" in doc
        else None,
    )


def param_series_to_dict(pds: ParamDerivedSeries) -> dict:
    return {
        "a": rat_str(pds.a),
        "b": rat_str(pds.b),
        "k": pds.k,
        "s": pds.s,
        "z_w_coeffs": rat_list(pds.z_w.coeffs),
        "qcoeffs_w": [rat_list(q.coeffs) for q in pds.qcoeffs_w],
        "seed_p_w": [rat_list(c.coeffs) for c in pds.seed_p.coeffs],
    }


def param_series_from_dict(doc: dict) -> ParamDerivedSeries:
    return ParamDerivedSeries(
        a=rational(doc["a"]),
        b=rational(doc["b"]),
        k=int(doc["k"]),
        s=int(doc["s"]),
        z_w=Polynomial(rational(c) for c in doc["z_w_coeffs"]),
        qcoeffs_w=tuple(
            Polynomial(rational(c) for c in q) for q in doc["qcoeffs_w"]
        ),
        seed_p=ParamPolynomial(
            Polynomial(rational(c) for c in cw) for cw in doc["seed_p_w"]
        ),
    )


def hyp_spec_to_dict(spec, m: Optional[int] = None) -> dict:
    if isinstance(spec, GroupedSeries):
        base, m = spec.base, spec.m
    else:
        base = spec
    doc = {
        "upper": rat_list(base.upper),
        "lower": rat_list(base.lower),
        "z": rat_str(base.z),
    }
    if m is not None:
        doc["m"] = m
    return doc


def hyp_spec_from_dict(doc: dict):
    base = HypSeriesSpec(
        upper=tuple(rational(x) for x in doc["upper"]),
        lower=tuple(rational(y) for y in doc["lower"]),
        z=rational(doc["z"]),
    )
    m = doc.get("m")
    if m is not None and int(m) != 1:
        return GroupedSeries(base=base, m=int(m))
    return base
