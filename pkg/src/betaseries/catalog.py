"""Identity catalog: registry, recipe evaluator, and verification driver.

Every identity ships as a JSON record (``data/catalog.json``) whose two
sides are *recipes*: small composition trees over the series engines and
the independent reference oracles.  Verification evaluates both sides at
the requested precision and compares; series-shaped left sides also report
how many terms were needed and the measured convergence rate.

Record kinds:

* ``numeric``  -- lhs recipe vs rhs recipe, ``|lhs - rhs| < 10^-digits``.
* ``duality``  -- a derived-series spec; the series value must match the
  quadrature of BOTH integral forms (seed and kernel denominator), and
  optionally a closed-form recipe.
* ``exact``    -- a named exact polynomial-identity check (no tolerance).
* ``grouping`` -- exact partial-sum telescoping of the m-step grouped form
  against its base series, plus numeric value / rate-multiple agreement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Dict, List, Optional, Tuple

from mpmath import mp, mpf

from .derive import solve_seed_param
from .engine import (
    EvalResult,
    evaluate_derived,
    evaluate_expr,
    predicted_rate,
)
from .hyper import GroupedSeries, eval_hyp, group, verify_grouping
from .polynomials import ParamPolynomial, Polynomial, rational
from .quadrature import KernelForm, QuadratureProblem, integrate
from .references import (
    asin_of,
    atan_of,
    beta_value,
    catalan_accelerated,
    gamma_combination,
    ln2_series,
    ln_of,
    nth_root,
    pi_machin,
    sqrt_of,
)
from .wire import float_str, hyp_spec_from_dict, series_spec_from_dict


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    kind: str
    digits: int
    provenance: str
    lhs: Optional[dict] = None
    rhs: Optional[dict] = None
    series: Optional[dict] = None
    base: Optional[dict] = None
    m: Optional[int] = None
    check_terms: int = 50
    check: Optional[str] = None
    notes: str = ""


@dataclass(frozen=True)
class VerifyReport:
    id: str
    status: str
    lhs: str
    rhs: str
    abs_err: str
    terms: Optional[int]
    measured_rate: Optional[float]
    predicted_rate: Optional[float] = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def summary(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "terms": self.terms,
            "measured_rate": self.measured_rate,
        }


def load_catalog() -> List[IdentityRecord]:
    """Read the checked-in registry, sorted by id."""
    text = resources.files("betaseries").joinpath("data/catalog.json").read_text()
    raw = json.loads(text)
    records = [
        IdentityRecord(
            id=doc["id"],
            kind=doc["kind"],
            digits=int(doc["digits"]),
            provenance=doc.get("provenance", ""),
            lhs=doc.get("lhs"),
            rhs=doc.get("rhs"),
            series=doc.get("series"),
            base=doc.get("base"),
            m=doc.get("m"),
            check_terms=int(doc.get("check_terms", 50)),
            check=doc.get("check"),
            notes=doc.get("notes", ""),
        )
        for doc in raw
    ]
    return sorted(records, key=lambda r: r.id)


def catalog_ids() -> List[str]:
    return [r.id for r in load_catalog()]


def get_record(identity_id: str) -> IdentityRecord:
    for record in load_catalog():
        if record.id == identity_id:
            return record
    raise KeyError(f"unknown identity {identity_id!r}")


# --------------------------------------------------------------------------
# Recipe evaluation
# --------------------------------------------------------------------------


def eval_recipe(node: dict, digits: int) -> Tuple[mpf, List[EvalResult]]:
    """Evaluate a recipe tree; collects EvalResults of series-shaped leaves."""
    metas: List[EvalResult] = []
    with mp.workdps(digits + 12):
        value = _eval_node(node, digits, metas)
    return value, metas


def _eval_node(node: dict, digits: int, metas: List[EvalResult]) -> mpf:
    if not isinstance(node, dict) or len(node) != 1:
        raise ValueError(f"malformed recipe node: {node!r}")
    (key, arg), = node.items()
    leaf_digits = digits + 5
    if key == "rat":
        q = rational(arg)
        return mpf(q.numerator) / q.denominator
    if key == "const":
        if arg == "pi":
            return pi_machin(leaf_digits)
        if arg == "ln2":
            return ln2_series(leaf_digits)
        if arg == "catalan":
            return catalan_accelerated(leaf_digits)
        raise ValueError(f"unknown constant {arg!r}")
    if key == "sqrt":
        return sqrt_of(_eval_node(arg, digits, metas))
    if key == "root":
        base, order = arg
        return nth_root(_eval_node(base, digits, metas), int(order))
    if key == "ln":
        return ln_of(_eval_node(arg, digits, metas))
    if key == "atan":
        return atan_of(_eval_node(arg, digits, metas))
    if key == "asin":
        return asin_of(_eval_node(arg, digits, metas))
    if key == "neg":
        return -_eval_node(arg, digits, metas)
    if key == "add":
        return sum((_eval_node(a, digits, metas) for a in arg), mpf(0))
    if key == "sub":
        left, right = arg
        return _eval_node(left, digits, metas) - _eval_node(right, digits, metas)
    if key == "mul":
        out = mpf(1)
        for a in arg:
            out *= _eval_node(a, digits, metas)
        return out
    if key == "div":
        left, right = arg
        return _eval_node(left, digits, metas) / _eval_node(right, digits, metas)
    if key == "pow":
        base, exponent = arg
        return _eval_node(base, digits, metas) ** int(exponent)
    if key == "beta":
        p, q = arg
        return beta_value(rational(p), rational(q), leaf_digits)
    if key == "gamma":
        return gamma_combination(arg, leaf_digits)
    if key == "kummer":
        return gamma_combination(f"kummer({arg})", leaf_digits)
    if key == "integral":
        return integrate(_quadrature_problem(arg), leaf_digits)
    if key == "expr":
        result = evaluate_expr(arg, leaf_digits)
        metas.append(result)
        return result.value
    if key == "derived":
        result = evaluate_derived(series_spec_from_dict(arg), leaf_digits)
        metas.append(result)
        return result.value
    if key == "hyp":
        result = eval_hyp(hyp_spec_from_dict(arg), leaf_digits)
        metas.append(result)
        return result.value
    raise ValueError(f"unknown recipe node {key!r}")


def _quadrature_problem(doc: dict) -> QuadratureProblem:
    numerator = (
        Polynomial(rational(c) for c in doc["num"])
        if "num" in doc
        else Polynomial((1,))
    )
    if "den_p" in doc:
        denominator = Polynomial(rational(c) for c in doc["den_p"])
    elif "den_kernel" in doc:
        kd = doc["den_kernel"]
        denominator = KernelForm(z=rational(kd["z"]), k=int(kd["k"]), s=int(kd["s"]))
    else:
        denominator = None
    return QuadratureProblem(
        a=rational(doc["a"]),
        b=rational(doc["b"]),
        numerator=numerator,
        denominator=denominator,
    )


# --------------------------------------------------------------------------
# Exact (tolerance-free) identity checks
# --------------------------------------------------------------------------


def _check_rational_kernel_identity() -> Tuple[bool, str]:
    """Cross-multiplied form of the arcsine rational-function identity.

    For rational w (not 0, +-1):
    ``w^2 * ((w^2-1)/w^6 - x^2(1-x)) == -(1 - w^2 x) * (x^2 + (1/w^2-1) x + (1-w^2)/w^4)``
    as exact polynomials in x.  The printed form carries the two sides with
    opposite sign; the orientation encoded here is the one that is true.
    """
    x = Polynomial.x()
    samples = [Fraction(1, 2), Fraction(2), Fraction(-3, 5), Fraction(7, 4), Fraction(-5, 3)]
    for w in samples:
        lhs = Polynomial.constant(w**2) * (
            Polynomial.constant((w**2 - 1) / w**6) - x**2 * (1 - x)
        )
        n_poly = (
            x**2
            + Polynomial.constant(1 / w**2 - 1) * x
            + Polynomial.constant((1 - w**2) / w**4)
        )
        rhs = -(Polynomial.one() - Polynomial.constant(w**2) * x) * n_poly
        if lhs != rhs:
            return False, f"identity fails at w={w}"
    return True, f"exact at {len(samples)} rational sample points"


def _check_param_cubic() -> Tuple[bool, str]:
    """k=s=3 parameterized solve reproduces z = w^3 and the printed quotient."""
    w = Polynomial((0, 1))
    p = ParamPolynomial([w, Polynomial((-1,)), Polynomial((1,))])  # x^2 - x + w
    pds = solve_seed_param(p, 3, 3)
    z_expected = Polynomial((0, 0, 0, 1))
    q_expected = ParamPolynomial(
        [
            Polynomial((0, 0, 1)),  # w^2
            Polynomial((0, 1)),  # w x
            Polynomial((1, -1)),  # (1 - w) x^2
            Polynomial((-2,)),  # -2 x^3
            Polynomial((1,)),  # x^4
        ]
    )
    if pds.z_w != z_expected:
        return False, f"z(w) = {pds.z_w}, expected w^3"
    if pds.q_w != q_expected:
        return False, f"Q(x,w) = {pds.q_w}, expected printed quartic"
    return True, "z = w^3 and Q match exactly; product identity re-verified"


def _check_param_quintic() -> Tuple[bool, str]:
    """k=s=5 parameterized solve reproduces z = w^5 and the degree-8 quotient."""
    w = Polynomial((0, 1))
    p = ParamPolynomial([w, Polynomial((-1,)), Polynomial((1,))])
    pds = solve_seed_param(p, 5, 5)
    z_expected = Polynomial((0, 0, 0, 0, 0, 1))
    q_expected = ParamPolynomial(
        [
            Polynomial((0, 0, 0, 0, 1)),  # w^4
            Polynomial((0, 0, 0, 1)),  # w^3 x
            Polynomial((0, 0, 1, -1)),  # (w^2 - w^3) x^2
            Polynomial((0, 1, -2)),  # (w - 2w^2) x^3
            Polynomial((1, -3, 1)),  # (w^2 - 3w + 1) x^4
            Polynomial((-4, 3)),  # (3w - 4) x^5
            Polynomial((6, -1)),  # (6 - w) x^6
            Polynomial((-4,)),  # -4 x^7
            Polynomial((1,)),  # x^8
        ]
    )
    if pds.z_w != z_expected:
        return False, f"z(w) = {pds.z_w}, expected w^5"
    if pds.q_w != q_expected:
        return False, f"Q(x,w) = {pds.q_w}, expected printed octic"
    return True, "z = w^5 and Q match exactly; product identity re-verified"


EXACT_CHECKS: Dict[str, Callable[[], Tuple[bool, str]]] = {
    "rational-kernel-identity": _check_rational_kernel_identity,
    "param-cubic": _check_param_cubic,
    "param-quintic": _check_param_quintic,
}


# --------------------------------------------------------------------------
# Verification
# --------------------------------------------------------------------------


def verify(record, digits: Optional[int] = None) -> VerifyReport:
    """Verify one record (by id or object) at the requested precision."""
    if isinstance(record, str):
        record = get_record(record)
    digits = digits if digits is not None else record.digits
    if record.kind == "numeric":
        return _verify_numeric(record, digits)
    if record.kind == "duality":
        return _verify_duality(record, digits)
    if record.kind == "exact":
        return _verify_exact(record)
    if record.kind == "grouping":
        return _verify_grouping_record(record, digits)
    raise ValueError(f"unknown record kind {record.kind!r}")


def _float_or_none(rate: Optional[float]) -> Optional[float]:
    return None if rate is None else round(rate, 4)


def _verify_numeric(record: IdentityRecord, digits: int) -> VerifyReport:
    lhs, lmeta = eval_recipe(record.lhs, digits)
    rhs, rmeta = eval_recipe(record.rhs, digits)
    with mp.workdps(digits + 12):
        err = abs(lhs - rhs)
        ok = err < mpf(10) ** (-digits)
    meta = lmeta[0] if lmeta else (rmeta[0] if rmeta else None)
    return VerifyReport(
        id=record.id,
        status="PASS" if ok else "FAIL",
        lhs=float_str(lhs, digits),
        rhs=float_str(rhs, digits),
        abs_err=float_str(err, 5),
        terms=meta.terms_used if meta else None,
        measured_rate=_float_or_none(meta.measured_rate if meta else None),
        detail="" if ok else f"|lhs - rhs| = {float_str(err, 5)} >= 1e-{digits}",
    )


def _verify_duality(record: IdentityRecord, digits: int) -> VerifyReport:
    ds = series_spec_from_dict(record.series)
    result = evaluate_derived(ds, digits + 5)
    seed_problem = QuadratureProblem(a=ds.a, b=ds.b, denominator=ds.seed_p)
    kernel_problem = QuadratureProblem(
        a=ds.a,
        b=ds.b,
        numerator=ds.q,
        denominator=KernelForm(z=ds.z, k=ds.k, s=ds.s),
    )
    v_seed = integrate(seed_problem, digits + 5)
    v_kernel = integrate(kernel_problem, digits + 5)
    values = [result.value, v_seed, v_kernel]
    detail_parts = []
    if record.rhs is not None:
        rhs_value, _ = eval_recipe(record.rhs, digits)
        values.append(rhs_value)
        detail_parts.append("closed form included")
    with mp.workdps(digits + 12):
        err = max(abs(u - v) for u in values for v in values)
        ok = err < mpf(10) ** (-digits)
    return VerifyReport(
        id=record.id,
        status="PASS" if ok else "FAIL",
        lhs=float_str(result.value, digits),
        rhs=float_str(v_seed, digits),
        abs_err=float_str(err, 5),
        terms=result.terms_used,
        measured_rate=_float_or_none(result.measured_rate),
        predicted_rate=round(predicted_rate(ds), 4),
        detail="; ".join(detail_parts)
        if ok
        else f"series/quadrature spread {float_str(err, 5)} >= 1e-{digits}",
    )


def _verify_exact(record: IdentityRecord) -> VerifyReport:
    checker = EXACT_CHECKS.get(record.check or "")
    if checker is None:
        raise ValueError(f"unknown exact check {record.check!r}")
    ok, detail = checker()
    return VerifyReport(
        id=record.id,
        status="PASS" if ok else "FAIL",
        lhs="exact",
        rhs="exact",
        abs_err="0" if ok else "nonzero",
        terms=None,
        measured_rate=None,
        detail=detail,
    )


def _verify_grouping_record(record: IdentityRecord, digits: int) -> VerifyReport:
    base = hyp_spec_from_dict(record.base)
    if isinstance(base, GroupedSeries):
        raise ValueError("grouping record base must be ungrouped")
    m = record.m or 2
    grouped = group(base, m)
    # exact telescoping: grouped partial sums == base partial sums at stride m
    base_partials = []
    acc = Fraction(0)
    base_term = base.terms()
    for _ in range(m * (record.check_terms + 1)):
        acc += next(base_term)
        base_partials.append(acc)
    gacc = Fraction(0)
    grouped_term = grouped.terms()
    exact_ok = True
    first_bad = None
    for n in range(record.check_terms + 1):
        gacc += next(grouped_term)
        if gacc != base_partials[m * (n + 1) - 1]:
            exact_ok = False
            first_bad = n
            break
    numeric = verify_grouping(base, m, digits)
    ok = exact_ok and numeric.passed
    sums_note = "match" if exact_ok else f"diverge at n={first_bad}"
    detail = f"exact partial sums n<={record.check_terms} {sums_note}"
    if numeric.detail:
        detail += "; " + numeric.detail
    else:
        detail += (
            f"; rates base {numeric.base_rate:.3f} -> grouped "
            f"{numeric.grouped_rate:.3f} digits/term"
        )
    return VerifyReport(
        id=record.id,
        status="PASS" if ok else "FAIL",
        lhs=float_str(numeric.grouped_value, digits),
        rhs=float_str(numeric.base_value, digits),
        abs_err="0" if exact_ok else "exact mismatch",
        terms=record.check_terms,
        measured_rate=_float_or_none(numeric.grouped_rate),
        detail=detail,
    )


def run_all(
    digits: Optional[int] = None, only: Optional[str] = None
) -> dict:
    """Verify the whole catalog; returns a machine-readable summary.

    ``only`` filters record ids with shell-style wildcards.  Reports are
    generated in sorted id order, so output is deterministic.
    """
    import fnmatch

    records = load_catalog()
    if only:
        records = [r for r in records if fnmatch.fnmatch(r.id, only)]
    reports = [verify(r, digits) for r in records]
    passed = sum(1 for r in reports if r.passed)
    return {
        "digits": digits,
        "total": len(reports),
        "passed": passed,
        "failed": len(reports) - passed,
        "records": [r.summary() for r in reports],
    }
