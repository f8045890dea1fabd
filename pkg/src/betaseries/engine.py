"""Arbitrary-precision series evaluation with rigorous empirical tail bounds.

Terms are computed as exact rationals (incrementally, via the Pochhammer
ratio recurrence for derived series) and rounded once each into binary
floats at a working precision of ``target_digits + 15``; the guard combined
with a single final rounding keeps accumulated rounding far below the
reported tail bound for any realistic term count (< 10^5 terms).

Tail policy: once the absolute term ratio has stayed below 1, the tail of
a geometrically dominated series is bounded by ``|t_N| * r / (1 - r)``
with ``r`` the maximum of the last five observed ratios inflated by 10%.
The inflation absorbs the preasymptotic window where ratios still drift
upward toward their limit; soundness is additionally validated by the
re-evaluate-at-higher-precision checks in the test suite.  Summation stops
when that bound (including any prefactor) drops below ``10^-target_digits``.
Eight consecutive ratios at or above 1 are treated as divergence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

from mpmath import mp, mpf

from .derive import DerivedSeries, convergence_bound, weight_values
from .expressions import TermExpr, evaluate as expr_value, parse_term_expr

GUARD_DIGITS = 15

#: terms treated as a terminated series after this many consecutive exact zeros
ZERO_RUN_LIMIT = 5

DEFAULT_MAX_TERMS = 100_000


class EvaluationError(ArithmeticError):
    """Series evaluation could not reach the requested accuracy."""


class SeriesDivergenceError(EvaluationError):
    """Empirical term ratios stayed at or above 1."""


def to_mpf(x: Union[Fraction, int, float, mpf]) -> mpf:
    """Round an exact rational (or number) to an mpf at the current precision."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return mpf(x.numerator)
        return mpf(x.numerator) / mpf(x.denominator)
    return mpf(x)


@dataclass(frozen=True)
class EvalResult:
    """Outcome of a series evaluation.

    ``tail_bound`` is a rigorous bound on ``|value - true sum|`` under the
    geometric-domination assumption validated during summation.
    ``measured_rate`` is the decimal-digits-per-term slope fitted over the
    trailing half of the partial sums (None when too few usable points).
    """

    value: mpf
    terms_used: int
    tail_bound: mpf
    measured_rate: Optional[float]
    partial_sums: Tuple[mpf, ...] = field(repr=False, default=())


def pochhammer(x: Union[Fraction, int], m: int) -> Fraction:
    """Rising factorial ``(x)_m = x (x+1) ... (x+m-1)``; ``(x)_0 = 1``."""
    if m < 0:
        raise ValueError("pochhammer length must be nonnegative")
    acc = Fraction(1)
    x = Fraction(x)
    for j in range(m):
        acc *= x + j
    return acc


def _fit_rate(points: Sequence[Tuple[int, float]]) -> Optional[float]:
    """Least-squares slope of digits-of-accuracy against index."""
    if len(points) < 3:
        return None
    n = len(points)
    sx = sum(p[0] for p in points)
    sy = sum(p[1] for p in points)
    sxx = sum(p[0] * p[0] for p in points)
    sxy = sum(p[0] * p[1] for p in points)
    denom = n * sxx - sx * sx
    if denom == 0:
        return None
    return (n * sxy - sx * sy) / denom


def measured_rate(
    partial_sums: Sequence[mpf],
    reference: mpf,
    *,
    min_points: int = 10,
) -> float:
    """Digits gained per term, measured against a more accurate reference.

    Fits the least-squares slope of ``-log10 |S_n - reference|`` over the
    last half of the sequence.  Partial sums that exactly equal the
    reference are clamped out of the fit.
    """
    if len(partial_sums) < min_points:
        raise ValueError(f"need at least {min_points} partial sums")
    pts = []
    for i, s in enumerate(partial_sums):
        d = abs(s - reference)
        if d == 0:
            continue
        pts.append((i, -float(mp.log10(d))))
    slope = _fit_rate(pts[len(pts) // 2 :])
    if slope is None:
        raise ValueError("not enough usable points to fit a rate")
    return slope


def sum_terms(
    terms: Iterable[Fraction],
    target_digits: int,
    prefactor: Union[Fraction, mpf, int, None] = None,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> EvalResult:
    """Sum exact terms until the tail bound falls below ``10^-target_digits``.

    ``prefactor`` scales both the returned value and the tolerance target,
    so the tail bound always refers to the final reported value.
    """
    if target_digits < 1:
        raise ValueError("target_digits must be >= 1")
    wp = target_digits + GUARD_DIGITS
    with mp.workdps(wp):
        pref = to_mpf(prefactor) if prefactor is not None else mpf(1)
        apref = abs(pref)
        if apref == 0:
            raise ValueError("prefactor must be nonzero")
        tol = mpf(10) ** (-target_digits)
        floor = mpf(10) ** (-(target_digits + GUARD_DIGITS - 5))
        total = mpf(0)
        partials = []
        ratios: deque = deque(maxlen=5)
        diverging = 0
        prev_abs: Optional[mpf] = None
        last_nonzero: Optional[mpf] = None
        zero_run = 0
        tail: Optional[mpf] = None

        for n, term in enumerate(terms):
            if n >= max_terms:
                raise EvaluationError(
                    f"tail target not reached within {max_terms} terms"
                )
            t = to_mpf(term)
            total += t
            partials.append(total)
            at = abs(t)
            if at == 0:
                zero_run += 1
                if zero_run >= ZERO_RUN_LIMIT:
                    # treated as a terminated (finite) series
                    tail = floor
                    break
                continue
            zero_run = 0
            if prev_abs is not None:
                r = at / prev_abs
                if r >= 1:
                    diverging += 1
                    if diverging >= 8:
                        raise SeriesDivergenceError(
                            "term ratio stayed >= 1 for 8 consecutive terms"
                        )
                else:
                    diverging = 0
                ratios.append(r)
            prev_abs = at
            last_nonzero = at
            if ratios:
                rhat = mpf("1.1") * max(ratios)
                if rhat < 1:
                    candidate = last_nonzero * rhat / (1 - rhat) * apref
                    if candidate < tol:
                        tail = candidate
                        break
        else:
            raise EvaluationError("term stream ended before the tail target was met")

        if tail is None:
            raise EvaluationError("term stream ended before the tail target was met")
        value = pref * total
        scaled = tuple(pref * s for s in partials)
        # rate fit against the final value, ignoring points at rounding noise
        noise = mpf(10) ** (-(wp - 3)) * max(mpf(1), abs(total))
        pts = []
        for i, s in enumerate(partials[:-1]):
            d = abs(s - total)
            if d <= noise:
                continue
            pts.append((i, -float(mp.log10(d))))
        rate = _fit_rate(pts[len(pts) // 2 :])
        return EvalResult(
            value=value,
            terms_used=len(partials),
            tail_bound=max(tail, floor),
            measured_rate=rate,
            partial_sums=scaled,
        )


# --------------------------------------------------------------------------
# Derived-series evaluation
# --------------------------------------------------------------------------


def derived_term(ds: DerivedSeries, n: int) -> Fraction:
    """Term ``n`` computed from scratch via Pochhammer products (exact)."""
    a, b, k, s = ds.a, ds.b, ds.k, ds.s
    t = (
        pochhammer(a + 1, k * n)
        * pochhammer(b + 1, s * n)
        / (pochhammer(a + b + 2, (k + s) * n) * ds.z**n)
    )
    return t * weight_values(ds, n)


def derived_terms(ds: DerivedSeries) -> Iterator[Fraction]:
    """Exact terms of the series, generated by the ratio recurrence.

    The weightless part ``t_n`` advances by the closed ratio
    ``prod_j (a+1+kn+j) * prod_j (b+1+sn+j) / (z * prod_j (a+b+2+(k+s)n+j))``
    and the weight ``w(n)`` multiplies in separately, so a vanishing weight
    never enters a denominator.
    """
    a, b, k, s, z = ds.a, ds.b, ds.k, ds.s, ds.z
    t = Fraction(1)
    n = 0
    while True:
        yield t * weight_values(ds, n)
        num = Fraction(1)
        for j in range(k):
            num *= a + 1 + k * n + j
        for j in range(s):
            num *= b + 1 + s * n + j
        den = z
        for j in range(k + s):
            den *= a + b + 2 + (k + s) * n + j
        t = t * num / den
        n += 1


def evaluate_derived(ds: DerivedSeries, target_digits: int) -> EvalResult:
    """Value of the bound seed integral: prefactor times the series sum.

    The prefactor ``B(a+1, b+1) / z`` is computed with the float library's
    Beta at working precision; everything series-shaped stays exact until
    the one rounding per term.
    """
    if target_digits < 1:
        raise ValueError("target_digits must be >= 1")
    with mp.workdps(target_digits + GUARD_DIGITS):
        pref = mp.beta(to_mpf(ds.a + 1), to_mpf(ds.b + 1)) / to_mpf(ds.z)
    return sum_terms(derived_terms(ds), target_digits, prefactor=pref)


def evaluate_expr(
    expr: Union[TermExpr, str], target_digits: int
) -> EvalResult:
    """Sum a printed-form summand ``e(0) + e(1) + ...`` to target accuracy.

    Terms are exact rationals; geometric decay is detected empirically and
    non-convergence raises.  Accepts either an AST or grammar text.
    """
    if isinstance(expr, str):
        expr = parse_term_expr(expr)
    return sum_terms(
        (expr_value(expr, n) for n in _naturals()), target_digits
    )


def _naturals() -> Iterator[int]:
    n = 0
    while True:
        yield n
        n += 1


def predicted_rate(ds: DerivedSeries) -> float:
    """Asymptotic decimal digits gained per term: ``log10(|z| / M(k, s))``."""
    m = convergence_bound(ds.k, ds.s)
    with mp.workdps(30):
        return float(mp.log10(to_mpf(abs(ds.z) / m)))
