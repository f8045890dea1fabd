"""Independent high-precision reference values.

Everything here is computed by classical methods that share nothing with
the series-derivation machinery: a Machin arctangent formula for pi, the
``atanh(1/3)`` series for ln 2, Chebyshev-accelerated alternating summation
for Catalan's constant, Newton iteration for roots, and Beta values by
direct quadrature.  Gamma-function combinations are assembled exclusively
from Beta integrals plus the reflection identity, so a single well-tested
quadrature underpins every gamma reference.

Computed constants are cached per (name, digits); the cache is guarded by a
lock so concurrent readers are safe.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from typing import Union

from mpmath import mp, mpf

from .polynomials import rational
from .quadrature import QuadratureProblem, integrate

_GUARD = 10

_cache: dict = {}
_cache_lock = threading.Lock()


def _cached(key, digits: int, builder):
    with _cache_lock:
        hit = _cache.get((key, digits))
    if hit is not None:
        return hit
    value = builder()
    with _cache_lock:
        _cache[(key, digits)] = value
    return value


# --------------------------------------------------------------------------
# Root extraction and elementary inverse functions
# --------------------------------------------------------------------------


def nth_root(x: mpf, m: int) -> mpf:
    """Newton iteration for the positive m-th root at current precision."""
    if m < 1:
        raise ValueError("root order must be >= 1")
    if x < 0:
        raise ValueError("nth_root requires a nonnegative argument")
    if x == 0:
        return mpf(0)
    if m == 1:
        return mpf(x)
    y = mpf(float(x) ** (1.0 / m))
    tol = mpf(2) ** (-(mp.prec - 6))
    for _ in range(60):
        step = (x / y ** (m - 1) - y) / m
        y = y + step
        if abs(step) <= abs(y) * tol:
            break
    return y


def sqrt_of(x: Union[mpf, Fraction, int]) -> mpf:
    if isinstance(x, Fraction):
        x = mpf(x.numerator) / x.denominator
    return nth_root(mpf(x), 2)


def atan_of(x: mpf) -> mpf:
    """Taylor series with argument halving (``x -> x / (1 + sqrt(1+x^2))``)."""
    x = mpf(x)
    doublings = 0
    while abs(x) > mpf(1) / 4:
        x = x / (1 + sqrt_of(1 + x * x))
        doublings += 1
    if x == 0:
        return mpf(0)
    tol = mpf(2) ** (-(mp.prec + 10))
    x2 = x * x
    term = x
    total = mpf(0)
    j = 0
    while abs(term) > tol:
        total += term / (2 * j + 1) * (-1 if j % 2 else 1)
        term *= x2
        j += 1
    return total * 2**doublings


def asin_of(x: mpf) -> mpf:
    x = mpf(x)
    if abs(x) >= 1:
        raise ValueError("asin_of requires |x| < 1")
    return atan_of(x / sqrt_of(1 - x * x))


def ln_of(x: mpf) -> mpf:
    """atanh series for ln with square-root argument reduction."""
    x = mpf(x)
    if x <= 0:
        raise ValueError("ln_of requires a positive argument")
    doublings = 0
    while abs(x - 1) > mpf(1) / 2:
        x = sqrt_of(x)
        doublings += 1
    y = (x - 1) / (x + 1)
    if y == 0:
        return mpf(0)
    tol = mpf(2) ** (-(mp.prec + 10))
    y2 = y * y
    term = y
    total = mpf(0)
    j = 0
    while abs(term) > tol:
        total += term / (2 * j + 1)
        term *= y2
        j += 1
    return total * 2 ** (doublings + 1)


# --------------------------------------------------------------------------
# Named constants
# --------------------------------------------------------------------------


def _atan_inverse_int(c: int) -> mpf:
    """arctan(1/c) by its Taylor series with exact integer denominators."""
    total = mpf(0)
    power = c
    c2 = c * c
    j = 0
    tol = mpf(2) ** (-(mp.prec + 10))
    while True:
        term = mpf(1) / ((2 * j + 1) * power)
        if term < tol:
            break
        total += -term if j % 2 else term
        power *= c2
        j += 1
    return total


def pi_machin(digits: int) -> mpf:
    """pi = 16 arctan(1/5) - 4 arctan(1/239)."""

    def build():
        with mp.workdps(digits + _GUARD):
            return 16 * _atan_inverse_int(5) - 4 * _atan_inverse_int(239)

    return _cached("pi", digits, build)


def ln2_series(digits: int) -> mpf:
    """ln 2 = 2 atanh(1/3) = sum 2 / ((2j+1) 3^(2j+1))."""

    def build():
        with mp.workdps(digits + _GUARD):
            total = mpf(0)
            power = 3
            j = 0
            tol = mpf(2) ** (-(mp.prec + 10))
            while True:
                term = mpf(2) / ((2 * j + 1) * power)
                if term < tol:
                    break
                total += term
                power *= 9
                j += 1
            return total

    return _cached("ln2", digits, build)


def _alternating_cvz(a, n: int) -> mpf:
    """Chebyshev-accelerated alternating sum ``sum (-1)^k a(k)``.

    Standard acceleration for totally monotone term sequences; the error
    decays like ``(3 + sqrt 8)^-n``.
    """
    d = (3 + sqrt_of(mpf(8))) ** n
    d = (d + 1 / d) / 2
    b = mpf(-1)
    c = -d
    total = mpf(0)
    for k in range(n):
        c = b - c
        total += c * a(k)
        b = b * (k + n) * (k - n) / ((k + mpf(1) / 2) * (k + 1))
    return total / d


def catalan_accelerated(digits: int) -> mpf:
    """Catalan's constant from ``sum (-1)^n / (2n+1)^2``, accelerated.

    Runs the acceleration at two depths and insists on agreement, so a
    returned value is self-validated to the requested precision.
    """

    def build():
        with mp.workdps(digits + _GUARD):
            needed = int((digits + 5) * 2.302585 / 1.7627) + 5

            def term(k: int) -> mpf:
                return mpf(1) / (2 * k + 1) ** 2

            first = _alternating_cvz(term, needed)
            second = _alternating_cvz(term, needed + 12)
            if abs(first - second) > mpf(10) ** (-digits):
                raise ArithmeticError(
                    "catalan acceleration self-check failed"
                )
            return second

    return _cached("catalan", digits, build)


def beta_value(p: Fraction, q: Fraction, digits: int) -> mpf:
    """Beta(p, q) by direct quadrature of ``x^(p-1) (1-x)^(q-1)``."""
    p, q = rational(p), rational(q)
    if p <= 0 or q <= 0:
        raise ValueError("beta_value requires positive parameters")

    def build():
        return integrate(QuadratureProblem(a=p - 1, b=q - 1), digits)

    return _cached(("beta", p, q), digits, build)


_NAME_RE = re.compile(r"^(?P<fn>[a-z0-9]+)(\((?P<args>[^)]*)\))?$")


def reference(name: str, target_digits: int) -> mpf:
    """Classical reference constant by name.

    Supported: ``pi``, ``ln2``, ``catalan``, ``sqrt(r)`` for rational r,
    and ``beta(p,q)`` for positive rational p, q.
    """
    m = _NAME_RE.match(name.replace(" ", ""))
    if not m:
        raise ValueError(f"unsupported reference name {name!r}")
    fn, args = m.group("fn"), m.group("args")
    if fn == "pi" and args is None:
        return pi_machin(target_digits)
    if fn == "ln2" and args is None:
        return ln2_series(target_digits)
    if fn == "catalan" and args is None:
        return catalan_accelerated(target_digits)
    if fn == "sqrt" and args is not None:
        r = rational(args)
        if r < 0:
            raise ValueError("sqrt of a negative rational")

        def build():
            with mp.workdps(target_digits + _GUARD):
                return sqrt_of(r)

        return _cached(("sqrt", r), target_digits, build)
    if fn == "beta" and args is not None:
        parts = args.split(",")
        if len(parts) != 2:
            raise ValueError("beta(p,q) takes two rational arguments")
        return beta_value(rational(parts[0]), rational(parts[1]), target_digits)
    raise ValueError(f"unsupported reference name {name!r}")


# --------------------------------------------------------------------------
# Gamma-function combinations via Beta quadrature
# --------------------------------------------------------------------------


def gamma_combination(tag: str, target_digits: int) -> mpf:
    """Gamma products assembled from Beta integrals and reflection.

    * ``G13cubed``: Gamma(1/3)^3 = B(1/3, 1/3) * 2 pi / sqrt 3
    * ``G14sq``:    Gamma(1/4)^2 = B(1/4, 1/4) * sqrt(pi)
    * ``G34sq``:    Gamma(3/4)^2 = 2 pi^2 / Gamma(1/4)^2   (reflection)
    * ``kummer(h)``: sqrt(pi) Gamma(2-2h) Gamma(h) / (2 Gamma(3/2 - h)),
      rewritten as ``pi * B(h, 2-2h) / (2 B(1/2, 3/2 - h))`` so only Beta
      values and pi are needed; requires 0 < h < 1.
    """
    tag = tag.replace(" ", "")
    digits = target_digits
    inner = digits + 5  # sub-references carry guard digits for the compositions

    def build():
        with mp.workdps(inner + _GUARD):
            if tag == "G13cubed":
                third = Fraction(1, 3)
                return (
                    beta_value(third, third, inner)
                    * 2
                    * pi_machin(inner)
                    / sqrt_of(mpf(3))
                )
            if tag == "G14sq":
                quarter = Fraction(1, 4)
                return beta_value(quarter, quarter, inner) * sqrt_of(
                    pi_machin(inner)
                )
            if tag == "G34sq":
                return 2 * pi_machin(inner) ** 2 / gamma_combination(
                    "G14sq", inner
                )
            m = re.match(r"^kummer\((?P<h>[^)]+)\)$", tag)
            if m:
                h = rational(m.group("h"))
                if not (0 < h < 1):
                    raise ValueError("kummer(h) requires 0 < h < 1")
                top = beta_value(h, 2 - 2 * h, inner)
                bottom = beta_value(Fraction(1, 2), Fraction(3, 2) - h, inner)
                return pi_machin(inner) * top / (2 * bottom)
            raise ValueError(f"unsupported gamma combination {tag!r}")

    return _cached(("gamma", tag), digits, build)
