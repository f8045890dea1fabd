"""Exact polynomial arithmetic over arbitrary-precision rationals.

Two polynomial flavours are provided:

* ``Polynomial`` -- dense univariate polynomial with ``fractions.Fraction``
  coefficients (index = degree).  All arithmetic is exact; evaluation at a
  rational point returns a ``Fraction``.
* ``ParamPolynomial`` -- polynomial in ``x`` whose coefficients are
  themselves ``Polynomial``s in a parameter ``w``.  Division is supported
  whenever the divisor's leading ``x``-coefficient is a nonzero constant,
  which keeps every quotient inside the coefficient ring (no rational
  functions of ``w`` ever appear).

Rationals are represented by ``fractions.Fraction`` throughout: it is
always reduced, its denominator is positive, and its canonical zero is
``Fraction(0, 1)``, which is exactly the representation this package
needs.  The alias ``Rational`` is exported for signatures.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]


def rational(value: RationalLike) -> Fraction:
    """Coerce ints, "p/q" strings, or Fractions to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class Polynomial:
    """Dense univariate polynomial over exact rationals.

    ``coeffs[i]`` is the coefficient of ``x**i``.  Trailing zeros are
    stripped on construction so the leading coefficient is nonzero unless
    the polynomial is zero (represented by an empty tuple, degree -1).
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def constant(cls, c: RationalLike) -> "Polynomial":
        return cls((rational(c),))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff: RationalLike = 1) -> "Polynomial":
        if degree < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls((0,) * degree + (rational(coeff),))

    # -- basic structure ----------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, degree: int) -> Fraction:
        if 0 <= degree < len(self.coeffs):
            return self.coeffs[degree]
        return Fraction(0)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            self.coefficient(i) + other.coefficient(i) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @staticmethod
    def _coerce(other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    # -- evaluation, comparison, display -------------------------------

    def __call__(self, x: RationalLike) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        x = rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_poly(self.coeffs, "x")


def format_poly(coeffs: Sequence[Fraction], var: str) -> str:
    """Human-readable form, highest degree first: ``-3*x^2 + 15*x - 48``."""
    if not coeffs:
        return "0"
    parts = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            xpow = var if deg == 1 else f"{var}^{deg}"
            body = xpow if mag == 1 else f"{mag}*{xpow}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def poly_divmod(dividend: Polynomial, divisor: Polynomial):
    """Exact long division: returns (quotient, remainder).

    Satisfies ``dividend == divisor * quotient + remainder`` with
    ``remainder.degree < divisor.degree``.  Raises ``ZeroDivisionError``
    for a zero divisor.
    """
    if divisor.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if dividend.degree < divisor.degree:
        return Polynomial(), dividend
    rem = list(dividend.coeffs)
    dcoeffs = divisor.coeffs
    dlead = divisor.leading
    ddeg = divisor.degree
    qlen = len(rem) - ddeg
    quot = [Fraction(0)] * qlen
    for shift in range(qlen - 1, -1, -1):
        factor = rem[shift + ddeg] / dlead
        if factor != 0:
            quot[shift] = factor
            for i, dc in enumerate(dcoeffs):
                rem[shift + i] -= factor * dc
    return Polynomial(quot), Polynomial(rem[:ddeg])


def expand_kernel(k: int, s: int) -> Polynomial:
    """Expanded form of ``-x^k * (1-x)^s`` with exact binomial coefficients.

    This is the z-independent part of the numerator ``z - x^k(1-x)^s``
    that the seed solver divides by the seed denominator.  Requires
    ``k + s >= 1`` (both zero would make the kernel a constant).
    """
    if k < 0 or s < 0:
        raise ValueError("exponents must be nonnegative")
    if k + s < 1:
        raise ValueError("k = s = 0: kernel is constant, nothing to expand")
    coeffs = [Fraction(0)] * (k + s + 1)
    for j in range(s + 1):
        # -x^k * C(s,j) * (-x)^j contributes (-1)^(j+1) C(s,j) x^(k+j)
        coeffs[k + j] = Fraction(comb(s, j) * (-1 if j % 2 == 0 else 1))
    return Polynomial(coeffs)


def derivative(p: Polynomial) -> Polynomial:
    return Polynomial(i * c for i, c in enumerate(p.coeffs) if i > 0)


def _poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a.is_zero:
        return a
    return a * (Fraction(1) / a.leading)


def _sign_changes(values) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_distinct_roots_on_unit_interval(p: Polynomial) -> int:
    """Exact count of distinct real roots of ``p`` in [0, 1] (Sturm chain).

    The squarefree part of ``p`` is isolated first (dividing by
    ``gcd(p, p')``) so repeated roots count once, and endpoint roots are
    deflated out and counted separately so the Sturm count covers the open
    interval.  Everything runs in exact rational arithmetic: no root can
    be missed or invented, in particular even-multiplicity roots that a
    sign scan cannot see.
    """
    if p.is_zero:
        raise ValueError("zero polynomial vanishes everywhere")
    if p.degree == 0:
        return 0
    endpoint_roots = int(p(0) == 0) + int(p(1) == 0)
    g = _poly_gcd(p, derivative(p))
    sf = poly_divmod(p, g)[0] if g.degree >= 1 else p
    if sf(0) == 0:
        sf = poly_divmod(sf, Polynomial((0, 1)))[0]
    if sf(1) == 0:
        sf = poly_divmod(sf, Polynomial((-1, 1)))[0]
    if sf.degree < 1:
        return endpoint_roots
    chain = [sf, derivative(sf)]
    while chain[-1].degree >= 1:
        _, r = poly_divmod(chain[-2], chain[-1])
        if r.is_zero:
            break
        chain.append(-r)
    interior = _sign_changes([q(0) for q in chain]) - _sign_changes(
        [q(1) for q in chain]
    )
    return max(interior, 0) + endpoint_roots


def has_root_on_unit_interval(p: Polynomial) -> bool:
    """Exact decision: does ``p`` vanish anywhere on [0, 1]?"""
    if p.is_zero:
        return True
    return count_distinct_roots_on_unit_interval(p) > 0


class ParamPolynomial:
    """Polynomial in ``x`` with coefficients that are polynomials in ``w``.

    ``coeffs[i]`` (a ``Polynomial`` in ``w``) multiplies ``x**i``.
    Supports ring arithmetic, exact specialization at rational ``w``, and
    long division by divisors whose leading ``x``-coefficient is a nonzero
    rational constant.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, Polynomial):
                cs.append(c)
            else:
                cs.append(Polynomial.constant(c))
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ParamPolynomial is immutable")

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "ParamPolynomial":
        """Lift a rational polynomial in x to constant-in-w coefficients."""
        return cls(Polynomial.constant(c) for c in p.coeffs)

    @classmethod
    def w(cls) -> "ParamPolynomial":
        return cls((Polynomial((0, 1)),))

    @classmethod
    def x(cls) -> "ParamPolynomial":
        return cls((Polynomial(), Polynomial.one()))

    @property
    def degree_x(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, degree: int) -> Polynomial:
        if 0 <= degree < len(self.coeffs):
            return self.coeffs[degree]
        return Polynomial()

    def __add__(self, other) -> "ParamPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return ParamPolynomial(
            self.coefficient(i) + other.coefficient(i) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> "ParamPolynomial":
        return ParamPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "ParamPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "ParamPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ParamPolynomial()
        out = [Polynomial() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ParamPolynomial(out)

    __rmul__ = __mul__

    @staticmethod
    def _coerce(other):
        if isinstance(other, ParamPolynomial):
            return other
        if isinstance(other, Polynomial):
            return ParamPolynomial((other,))
        if isinstance(other, (int, Fraction)):
            return ParamPolynomial((Polynomial.constant(other),))
        return NotImplemented

    def specialize(self, w0: RationalLike) -> Polynomial:
        """Exact substitution of a rational value for w."""
        w0 = rational(w0)
        return Polynomial(c(w0) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"ParamPolynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for deg in range(self.degree_x, -1, -1):
            c = self.coefficient(deg)
            if c.is_zero:
                continue
            ctext = format_poly(c.coeffs, "w")
            if deg == 0:
                parts.append(f"({ctext})")
            elif deg == 1:
                parts.append(f"({ctext})*x")
            else:
                parts.append(f"({ctext})*x^{deg}")
        return " + ".join(parts)


def param_divmod(dividend: ParamPolynomial, divisor: ParamPolynomial):
    """Long division in (Q[w])[x] for divisors with constant leading coefficient.

    Returns ``(quotient, remainder)`` with
    ``dividend == divisor * quotient + remainder`` exactly and
    ``remainder.degree_x < divisor.degree_x``.  The divisor's leading
    coefficient in x must be a nonzero rational constant so every division
    step stays inside polynomial (not rational-function) coefficients.
    """
    if divisor.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    lead = divisor.coeffs[-1]
    if lead.degree != 0:
        raise ValueError("divisor not monic-up-to-constant in x")
    lead_const = lead.coeffs[0]
    if dividend.degree_x < divisor.degree_x:
        return ParamPolynomial(), dividend
    rem = list(dividend.coeffs)
    ddeg = divisor.degree_x
    qlen = len(rem) - ddeg
    quot = [Polynomial() for _ in range(qlen)]
    inv = Fraction(1) / lead_const
    for shift in range(qlen - 1, -1, -1):
        factor = rem[shift + ddeg] * inv
        if not factor.is_zero:
            quot[shift] = factor
            for i, dc in enumerate(divisor.coeffs):
                rem[shift + i] = rem[shift + i] - factor * dc
    return ParamPolynomial(quot), ParamPolynomial(rem[:ddeg])
