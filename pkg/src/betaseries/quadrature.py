"""Endpoint-singularity-aware quadrature on [0, 1].

Integrands have the shape ``x^a (1-x)^b N(x) / D(x)`` with rational
``a, b > -1``, polynomial numerator, and a denominator that is either a
polynomial with no root on [0, 1] or the kernel form ``z - x^k (1-x)^s``.

The double-exponential substitution ``x = (1 + tanh((pi/2) sinh t)) / 2``
turns the algebraic endpoint singularities into doubly exponential decay of
the transformed integrand, so the trapezoid rule in ``t`` converges
superlinearly as the step is halved.  The step is halved (reusing previous
nodes) until two successive levels agree to ``target_digits + 5``; failure
to converge within ``max_levels`` halvings raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from mpmath import mp, mpf

from .derive import convergence_bound
from .polynomials import Polynomial, has_root_on_unit_interval, rational


class QuadratureError(ArithmeticError):
    """The level-doubling scheme did not reach the requested agreement."""


@dataclass(frozen=True)
class KernelForm:
    """Denominator ``z - x^k (1-x)^s``."""

    z: Fraction
    k: int
    s: int

    def __post_init__(self):
        object.__setattr__(self, "z", rational(self.z))
        if self.k < 0 or self.s < 0 or self.k + self.s < 1:
            raise ValueError("need nonnegative k, s with k + s >= 1")

    def vanishes_on_unit_interval(self) -> bool:
        # x^k (1-x)^s covers [0, M] on [0, 1]; the denominator vanishes
        # somewhere iff z lands in that range.
        return 0 <= self.z <= convergence_bound(self.k, self.s)


Denominator = Union[Polynomial, KernelForm, None]


@dataclass(frozen=True)
class QuadratureProblem:
    """``int_0^1 x^a (1-x)^b * numerator(x) / denominator(x) dx``."""

    a: Fraction
    b: Fraction
    numerator: Polynomial = Polynomial((1,))
    denominator: Denominator = None

    def __post_init__(self):
        object.__setattr__(self, "a", rational(self.a))
        object.__setattr__(self, "b", rational(self.b))
        if self.a <= -1 or self.b <= -1:
            raise ValueError("need a > -1 and b > -1 for integrability")
        if self.numerator.is_zero:
            raise ValueError("numerator is the zero polynomial")
        den = self.denominator
        if isinstance(den, Polynomial):
            if den.is_zero:
                raise ValueError("denominator is the zero polynomial")
            if has_root_on_unit_interval(den):
                raise ValueError("denominator has a root on [0, 1]")
        elif isinstance(den, KernelForm):
            if den.vanishes_on_unit_interval():
                raise ValueError("kernel denominator vanishes on [0, 1]")
        elif den is not None:
            raise TypeError("denominator must be Polynomial, KernelForm or None")


def _horner(coeffs: Tuple[mpf, ...], x: mpf) -> mpf:
    acc = mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def integrate(
    problem: QuadratureProblem,
    target_digits: int,
    max_levels: int = 20,
) -> mpf:
    """Value of the integral, correct to ``target_digits`` decimal digits."""
    if target_digits < 1:
        raise ValueError("target_digits must be >= 1")
    wp = target_digits + 15
    with mp.workdps(wp):
        a = mpf(problem.a.numerator) / problem.a.denominator
        b = mpf(problem.b.numerator) / problem.b.denominator
        num_coeffs = tuple(
            mpf(c.numerator) / c.denominator for c in problem.numerator.coeffs
        )
        den = problem.denominator
        if isinstance(den, Polynomial):
            den_coeffs = tuple(mpf(c.numerator) / c.denominator for c in den.coeffs)

            def denom(x: mpf, omx: mpf) -> mpf:
                return _horner(den_coeffs, x)

        elif isinstance(den, KernelForm):
            zv = mpf(den.z.numerator) / den.z.denominator
            kk, ks = den.k, den.s

            def denom(x: mpf, omx: mpf) -> mpf:
                return zv - x**kk * omx**ks

        else:

            def denom(x: mpf, omx: mpf) -> mpf:
                return mpf(1)

        pi_half = mp.pi / 2

        def node(t: mpf) -> mpf:
            """Transformed integrand times dx/dt, stable at both endpoints."""
            u = pi_half * mp.sinh(t)
            if u >= 0:
                em = mp.exp(-2 * u)
                x = 1 / (1 + em)
                omx = em / (1 + em)
            else:
                ep = mp.exp(2 * u)
                x = ep / (1 + ep)
                omx = 1 / (1 + ep)
            if x == 0 or omx == 0:
                return mpf(0)
            weight = mp.pi * mp.cosh(t) * x * omx
            val = x**a * omx**b * _horner(num_coeffs, x) / denom(x, omx)
            return val * weight

        trunc_tol = mpf(10) ** (-(wp + 5))
        agree_tol = mpf(10) ** (-(target_digits + 5))
        t_cap = mpf(15)

        def pair_sum(h: mpf, start: int, step: int) -> mpf:
            """Sum of node(j*h) + node(-j*h) for j = start, start+step, ..."""
            total = mpf(0)
            small = 0
            j = start
            while j * h <= t_cap:
                contrib = node(j * h) + node(-j * h)
                total += contrib
                if abs(contrib) < trunc_tol:
                    small += 1
                    if small >= 3:
                        break
                else:
                    small = 0
                j += step
            return total

        h = mpf(1)
        estimate = h * (node(mpf(0)) + pair_sum(h, 1, 1))
        previous = None
        for _level in range(max_levels):
            if previous is not None and abs(estimate - previous) <= agree_tol * max(
                mpf(1), abs(estimate)
            ):
                return estimate
            previous = estimate
            h = h / 2
            estimate = previous / 2 + h * pair_sum(h, 1, 2)
        raise QuadratureError(
            f"no convergence to {target_digits} digits after {max_levels} levels"
        )
