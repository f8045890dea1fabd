"""Quadrature and reference constants: the independent side of every check."""

import random
from fractions import Fraction as F

import pytest
from mpmath import gamma as mp_gamma
from mpmath import mp, mpf

from betaseries.polynomials import Polynomial
from betaseries.quadrature import (
    KernelForm,
    QuadratureProblem,
    integrate,
)
from betaseries.references import (
    asin_of,
    atan_of,
    catalan_accelerated,
    gamma_combination,
    ln2_series,
    ln_of,
    nth_root,
    pi_machin,
    reference,
    sqrt_of,
)


class TestQuadratureValidation:
    def test_exponent_bounds(self):
        with pytest.raises(ValueError):
            QuadratureProblem(a=F(-1), b=F(0))
        with pytest.raises(ValueError):
            QuadratureProblem(a=F(0), b=F(-5, 4))

    def test_polynomial_root_rejected(self):
        with pytest.raises(ValueError, match="root"):
            QuadratureProblem(a=F(0), b=F(0), denominator=Polynomial([-1, 2]))

    def test_kernel_vanishing_rejected(self):
        # 0 <= z <= sup x(1-x) = 1/4 vanishes inside [0, 1]
        with pytest.raises(ValueError, match="vanishes"):
            QuadratureProblem(
                a=F(0), b=F(0), denominator=KernelForm(z=F(1, 8), k=1, s=1)
            )

    def test_negative_kernel_ok(self):
        QuadratureProblem(a=F(0), b=F(0), denominator=KernelForm(z=F(-2), k=1, s=1))


class TestIntegrate:
    def test_beta_half_half_is_pi(self):
        value = integrate(QuadratureProblem(a=F(-1, 2), b=F(-1, 2)), 30)
        with mp.workdps(45):
            assert abs(value - pi_machin(40)) < mpf(10) ** -30

    def test_arcsine_seed_integral(self):
        # int x^(-1/2)/(1 + x/3) = pi sqrt(3)/3
        value = integrate(
            QuadratureProblem(
                a=F(-1, 2), b=F(0), denominator=Polynomial([1, F(1, 3)])
            ),
            30,
        )
        with mp.workdps(45):
            expected = pi_machin(40) * sqrt_of(mpf(3)) / 3
            assert abs(value - expected) < mpf(10) ** -30

    def test_gamma_third_integral(self):
        # int x^(-1/3) (1-x)^(-1/2) / (1 + x/8) = 4 sqrt(3) pi / 9
        value = integrate(
            QuadratureProblem(
                a=F(-1, 3), b=F(-1, 2), denominator=Polynomial([1, F(1, 8)])
            ),
            30,
        )
        with mp.workdps(45):
            expected = 4 * sqrt_of(mpf(3)) * pi_machin(40) / 9
            assert abs(value - expected) < mpf(10) ** -30

    def test_kernel_form_with_numerator(self):
        # the (2.8)-shaped integrand against its closed value -pi sqrt(3)/9
        value = integrate(
            QuadratureProblem(
                a=F(-1, 2),
                b=F(0),
                numerator=Polynomial([16, -5, 1]),
                denominator=KernelForm(z=F(-48), k=1, s=2),
            ),
            30,
        )
        with mp.workdps(45):
            expected = -pi_machin(40) * sqrt_of(mpf(3)) / 9
            assert abs(value - expected) < mpf(10) ** -30

    def test_beta_identity_random_parameters(self):
        # quadrature equals the Gamma-product reference across (0, 3]
        rng = random.Random(17)
        with mp.workdps(45):
            for _ in range(6):
                p = F(rng.randint(1, 24), 8)
                q = F(rng.randint(1, 24), 8)
                value = integrate(QuadratureProblem(a=p - 1, b=q - 1), 30)
                expected = (
                    mp_gamma(mpf(p.numerator) / p.denominator)
                    * mp_gamma(mpf(q.numerator) / q.denominator)
                    / mp_gamma(mpf((p + q).numerator) / (p + q).denominator)
                )
                assert abs(value - expected) < mpf(10) ** -29

    def test_strong_endpoint_singularity(self):
        # a = -4/5 stresses the substitution's tail handling
        value = integrate(QuadratureProblem(a=F(-4, 5), b=F(3, 5)), 30)
        with mp.workdps(45):
            expected = (
                mp_gamma(mpf(1) / 5) * mp_gamma(mpf(8) / 5) / mp_gamma(mpf(9) / 5)
            )
            assert abs(value - expected) < mpf(10) ** -29

    def test_bad_digits(self):
        with pytest.raises(ValueError):
            integrate(QuadratureProblem(a=F(0), b=F(0)), 0)


class TestElementaryFunctions:
    def test_nth_root(self):
        with mp.workdps(50):
            two = nth_root(mpf(32), 5)
            assert abs(two - 2) < mpf(10) ** -45
            s = sqrt_of(F(9, 4))
            assert abs(s - mpf(3) / 2) < mpf(10) ** -45

    def test_atan_known_value(self):
        with mp.workdps(50):
            # atan(1/sqrt(3)) = pi/6
            value = atan_of(1 / sqrt_of(mpf(3)))
            assert abs(value - pi_machin(50) / 6) < mpf(10) ** -45

    def test_asin_known_value(self):
        with mp.workdps(50):
            value = asin_of(mpf(1) / 2)
            assert abs(value - pi_machin(50) / 6) < mpf(10) ** -45

    def test_ln_consistency(self):
        with mp.workdps(50):
            assert abs(ln_of(mpf(2)) - ln2_series(50)) < mpf(10) ** -45
            # ln(2 - sqrt(3)) = -ln(2 + sqrt(3))
            s3 = sqrt_of(mpf(3))
            assert abs(ln_of(2 - s3) + ln_of(2 + s3)) < mpf(10) ** -45

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            ln_of(mpf(0))
        with pytest.raises(ValueError):
            asin_of(mpf(1))
        with pytest.raises(ValueError):
            nth_root(mpf(-1), 2)


class TestReferenceConstants:
    def test_pi_two_ways(self):
        # Machin arctangents vs Beta(1/2,1/2) quadrature, 50 digits
        machin = pi_machin(50)
        quad = integrate(QuadratureProblem(a=F(-1, 2), b=F(-1, 2)), 50)
        with mp.workdps(65):
            assert abs(machin - quad) < mpf(10) ** -50

    def test_catalan_value(self):
        with mp.workdps(45):
            value = catalan_accelerated(35)
            known = mpf("0.91596559417721901505460351493238411077414937428167")
            assert abs(value - known) < mpf(10) ** -34

    def test_reference_dispatch(self):
        with mp.workdps(40):
            assert abs(reference("pi", 30) - pi_machin(30)) == 0
            assert abs(reference("sqrt(2)", 30) ** 2 - 2) < mpf(10) ** -28
            b = reference("beta(1/2,1/2)", 30)
            assert abs(b - pi_machin(35)) < mpf(10) ** -29
            assert reference("ln2", 30) == ln2_series(30)

    def test_reference_unknown(self):
        with pytest.raises(ValueError):
            reference("zeta3", 30)
        with pytest.raises(ValueError):
            reference("sqrt(-4)", 30)

    def test_cache_returns_same_object(self):
        a = pi_machin(33)
        b = pi_machin(33)
        assert a == b

    def test_concurrent_reads(self):
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=8) as pool:
            values = list(pool.map(lambda _: pi_machin(37), range(32)))
        assert all(v == values[0] for v in values)


class TestGammaCombinations:
    def test_kummer_half_collapses_to_half_pi(self):
        value = gamma_combination("kummer(1/2)", 30)
        with mp.workdps(45):
            assert abs(value - pi_machin(40) / 2) < mpf(10) ** -30

    def test_kummer_against_gamma_products(self):
        with mp.workdps(50):
            for h in (F(1, 3), F(1, 4), F(1, 5)):
                value = gamma_combination(f"kummer({h})", 30)
                hf = mpf(h.numerator) / h.denominator
                expected = (
                    mp.sqrt(mp.pi)
                    * mp_gamma(2 - 2 * hf)
                    * mp_gamma(hf)
                    / (2 * mp_gamma(mpf(3) / 2 - hf))
                )
                assert abs(value - expected) < mpf(10) ** -29

    def test_gamma_third_cubed(self):
        value = gamma_combination("G13cubed", 30)
        with mp.workdps(45):
            expected = mp_gamma(mpf(1) / 3) ** 3
            assert abs(value - expected) < mpf(10) ** -29

    def test_kummer_third_collapses_by_duplication(self):
        # Gamma duplication/reflection collapse kummer(1/3) to 2^(1/3) pi/sqrt(3)
        value = gamma_combination("kummer(1/3)", 30)
        with mp.workdps(45):
            expected = nth_root(mpf(2), 3) * pi_machin(40) / sqrt_of(mpf(3))
            assert abs(value - expected) < mpf(10) ** -29

    def test_reflection_pair(self):
        with mp.workdps(45):
            g14 = gamma_combination("G14sq", 30)
            g34 = gamma_combination("G34sq", 30)
            # Gamma(1/4)^2 * Gamma(3/4)^2 = 2 pi^2 by reflection
            assert abs(g14 * g34 - 2 * pi_machin(40) ** 2) < mpf(10) ** -27

    def test_kummer_domain(self):
        with pytest.raises(ValueError):
            gamma_combination("kummer(3/2)", 20)
        with pytest.raises(ValueError):
            gamma_combination("nonsense", 20)
