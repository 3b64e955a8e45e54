"""Recurrence evaluation against independent oracles, weights, and norms."""

import cmath
import math

import mpmath
import numpy as np
import pytest
import scipy.special

import sincoord as sc
from sincoord.special import cgamma, gamma_abs_sq, hyp1f1, qpochhammer

PT11 = sc.PoschlTeller(1.0, 1.0)
PT23 = sc.PoschlTeller(2.0, 3.0)
DO1 = sc.DeformedOscillator(1.0)
AW0 = sc.AskeyWilson(0.0, 0.0, 0.0, 0.0, q=0.5)
AW1 = sc.AskeyWilson(0.1, 0.2, -0.1, 0.3, q=0.5)


# ---------------------------------------------------------------------------
# oracles, independent of the recurrence path


def mp_poly_oracle(a, n, x):
    """Meixner-Pollaczek at phase pi/2 via its terminating 2F1 sum."""
    total = 0.0 + 0j
    term = 1.0 + 0j
    for k in range(n + 1):
        if k > 0:
            term *= (-n + k - 1) * (a + 1j * x + k - 1) * 2.0 / ((2 * a + k - 1) * k)
        total += term
    poch = 1.0
    for j in range(n):
        poch *= 2 * a + j
    value = poch / math.factorial(n) * (1j**n) * total
    assert abs(value.imag) < 1e-10 * max(1.0, abs(value))
    return value.real


def qpoch_fin(z, q, n):
    out = 1.0 + 0j
    for k in range(n):
        out *= 1.0 - z * q**k
    return out


def aw_poly_oracle(spec, n, theta):
    """Askey-Wilson value from the terminating basic hypergeometric sum.

    The alternating q^(j-n) terms cancel heavily, so the sum runs in
    multi-precision arithmetic.
    """
    params = list(spec.params)
    slot = next(i for i, v in enumerate(params) if v != 0.0)
    with mpmath.workdps(40):
        a = mpmath.mpf(params.pop(slot))
        b, c, d = (mpmath.mpf(v) for v in params)
        q = mpmath.mpf(spec.q)
        b4 = a * b * c * d
        z = mpmath.exp(1j * mpmath.mpf(theta))
        pref = (
            mpmath.qp(a * b, q, n) * mpmath.qp(a * c, q, n) * mpmath.qp(a * d, q, n)
        ) / a**n
        total = mpmath.mpc(0)
        term = mpmath.mpc(1)
        for k in range(n + 1):
            if k > 0:
                j = k - 1
                term *= (1 - q ** (j - n)) * (1 - b4 * q ** (n - 1 + j))
                term *= (1 - a * z * q**j) * (1 - a / z * q**j)
                term /= (1 - a * b * q**j) * (1 - a * c * q**j) * (1 - a * d * q**j)
                term *= q / (1 - q ** (j + 1))
            total += term
        value = pref * total
        assert abs(value.imag) < 1e-20 * max(1, abs(value))
        return float(value.real)


def q_hermite_oracle(q, n, theta):
    """Continuous q-Hermite via its explicit q-binomial sum."""

    def qfac(m):
        return qpoch_fin(q, q, m).real

    total = 0.0 + 0j
    for k in range(n + 1):
        total += qfac(n) / (qfac(k) * qfac(n - k)) * cmath.exp(1j * (n - 2 * k) * theta)
    assert abs(total.imag) < 1e-12 * max(1.0, abs(total))
    return total.real


# ---------------------------------------------------------------------------
# recurrence coefficients and evaluation


class TestRecurrence:
    def test_do_first_row(self):
        rec = sc.recurrence(DO1)
        assert (rec.A(1), rec.B(1), rec.C(1)) == (1.0, 0.0, 1.0)

    def test_do_diagonal_vanishes(self):
        rec = sc.recurrence(DO1)
        assert all(rec.B(n) == 0.0 for n in range(30))

    def test_pt_lowering_coefficient(self):
        assert sc.recurrence(PT11).C(1) == pytest.approx(0.375, abs=1e-15)

    def test_degree_zero_base_case(self):
        # eta * P0 = A0 P1 + B0 P0 must hold identically
        for spec in (PT11, PT23, DO1, AW1):
            rec = sc.recurrence(spec)
            for eta in (-0.4, 0.1, 0.8):
                p1 = sc.eval_poly(spec, 1, eta)
                assert eta == pytest.approx(rec.A(0) * p1 + rec.B(0), rel=1e-13)

    def test_c0_is_never_defined(self):
        for spec in (PT11, DO1, AW1):
            with pytest.raises(ValueError):
                sc.recurrence(spec).C(0)

    def test_raising_never_vanishes(self):
        for spec in (PT11, PT23, DO1, AW1):
            rec = sc.recurrence(spec)
            assert all(rec.A(n) != 0.0 for n in range(40))

    def test_pt_balanced_couplings_give_symmetric_diagonal(self):
        rec = sc.recurrence(sc.PoschlTeller(0.3, 0.7))
        # g + h = 1 puts alpha + beta = 0; the n = 0 limit form must be finite
        assert math.isfinite(rec.B(0))
        assert rec.B(0) == pytest.approx((0.2 - (-0.2)) / 2.0, rel=1e-12)


class TestEvalPoly:
    def test_degree_zero_is_one(self):
        for spec in (PT11, DO1, AW1):
            assert sc.eval_poly(spec, 0, 0.37) == 1.0

    def test_do_linear_value(self):
        assert sc.eval_poly(DO1, 1, 0.7) == pytest.approx(1.4, abs=1e-15)

    @pytest.mark.parametrize("spec", [PT11, PT23, sc.PoschlTeller(1.0, 2.0)])
    def test_pt_matches_scipy_jacobi(self, spec):
        etas = np.linspace(-0.95, 0.95, 21)
        for n in range(9):
            mine = sc.eval_poly(spec, n, etas)
            ref = scipy.special.eval_jacobi(n, spec.alpha, spec.beta, etas)
            assert np.max(np.abs(mine - ref)) < 1e-12 * max(1.0, np.max(np.abs(ref)))

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
    def test_do_matches_terminating_2f1(self, a):
        spec = sc.DeformedOscillator(a)
        for n in range(9):
            for x in np.linspace(-4.0, 4.0, 9):
                ref = mp_poly_oracle(a, n, x)
                assert sc.eval_poly(spec, n, x) == pytest.approx(
                    ref, rel=1e-11, abs=1e-11
                )

    def test_aw_matches_terminating_4phi3(self):
        for n in range(7):
            for theta in np.linspace(0.3, 2.8, 7):
                ref = aw_poly_oracle(AW1, n, theta)
                mine = sc.eval_poly(AW1, n, math.cos(theta))
                assert mine == pytest.approx(ref, rel=1e-12, abs=1e-13)

    def test_aw_zero_parameters_reduce_to_q_hermite(self):
        for n in range(8):
            for theta in np.linspace(0.3, 2.8, 7):
                ref = q_hermite_oracle(0.5, n, theta)
                mine = sc.eval_poly(AW0, n, math.cos(theta))
                assert mine == pytest.approx(ref, rel=1e-12, abs=1e-13)

    def test_do_parity(self):
        xs = np.linspace(0.1, 6.0, 20)
        for n in range(9):
            even = sc.eval_poly(DO1, n, xs)
            odd = sc.eval_poly(DO1, n, -xs)
            assert np.max(np.abs(odd - (-1.0) ** n * even)) < 1e-12 * np.max(
                np.abs(even) + 1
            )

    @pytest.mark.parametrize("spec", [PT23, DO1, AW1])
    def test_exact_degree_by_finite_differences(self, spec):
        step = 0.25
        for n in range(1, 9):
            grid = np.arange(n + 2) * step - 0.5
            vals = sc.eval_poly(spec, n, grid)
            scale = np.max(np.abs(vals))
            top = np.diff(vals, n)  # proportional to the leading coefficient
            flat = np.diff(vals, n + 1)  # must vanish for exact degree n
            assert np.max(np.abs(flat)) < 1e-8 * scale
            assert np.max(np.abs(top)) > 1e-10 * scale


# ---------------------------------------------------------------------------
# special functions backing the weights


class TestSpecialFunctions:
    def test_gamma_against_scipy(self):
        for a in (0.3, 0.75, 1.0, 2.0):
            xs = np.linspace(0.0, 30.0, 61)
            mine = gamma_abs_sq(a, xs)
            ref = np.exp(2.0 * np.real(scipy.special.loggamma(a + 1j * xs)))
            assert np.max(np.abs(mine - ref) / ref) < 1e-12

    def test_gamma_reflection_consistency(self):
        z = complex(0.3, 1.7)
        assert abs(cgamma(z) * cgamma(1 - z) - math.pi / cmath.sin(math.pi * z)) < 1e-14

    def test_qpochhammer_against_mpmath(self):
        for z in (0.3, -0.8, complex(0.2, 0.6)):
            mine = qpochhammer(z, 0.5)
            ref = complex(mpmath.qp(z, 0.5))
            assert abs(mine - ref) < 1e-13 * abs(ref)

    def test_qpochhammer_finite(self):
        assert qpochhammer(2.0, 3.0, 5).real == pytest.approx(-725305.0)

    def test_hyp1f1_against_mpmath(self):
        for a, b, z in (
            (complex(1, 0.5), 2.0, -1.2j),
            (complex(0.5, -2.0), 1.0, 0.9j),
        ):
            mine = hyp1f1(a, b, z)
            ref = complex(mpmath.hyp1f1(a, b, z))
            assert abs(mine - ref) < 1e-13 * max(1.0, abs(ref))


# ---------------------------------------------------------------------------
# weights and quadrature norms


class TestWeight:
    def test_pt_value(self):
        wf = sc.weight(PT11)
        assert wf.density(math.pi / 4) == pytest.approx(0.25, abs=1e-15)

    def test_do_value_at_origin(self):
        wf = sc.weight(DO1)
        assert wf.density(0.0) == pytest.approx(1.0, abs=1e-13)

    def test_pt_domain_enforced(self):
        wf = sc.weight(PT11)
        for x in (-0.1, 0.0, math.pi / 2, 2.0):
            with pytest.raises(sc.EvaluationDomain):
                wf.density(x)

    def test_aw_value_against_direct_product(self):
        wf = sc.weight(AW1)
        x = math.pi / 2
        z = cmath.exp(1j * x)
        num = abs(complex(mpmath.qp(z * z, 0.5))) ** 2
        den = 1.0
        for aj in AW1.params:
            den *= abs(complex(mpmath.qp(aj * z, 0.5))) ** 2
        assert wf.density(x) == pytest.approx(num / den, rel=1e-12)

    def test_aw_density_positive(self):
        wf = sc.weight(AW1)
        xs = np.linspace(0.05, math.pi - 0.05, 40)
        assert np.all(wf.density(xs) > 0)

    def test_coordinate_maps(self):
        assert sc.weight(PT11).eta(0.3) == pytest.approx(math.cos(0.6))
        assert sc.weight(DO1).eta(1.7) == 1.7
        assert sc.weight(AW1).eta(0.3) == pytest.approx(math.cos(0.3))


NORM_SETTINGS = [
    sc.PoschlTeller(1.0, 1.0),
    sc.PoschlTeller(2.0, 3.0),
    sc.PoschlTeller(1.5, 1.0),
    sc.DeformedOscillator(0.5),
    sc.DeformedOscillator(1.0),
    sc.DeformedOscillator(2.0),
    AW0,
    AW1,
    sc.AskeyWilson(0.1, 0.2, 0.3, 0.4, q=0.5),
]


class TestNorms:
    @pytest.mark.parametrize("spec", NORM_SETTINGS)
    def test_positive(self, spec):
        h = sc.norms(spec, 12)
        assert np.all(h > 0)

    @pytest.mark.parametrize("spec", NORM_SETTINGS)
    def test_orthogonality(self, spec):
        gram = sc.gram_matrix(spec, 10)
        h = np.diag(gram)
        off = gram - np.diag(h)
        leak = np.abs(off) / np.sqrt(np.outer(h, h))
        assert np.max(leak) < 1e-8

    @pytest.mark.parametrize("spec", [PT11, PT23, DO1, AW1])
    def test_hermiticity_bridge(self, spec):
        h = sc.norms(spec, 21)
        rec = sc.recurrence(spec)
        for n in range(21):
            lhs = rec.A(n) * h[n + 1]
            rhs = rec.C(n + 1) * h[n]
            assert abs(lhs - rhs) <= 1e-8 * abs(rhs)

    def test_pt_below_one_warns(self):
        with pytest.warns(UserWarning, match="endpoint"):
            sc.norms(sc.PoschlTeller(0.8, 1.2), 4)
