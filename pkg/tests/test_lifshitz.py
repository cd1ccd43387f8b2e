import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad
from scipy.special import zeta as scipy_zeta

from casimir.dielectric import DrudeModel, IdealMetal, MaterialDatabase, Vacuum
from casimir.lifshitz import (
    ModePoint,
    PressureResult,
    QuadratureSpec,
    ReflectionPair,
    SumConvergenceError,
    casimir_pressure,
    lifshitz_variables,
    matsubara_term,
    mode_integrand,
    mode_point,
    reflection_te,
    reflection_tm,
    zero_mode_pressure,
    zeta3,
)
from casimir.quantities import (
    CODATA,
    Geometry,
    matsubara_frequency,
    reduced_temperature,
)

DB = MaterialDatabase.builtin()
AU = DrudeModel(DB.get("Au"))
CU = DrudeModel(DB.get("Cu"))


def ideal_metal_term_oracle(lower: float) -> float:
    """Closed-form mode integral for unit reflection, both polarizations.

    Expanding x/(1-x) in the geometric series and integrating termwise:
        2 * sum_{n>=1} e^{-2nA} (2(nA)^2 + 2nA + 1) / (4n^3).
    """
    n_max = max(200, int(18.0 / (2.0 * lower)) + 1)
    n = np.arange(1, n_max + 1, dtype=float)
    na = n * lower
    terms = np.exp(-2.0 * na) * (2.0 * na**2 + 2.0 * na + 1.0) / (4.0 * n**3)
    return 2.0 * math.fsum(terms.tolist())


class TestLifshitzVariables:
    def test_vacuum(self):
        s1, s3 = lifshitz_variables(1.0, 1.0, 3.0)
        assert s1 == 3.0 and s3 == 3.0

    def test_direct_substitution(self):
        s1, _ = lifshitz_variables(2.0, 1.0, 1.0)
        assert s1 == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_composed_with_drude(self):
        eps = 1.99619
        s1, _ = lifshitz_variables(eps, 1.0, 1.0)
        assert s1 == pytest.approx(1.41287, rel=1e-5)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            lifshitz_variables(0.5, 1.0, 1.0)
        with pytest.raises(ValueError):
            lifshitz_variables(1.0, 1.0, 0.5)


class TestReflections:
    def test_te_vacuum(self):
        assert reflection_te(2.0, 2.0) == 0.0

    def test_te_ideal_limit(self):
        assert reflection_te(1e12, 1.0) == pytest.approx(1.0, abs=1e-11)

    def test_te_hand_value(self):
        got = reflection_te(math.sqrt(2.0), 1.0)
        assert got == pytest.approx((math.sqrt(2) - 1) / (math.sqrt(2) + 1), rel=1e-15)
        assert got == pytest.approx(0.171573, rel=1e-6)

    def test_tm_vacuum(self):
        assert reflection_tm(1.0, 1.0, 1.0) == 0.0

    def test_tm_ideal_limit(self):
        eps = 1e12
        s = math.sqrt(eps - 1 + 1)
        assert reflection_tm(eps, s, 1.0) == pytest.approx(1.0, abs=1e-5)

    def test_tm_hand_value(self):
        got = reflection_tm(2.0, math.sqrt(2.0), 1.0)
        assert got == pytest.approx((2 - math.sqrt(2)) / (2 + math.sqrt(2)), rel=1e-14)
        assert got == pytest.approx(0.171573, rel=1e-6)

    @settings(max_examples=300, deadline=None)
    @given(
        eps=st.floats(min_value=1.0, max_value=1e10),
        p=st.floats(min_value=1.0, max_value=1e6),
    )
    def test_bounds(self, eps, p):
        s1, _ = lifshitz_variables(eps, 1.0, p)
        dte = reflection_te(s1, p)
        dtm = reflection_tm(eps, s1, p)
        assert 0.0 <= dte < 1.0
        assert 0.0 <= dtm < 1.0


class TestModeIntegrand:
    def test_vacuum_zero(self):
        rp = ReflectionPair(0.0, 0.0, "TM")
        assert mode_integrand(rp, ReflectionPair(0.0, 0.0, "TE"), 1.0) == 0.0

    def test_ideal_metal_hand_value(self):
        # 2 * 1^2 * e^-2/(1 - e^-2)
        rp = ReflectionPair(1.0, 1.0)
        got = mode_integrand(rp, rp, 1.0)
        assert got == pytest.approx(2.0 * math.exp(-2) / (1 - math.exp(-2)), rel=1e-14)
        assert got == pytest.approx(0.313035, rel=1e-6)

    def test_exponential_decay(self):
        rp = ReflectionPair(0.9, 0.9)
        v10 = mode_integrand(rp, rp, 10.0)
        v20 = mode_integrand(rp, rp, 20.0)
        assert v20 < v10 * 1e-6

    def test_rejects_saturated_product(self):
        rp = ReflectionPair(1.2, 1.0)
        with pytest.raises(ValueError):
            mode_integrand(rp, rp, 0.05)

    def test_rejects_nonpositive_y(self):
        rp = ReflectionPair(0.5, 0.5)
        with pytest.raises(ValueError):
            mode_integrand(rp, rp, 0.0)

    def test_vectorised(self):
        rp = ReflectionPair(0.8, 0.7)
        y = np.array([0.5, 1.0, 2.0])
        out = mode_integrand(rp, rp, y)
        assert out.shape == (3,)
        assert np.all(out > 0)


class TestModePoint:
    def test_fields(self):
        geom = Geometry(1.0, 300.0)
        gamma = reduced_temperature(geom)
        mp = mode_point(2, 3.0, geom, AU, CU)
        assert mp.m == 2
        assert mp.gamma == gamma
        assert mp.p == pytest.approx(3.0 / (2 * gamma), rel=1e-15)
        assert mp.s1 >= mp.p and mp.s3 >= mp.p

    def test_below_lower_limit_rejected(self):
        geom = Geometry(1.0, 300.0)
        with pytest.raises(ValueError):
            mode_point(3, 0.1, geom, AU, CU)
        with pytest.raises(ValueError):
            mode_point(0, 1.0, geom, AU, CU)


class TestZeta3:
    def test_twelve_significant_digits(self):
        assert abs(zeta3() - 1.2020569031595943) < 1e-13
        # independent cross-check
        assert zeta3() == pytest.approx(float(scipy_zeta(3.0)), abs=1e-13)

    def test_zero_mode_constant(self):
        assert zeta3() / 8.0 == pytest.approx(0.1502571129, abs=5e-11)

    def test_partial_sums_monotone(self):
        partial = np.cumsum(1.0 / np.arange(1, 50, dtype=float) ** 3)
        assert np.all(np.diff(partial) > 0)
        assert np.all(partial < zeta3())


class TestZeroModePressure:
    def test_room_temperature_micron(self):
        assert zero_mode_pressure(Geometry(1.0, 300.0)) == pytest.approx(-0.19810, rel=1e-4)

    def test_linear_in_temperature(self):
        p300 = zero_mode_pressure(Geometry(1.0, 300.0))
        p3 = zero_mode_pressure(Geometry(1.0, 3.0))
        assert p3 == pytest.approx(p300 / 100.0, rel=1e-12)

    def test_large_gap_below_total(self):
        # static piece alone must stay below the full pressure magnitude
        zm = abs(zero_mode_pressure(Geometry(4.0, 300.0)))
        assert zm == pytest.approx(3.0953e-3, rel=1e-4)
        assert zm < 3.481e-3


class TestMatsubaraTerm:
    def test_vacuum_zero(self):
        geom = Geometry(1.0, 300.0)
        assert matsubara_term(1, geom, Vacuum(), AU) == 0.0
        assert matsubara_term(1, geom, Vacuum(), Vacuum()) == 0.0

    def test_static_mode_rejected(self):
        with pytest.raises(ValueError):
            matsubara_term(0, Geometry(1.0, 300.0), AU, AU)

    @pytest.mark.parametrize("m,a_um,T_K", [
        (1, 1.0, 300.0),
        (3, 1.0, 300.0),
        (1, 0.5, 10.0),
        (40, 2.0, 77.0),
    ])
    def test_ideal_metal_matches_series_oracle(self, m, a_um, T_K):
        geom = Geometry(a_um, T_K)
        lower = m * reduced_temperature(geom)
        got = matsubara_term(m, geom, IdealMetal(), IdealMetal())
        assert got == pytest.approx(ideal_metal_term_oracle(lower), rel=1e-10)

    def test_against_quadpack(self):
        # independent integrator over the same integrand
        geom = Geometry(1.0, 300.0)
        m = 2
        gamma = reduced_temperature(geom)
        zeta = matsubara_frequency(m, geom.T_K)
        eps = AU.epsilon(zeta)

        def f(y):
            p = y / (m * gamma)
            s = math.sqrt(eps - 1.0 + p * p)
            dte = (s - p) / (s + p)
            dtm = (eps * p - s) / (eps * p + s)
            e2 = math.exp(-2.0 * y)
            xtm = dtm * dtm * e2
            xte = dte * dte * e2
            return y * y * (xtm / (1 - xtm) + xte / (1 - xte))

        ref, _ = quad(f, m * gamma, m * gamma + 40.0, epsabs=0.0, epsrel=1e-13, limit=500)
        assert matsubara_term(m, geom, AU, AU) == pytest.approx(ref, rel=1e-10)

    def test_terms_decay_for_large_m(self):
        geom = Geometry(1.0, 300.0)
        t5 = matsubara_term(5, geom, AU, AU)
        t10 = matsubara_term(10, geom, AU, AU)
        t20 = matsubara_term(20, geom, AU, AU)
        assert t20 < t10 < t5


class TestCasimirPressure:
    def test_vacuum_either_side(self):
        geom = Geometry(1.0, 300.0)
        for pair in ((Vacuum(), AU), (AU, Vacuum()), (Vacuum(), Vacuum())):
            res = casimir_pressure(geom, *pair)
            assert res.pressure_mPa == 0.0
            assert res.converged
            assert res.n_terms_used == 0

    def test_attractive_and_bookkeeping(self):
        res = casimir_pressure(Geometry(1.0, 300.0), AU, AU)
        assert res.pressure_mPa < 0
        assert res.converged
        assert res.n_terms_used >= 5  # minimum term count before stopping
        assert res.zero_mode_mPa == pytest.approx(-0.19810, rel=1e-4)
        # the result decomposes into the recorded pieces
        total = res.zero_mode_mPa + res.terms_mPa.sum()
        assert res.pressure_mPa == pytest.approx(total, rel=1e-12)
        assert 0 < res.zero_mode_share < 1
        assert res.max_zeta_eV == matsubara_frequency(res.n_terms_used, 300.0)

    def test_pair_symmetry_is_exact(self):
        geom = Geometry(0.7, 300.0)
        res_13 = casimir_pressure(geom, AU, CU)
        res_31 = casimir_pressure(geom, CU, AU)
        assert res_13.pressure_mPa == res_31.pressure_mPa
        assert res_13.n_terms_used == res_31.n_terms_used

    def test_ideal_metal_low_temperature(self):
        # closed-form zero-temperature oracle -pi^2 hbar c/(240 a^4)
        geom = Geometry(1.0, 1.0)
        res = casimir_pressure(geom, IdealMetal(), IdealMetal())
        hbar_c = CODATA.hbar_J_s * 2.99792458e8
        ideal = -math.pi**2 * hbar_c / (240.0 * (1e-6) ** 4) * 1e3  # mPa
        assert res.pressure_mPa == pytest.approx(ideal, rel=5e-3)

    def test_stronger_plasma_means_stronger_attraction(self):
        geom = Geometry(1.0, 300.0)
        al = DrudeModel(DB.get("Al"))
        assert abs(casimir_pressure(geom, al, al).pressure_mPa) > \
            abs(casimir_pressure(geom, AU, AU).pressure_mPa)

    def test_magnitude_decreases_with_gap(self):
        p1 = casimir_pressure(Geometry(1.0, 300.0), AU, AU).pressure_mPa
        p2 = casimir_pressure(Geometry(2.0, 300.0), AU, AU).pressure_mPa
        assert abs(p2) < abs(p1)

    def test_max_terms_exhaustion_carries_partial(self):
        spec = QuadratureSpec(max_terms=6)
        with pytest.raises(SumConvergenceError) as excinfo:
            casimir_pressure(Geometry(1.0, 1.0), AU, AU, spec)
        partial = excinfo.value.partial
        assert isinstance(partial, PressureResult)
        assert not partial.converged
        assert partial.n_terms_used == 6
        assert partial.pressure_mPa < 0

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(integral_rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_terms=0)
