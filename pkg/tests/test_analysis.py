import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from smoothkit import analysis as A
from smoothkit import funcmodel as M
from smoothkit import smoothing as S
from smoothkit.errors import DomainError, LicenseError, UnreachableError

from conftest import DECREASING_F3

LADDER_FAMILIES = {
    "root-0.5": (lambda: M.root(0.5), 0.05, 5.0),
    "arcsinh-sqrt": (M.arcsinh_sqrt, 0.05, 5.0),
    "entropy": (M.entropy, 0.02, 0.9),
    "incremental-entropy": (M.incremental_entropy, 0.05, 5.0),
}


# -- sensitivities ---------------------------------------------------------------


def test_sensitivity_closed_form_root_half():
    # g1 = 15/(8 sqrt(delta)) so dg1/ddelta = -15/16 at delta=1
    sens = A.sensitivities(M.root(0.5), 1.0)
    assert sens.dg1 == pytest.approx(-0.9375, rel=1e-12)
    assert sens.dg2 == pytest.approx(-4 * sens.dg1 / 1.0)
    assert sens.dg3 == pytest.approx(6 * sens.dg1 / 1.0 ** 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(DECREASING_F3)), st.floats(0.05, 0.9))
def test_sensitivities_match_central_differences(name, delta):
    f = DECREASING_F3[name]()
    exact, fd = A.sensitivities(f, delta), A.sensitivities_fd(f, delta)
    for a, b in ((exact.dg1, fd.dg1), (exact.dg2, fd.dg2), (exact.dg3, fd.dg3)):
        assert b == pytest.approx(a, rel=1e-4)


@pytest.mark.parametrize("name", sorted(LADDER_FAMILIES))
def test_delta_ladder_monotonicity(name):
    make, lo, hi = LADDER_FAMILIES[name]
    f = make()
    ladder = np.geomspace(lo, hi, 16)
    g1 = [A.g1_of_delta(f, d) for d in ladder]
    err = [A.sup_error(f, d) for d in ladder]
    assert np.all(np.diff(g1) < 0)
    assert np.all(np.diff(err) > 0)


@pytest.mark.parametrize("name", sorted(LADDER_FAMILIES))
def test_secant_quotients_match_sensitivity_at_midpoints(name):
    make, lo, _ = LADDER_FAMILIES[name]
    f = make()
    ladder = lo * 2.0 ** np.arange(0, 4) * np.array([1.0, 1.0, 1.0, 1.0])
    ladder = np.sort(np.concatenate([ladder, ladder * (1 + 1e-3)]))
    for a, b in zip(ladder[::2], ladder[1::2]):
        q = (A.g1_of_delta(f, b) - A.g1_of_delta(f, a)) / (b - a)
        mid = A.sensitivities(f, 0.5 * (a + b)).dg1
        assert q == pytest.approx(mid, rel=1e-4)


# -- lower / upper bound ---------------------------------------------------------------


@pytest.mark.parametrize("p", [round(0.1 * k, 1) for k in range(1, 10)] + [0.05])
@pytest.mark.parametrize("delta", [0.1, 0.5, 1.0, 2.0, 5.0])
def test_root_lower_bound(p, delta):
    cert = A.certify_bounds(M.root(p), delta)
    assert cert.verdict == "LowerBound" and cert.licensed == "LowerBound"
    assert cert.min_gap > 0 and cert.min_gap_mid > 0


@pytest.mark.parametrize("name", ["arcsinh-sqrt", "entropy", "incremental-entropy"])
@pytest.mark.parametrize("delta", [0.05, 0.2, 0.4, 0.6, 0.9])
def test_other_families_lower_bound(name, delta):
    cert = A.certify_bounds(DECREASING_F3[name](), delta)
    assert cert.verdict == "LowerBound" and cert.min_gap > 0


def test_exp_example_upper_bound():
    cert = A.certify_bounds(M.exp_example(), 1.0)
    assert cert.verdict == "UpperBound" and cert.max_gap < 0


def test_exp_example_lower_bound_at_five():
    cert = A.certify_bounds(M.exp_example(), 5.0)
    assert cert.verdict == "LowerBound" and cert.licensed is None


def test_certify_bounds_neither():
    # between the upper-bound and lower-bound regimes f - g changes sign
    cert = A.certify_bounds(M.exp_example(), 1.5)
    assert cert.verdict == "Neither" and cert.licensed is None
    assert cert.min_gap < 0 < cert.max_gap


@pytest.mark.parametrize("p", [0.5, 1 / 3])
@pytest.mark.parametrize("delta", [1.0, 2.0])
def test_kratio_negative(p, delta):
    f = M.root(p)
    w = A.interior_grid(delta, 100)
    assert all(A.kratio_oracle(f, delta, x) < 0 for x in w)


def test_kratio_rejects_endpoints():
    with pytest.raises(DomainError):
        A.kratio_oracle(M.root(0.5), 1.0, 1.0)


# -- worst-case error ----------------------------------------------------------------------


def test_error_profile_root_half():
    prof = A.worst_case_error(M.root(0.5), 1.0)
    s = S.make_smoothing(M.root(0.5), 1.0)
    w = np.linspace(0, 1, 1_000_001)[1:-1]
    brute = float(np.max(A.gap(s, w)))
    assert 0 < prof.w2 < 1
    assert prof.sup_err == pytest.approx(brute, rel=1e-8)
    assert abs(prof.sup_err - prof.grid_max) <= 1e-8 * max(1.0, prof.sup_err)
    fj, gj = M.eval_jet(s.base, prof.w2), s.cubic(prof.w2)
    assert abs(fj.v1 - gj.v1) <= 1e-9 and fj.v2 - gj.v2 < 0


def test_error_profile_skipped_cross_check():
    prof = A.worst_case_error(M.root(0.5), 1.0, cross_check=False)
    assert math.isnan(prof.grid_max)


def test_root_ordering_of_derivative_sign_changes():
    s = S.make_smoothing(M.root(0.5), 1.0)
    eps = 1e-9

    def d(k):
        return lambda w: M.eval_jet(s.base, w)[k] - s.cubic(w)[k]

    w0 = brentq(d(3), eps, 1 - eps, xtol=1e-14)
    w1 = brentq(d(2), eps, 1 - eps, xtol=1e-14)
    w2 = brentq(d(1), eps, 1 - 1e-3, xtol=1e-14)
    assert 0 < w2 < w1 < w0 < 1
    assert A.worst_case_error(s.base, 1.0).w2 == pytest.approx(w2, abs=1e-8)


def test_worst_case_error_needs_license():
    with pytest.raises(LicenseError):
        A.worst_case_error(M.exp_example(), 1.0)


# -- inverse solvers ---------------------------------------------------------------------


def test_solve_delta_for_slope_closed_form():
    assert A.solve_delta_for_slope(M.root(0.5), 3.75, 100.0) == pytest.approx(0.25, abs=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.01, 50.0))
def test_slope_round_trip(delta):
    f = M.arcsinh_sqrt()
    got = A.solve_delta_for_slope(f, A.g1_of_delta(f, delta), 100.0)
    assert got == pytest.approx(delta, rel=1e-7)


def test_error_round_trip():
    f = M.root(0.5)
    target = A.sup_error(f, 1.0)
    assert A.solve_delta_for_error(f, target, 100.0) == pytest.approx(1.0, rel=1e-6)


def test_entropy_error_round_trip():
    f = M.entropy()
    target = A.sup_error(f, 0.3)
    assert A.solve_delta_for_error(f, target, 0.9) == pytest.approx(0.3, rel=1e-6)


def test_unreachable_targets():
    with pytest.raises(UnreachableError):
        A.solve_delta_for_error(M.entropy(), 1e6, 0.9)
    with pytest.raises(UnreachableError):
        A.solve_delta_for_slope(M.root(0.5), 1e-6, 10.0)


def test_solvers_need_license():
    with pytest.raises(LicenseError):
        A.solve_delta_for_slope(M.exp_example(), 1.5, 1.0)
    with pytest.raises(LicenseError):
        A.solve_delta_for_error(M.exp_example(), 0.01, 1.0)


def test_search_hi_validated():
    with pytest.raises(DomainError):
        A.solve_delta_for_slope(M.entropy(), 3.0, 1.5)


# -- domination -------------------------------------------------------------------------


@pytest.mark.parametrize("make", [lambda: M.root(0.5), lambda: M.root(1 / 3),
                                  lambda: M.root(0.2), lambda: M.root(0.7),
                                  lambda: M.root(0.9), M.arcsinh_sqrt])
def test_domination_chain(make):
    f = make()
    rep = A.certify_domination(f, 1.0)
    assert rep.certified and rep.licensed
    assert rep.min_gap_gf >= 0 and rep.min_gap_hg >= 0 and rep.min_gap_hg_mid > 0
    h = S.fair_shift(f, 1.0)
    assert abs(h.jet(0.0).v1 - S.make_smoothing(f, 1.0).g1) <= 1e-10 * S.make_smoothing(f, 1.0).g1


def test_domination_license_refused():
    with pytest.raises(LicenseError):
        A.certify_domination(M.exp_example(), 1.0)
    with pytest.raises(LicenseError):
        A.certify_domination(M.entropy(), 0.3)


def test_domination_forced():
    rep = A.certify_domination(M.entropy(), 0.3, force=True)
    assert not rep.licensed and not rep.certified


def test_domination_report_keys():
    d = A.certify_domination(M.root(0.5), 1.0).to_dict()
    assert list(d) == ["delta", "lambda_hat", "min_gap_gf", "min_gap_hg", "certified",
                       "licensed", "grid"]


def test_comparison_grid_columns():
    cols = A.comparison_grid(M.root(0.5), 1.0, n=16)
    assert list(cols) == ["w", "f", "g", "h", "F", "K"]
    w, K = cols["w"], cols["K"]
    inside = (w > 0) & (w < 1)
    assert np.all(K[inside] < 0) and np.all(np.isnan(K[~inside]))
    assert w[0] == 0 and w[-1] == pytest.approx(11.0)
    assert np.all(np.diff(w) > 0)


def test_kratio_vectorised_matches_scalar():
    w = A.interior_grid(2.0, 7)
    vec = A.kratio_oracle(M.root(1 / 3), 2.0, w)
    assert list(vec) == [A.kratio_oracle(M.root(1 / 3), 2.0, x) for x in w]
