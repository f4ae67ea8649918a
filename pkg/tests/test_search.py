import math

import pytest

from smoothkit._search import bisect, golden_max, newton
from smoothkit.errors import ConvergenceError


def test_bisect_finds_root():
    x, lo, hi = bisect(lambda t: t * t - 2.0, 0.0, 2.0, 1e-14)
    assert x == pytest.approx(math.sqrt(2.0), abs=1e-13) and lo <= x <= hi


def test_bisect_requires_sign_change():
    with pytest.raises(ValueError):
        bisect(lambda t: t * t + 1.0, -1.0, 1.0, 1e-12)


def test_bisect_cap_is_an_error():
    with pytest.raises(ConvergenceError):
        bisect(lambda t: t - 1.0 / 3.0, 0.0, 1.0, 0.0, max_iter=10)


def test_bisect_tolerance_below_resolution_is_an_error():
    # a jump has no point with |residual| <= ftol
    with pytest.raises(ConvergenceError):
        bisect(lambda t: 1.0 if t > 0.3 else -1.0, 0.0, 1.0, 1e-3)


def test_golden_max():
    x = golden_max(lambda t: -(t - 0.7) ** 2, 0.0, 2.0, 1e-10)
    assert x == pytest.approx(0.7, abs=1e-9)


def test_golden_cap_is_an_error():
    with pytest.raises(ConvergenceError):
        golden_max(lambda t: -t * t, -1.0, 1.0, 1e-12, max_iter=5)


def test_newton_stays_in_bracket():
    x = newton(lambda t: (math.atan(t), 1 / (1 + t * t)), 3.0, -5.0, 5.0, 1e-14)
    assert abs(x) < 1e-13


def test_newton_cap_is_an_error():
    with pytest.raises(ConvergenceError):
        newton(lambda t: (t * t + 1.0, 2 * t), 0.5, -10.0, 10.0, 1e-12, max_iter=5)
