import math

import numpy as np
import pytest
from scipy import optimize

from pulsed_battery.solvers import (
    BracketError,
    doubling_horizon,
    find_root,
    golden_section_max,
    maximize_on_interval,
    parabolic_polish,
)


@pytest.mark.parametrize("f,a,b", [
    (lambda x: x**3 - 2 * x - 5, 2.0, 3.0),
    (lambda x: math.cos(x) - x, 0.0, 1.0),
    (lambda x: math.tanh(x) - 0.999, 0.0, 10.0),
])
def test_find_root_matches_brentq(f, a, b):
    ref = optimize.brentq(f, a, b, xtol=1e-15)
    assert find_root(f, a, b, xtol=1e-13) == pytest.approx(ref, abs=1e-12)


def test_find_root_flat_triple_root():
    # secant steps crawl here; the forced bisections keep the bracket shrinking
    assert find_root(lambda x: (x - 1e-3) ** 3, 0.0, 1.0, xtol=1e-14) == pytest.approx(1e-3, abs=1e-12)


def test_find_root_no_sign_change():
    with pytest.raises(BracketError):
        find_root(lambda x: x * x + 1, -1.0, 1.0)


def test_find_root_endpoint():
    assert find_root(lambda x: x - 2, 2.0, 5.0) == 2.0


@pytest.mark.parametrize("f,a,b", [
    (lambda x: -(x - 0.3) ** 2, 0.0, 1.0),
    (lambda x: math.sin(x) ** 2 / x, 0.5, 2.0),
    (lambda x: x * math.exp(-x), 0.0, 5.0),
])
def test_golden_section_matches_scipy(f, a, b):
    ref = optimize.minimize_scalar(lambda x: -f(x), bounds=(a, b), method="bounded",
                                   options={"xatol": 1e-12})
    x, fx = golden_section_max(f, a, b)
    assert x == pytest.approx(ref.x, abs=1e-6)
    assert fx == pytest.approx(-ref.fun, rel=1e-12)


def test_maximize_picks_global_hump():
    # two humps; the second one is higher
    def f(x):
        return np.exp(-((x - 1) ** 2) * 20) + 1.5 * np.exp(-((x - 3) ** 2) * 20)

    x, fx = maximize_on_interval(f, 0.0, 4.0)
    assert x == pytest.approx(3.0, abs=1e-7)
    assert fx == pytest.approx(1.5, rel=1e-12)


def test_doubling_horizon_brackets_peak():
    hi = doubling_horizon(lambda t: t * math.exp(-t / 7), 1e-3)
    assert hi > 7


def test_doubling_horizon_gives_up():
    with pytest.raises(RuntimeError):
        doubling_horizon(lambda t: t, 1.0, max_doublings=10)


def test_parabolic_polish_beats_comparison_limit():
    # golden section alone stalls near sqrt(eps) ~ 1e-8 on a smooth peak
    def f(x):
        return 1.0 - (x - 0.7) ** 2

    x, _ = golden_section_max(f, 0.0, 1.0)
    assert parabolic_polish(f, x, 1e-4, 0.0, 1.0) == pytest.approx(0.7, abs=1e-11)


def test_parabolic_polish_respects_bounds():
    assert parabolic_polish(lambda x: -x * x, 0.0, 0.5, 0.0, 1.0) == 0.0
