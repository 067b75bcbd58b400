import math
from fractions import Fraction

import mpmath
import pytest

from nsfourier.catalog import get_function
from nsfourier.converge import (
    DEFAULT_PROBES,
    ReportRow,
    canonical,
    continuous_inverse,
    inversion_convergence,
    l1_decay_experiment,
    monotone_rows,
    run_all,
    spectrum_convergence,
    tail_vanishing_experiment,
)

GAUSS = get_function("gaussian")
ZERO = get_function("zero")


def by_metric(rows):
    out = {}
    for r in rows:
        out.setdefault(r.metric, {})[r.n] = r
    return out


def test_monotone_rows_rule():
    rows = monotone_rows("f", "m", [1, 2, 3, 4, 5], [1.0, 0.5, 0.504, 0.6, 0.0])
    assert [r.passed for r in rows] == [True, True, True, False, True]
    assert rows[0].bound is None
    assert rows[1].bound == pytest.approx(1.01)
    zeros = monotone_rows("f", "m", [1, 2], [0.0, 0.0])
    assert all(r.passed for r in zeros)


def test_canonical_order():
    rows = [ReportRow("b", 2, "x", 0, None, True), ReportRow("a", 4, "y", 0, None, True), ReportRow("a", 2, "y", 0, None, True)]
    assert [(r.function, r.n) for r in canonical(rows)] == [("a", 2), ("a", 4), ("b", 2)]


def mp_spectrum_error(n, t):
    """|ghat_n(t) - sqrt2 exp(-pi t^2/2)| at 50 digits, as an independent oracle."""
    with mpmath.workdps(50):
        k = int(t * n)
        s = mpmath.fsum(
            mpmath.exp(-mpmath.pi * mpmath.mpf(j) ** 2 / (2 * n * n)) * mpmath.expj(-mpmath.pi * j * k / mpmath.mpf(n * n))
            for j in range(-n * n, n * n)
        ) / n
        return float(abs(s - mpmath.sqrt(2) * mpmath.exp(-mpmath.pi * mpmath.mpf(t) ** 2 / 2)))


def test_spectrum_error_at_n4_matches_high_precision():
    rows = by_metric(spectrum_convergence(GAUSS, [4, 8], [Fraction(0), Fraction(1)]))
    for t in (0, 1):
        measured = rows[f"spectrum_err[t={t}]"][4].value
        assert measured == pytest.approx(mp_spectrum_error(4, t), rel=1e-3)


def test_spectrum_error_reaches_rounding_floor():
    rows = spectrum_convergence(GAUSS, [4, 8, 16, 32, 64])
    assert len(rows) == 5 * len(DEFAULT_PROBES)
    for r in rows:
        if r.n >= 8:
            assert r.value <= 1e-15
        else:
            assert r.value <= 1e-11
    # the exact errors keep shrinking far below double precision
    assert mp_spectrum_error(8, 0) < 1e-40


def test_spectrum_g64_at_zero():
    rows = by_metric(spectrum_convergence(GAUSS, [4, 64], [Fraction(0)]))
    assert rows["spectrum_err[t=0]"][64].value <= 0.05


def test_hermite_spectrum_at_zero_vanishes():
    # odd terms cancel in pairs; only the unpaired point x = -n survives
    rows = spectrum_convergence(get_function("hermite1"), [4, 8, 16], [Fraction(0)])
    for r in rows:
        assert r.value == pytest.approx(math.exp(-math.pi * r.n**2 / 2), rel=1e-6, abs=1e-16)


def test_probe_validation():
    with pytest.raises(ValueError):
        spectrum_convergence(GAUSS, [4, 8], [Fraction(3)])  # beyond min(n)/2
    with pytest.raises(ValueError):
        spectrum_convergence(GAUSS, [3, 4], [Fraction(1, 2)])  # not on the n=3 grid


def test_continuous_inverse_gaussian():
    xs = [0, 0.5, 1, -2]
    vals = continuous_inverse(GAUSS, xs)
    for x, v in zip(xs, vals):
        assert abs(v - math.exp(-math.pi * x * x / 2)) <= 1e-8
    assert abs(continuous_inverse(GAUSS, [0])[0] - 1) <= 1e-8


def test_inversion_rows_gaussian():
    rows = inversion_convergence(GAUSS, [4, 8, 16])
    m = by_metric(rows)
    for p in DEFAULT_PROBES:
        lab = str(p)
        assert all(r.passed and r.value <= 1e-11 for r in m[f"roundtrip[x={lab}]"].values())
        cont = m[f"continuous[x={lab}]"][0]
        assert cont.passed and cont.value <= 1e-8
        assert m[f"discrete_spectrum[x={lab}]"][4].value <= 1e-11


def test_inversion_zero_function():
    rows = inversion_convergence(ZERO, [4, 8])
    assert all(r.value == 0 and r.passed for r in rows)


def test_tail_experiment():
    rows = tail_vanishing_experiment(GAUSS, [0.5, 0.1, 0.02], [4, 8, 16, 32, 64])
    assert rows and all(r.passed for r in rows)
    # N(0.5) ~ 12.8 admits 16..64, N(0.1) ~ 59.9 admits 64, N(0.02) ~ 295 admits none
    assert sorted((r.metric, r.n) for r in rows) == sorted(
        [("tail_mass[eps=0.5]", n) for n in (16, 32, 64)] + [("tail_mass[eps=0.1]", 64)]
    )
    zero = tail_vanishing_experiment(ZERO, [0.5], [2, 4])
    assert all(r.value == 0 for r in zero)


def test_l1_experiment():
    rows = l1_decay_experiment(GAUSS, [2, 4, 8, 16, 32])
    assert all(r.passed for r in rows)
    vals = [r.value for r in rows]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert all(0.3 <= b / a <= 0.7 for a, b in zip(vals, vals[1:]))
    assert all(r.value == 0 for r in l1_decay_experiment(ZERO, [2, 4]))


def test_run_all_thread_independent():
    args = (GAUSS, [4, 8], [0.5], [Fraction(0), Fraction(1, 2)], [Fraction(0)])
    assert run_all(*args, threads=1) == run_all(*args, threads=4)
