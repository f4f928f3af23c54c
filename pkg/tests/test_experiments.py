import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyretrieval.experiments import (
    CSV_FIELDS,
    SignalSpec,
    SweepRow,
    emit_csv,
    gen_signal,
    injectivity_trial,
    log_grid,
    loglog_slope,
    measurement_separation,
    median_errors,
    noise_sweep,
    read_csv,
    signal_bounds,
    trial_seed,
)
from polyretrieval.polynomial import Poly, circle_extrema, evaluate


def test_gen_signal_constant():
    f, rs = gen_signal(SignalSpec(1, seed=4))
    assert f.degree_bound == 1 and len(rs.roots) == 0
    assert abs(abs(complex(f.coeffs[0])) - 1) < 1e-15


@given(st.integers(1, 12), st.integers(0, 2**63), st.floats(0.05, 0.5))
def test_gen_signal_respects_annulus(d, seed, gap):
    spec = SignalSpec(d, annulus_gap=gap, root_radius_max=3.0, seed=seed)
    f, rs = gen_signal(spec)
    assert f.degree_bound == d
    r = np.abs(rs.roots)
    assert np.all((r <= 1 - gap) | (r >= 1 + gap)) and np.all(r <= 3)
    assert circle_extrema(f, 64 * d)[0] > 0
    for z in rs.roots:
        assert abs(evaluate(f, z)) <= 1e-9 * 4**d


def test_gen_signal_deterministic():
    a, _ = gen_signal(SignalSpec(7, seed=99))
    b, _ = gen_signal(SignalSpec(7, seed=99))
    c, _ = gen_signal(SignalSpec(7, seed=100))
    assert a.coeffs.tobytes() == b.coeffs.tobytes()
    assert a != c


def test_signal_spec_validation():
    with pytest.raises(ValueError):
        SignalSpec(0)
    with pytest.raises(ValueError):
        SignalSpec(3, annulus_gap=0)


def test_trial_seed_mixing():
    assert trial_seed(1, 0, 0) == trial_seed(1, 0, 0)
    assert len({trial_seed(1, i, t) for i in range(5) for t in range(5)}) == 25


def test_sweep_noiseless_column():
    rows = noise_sweep(SignalSpec(6, seed=1), [0.0], 5)
    assert len(rows) == 5
    assert all(r.coeff_err <= 1e-8 and r.n0_correct for r in rows)


def test_sweep_rejects_unsorted_grid():
    with pytest.raises(ValueError):
        noise_sweep(SignalSpec(3), [1e-3, 1e-4], 1)
    with pytest.raises(ValueError):
        noise_sweep(SignalSpec(3), [-1e-3], 1)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_sweep_within_stability_radius(seed):
    spec = SignalSpec(5, seed=seed)
    eps0 = signal_bounds(gen_signal(spec)[0]).epsilon0
    rows = noise_sweep(spec, log_grid(eps0 / 100, eps0, 4), 10)
    assert all(r.n0_correct for r in rows)
    assert all(r.moment_err_max <= r.gamma_bound for r in rows)
    assert all(r.epsilon_over_eps0 <= 1 + 1e-12 for r in rows)


@pytest.mark.parametrize("seed", [0, 5])
def test_sweep_bound_consistency_up_to_alpha_m2(seed):
    spec = SignalSpec(4, seed=seed)
    b = signal_bounds(gen_signal(spec)[0])
    grid = log_grid(b.epsilon0, 0.99 * b.alpha * b.m**2, 6)
    rows = noise_sweep(spec, grid, 8, distribution="adversarial_sign")
    for r in rows:
        assert r.moment_err_max <= r.gamma_bound


def test_sweep_monotone_trend():
    spec = SignalSpec(5, seed=11)
    eps0 = signal_bounds(gen_signal(spec)[0]).epsilon0
    rows = noise_sweep(spec, log_grid(eps0, 100 * eps0, 8), 20)
    _, med = median_errors(rows)
    violations = np.sum(np.diff(med) < 0)
    assert violations <= max(1, int(0.05 * len(med)))


def test_sweep_failures_are_rows():
    spec = SignalSpec(5, seed=2)
    rows = noise_sweep(spec, [1e3], 3)
    assert len(rows) == 3
    assert all(r.failed and math.isinf(r.coeff_err) and not r.n0_correct for r in rows)


def test_sweep_deterministic_csv():
    spec = SignalSpec(4, seed=8)
    grid = [1e-6, 1e-5, 1e-4]
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        emit_csv(noise_sweep(spec, grid, 3), buf)
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]
    assert len(outs[0].strip().split("\n")) == 1 + 3 * 3


def test_loglog_slope_exact_line():
    rows = [SweepRow(e, 0, 3 * e, 0, 0, True, 1) for e in [1e-4, 1e-3, 1e-2]]
    assert loglog_slope(rows) == pytest.approx(1)
    with pytest.raises(ValueError):
        loglog_slope(rows[:1])


# -- CSV ----------------------------------------------------------------------------


def test_csv_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    emit_csv([], path)
    assert path.read_text() == ",".join(CSV_FIELDS) + "\n"
    assert read_csv(path) == []


def test_csv_row_roundtrip_text_exact(tmp_path):
    row = SweepRow(1 / 3, 7, math.pi * 1e-5, 2 / 7, 0.1, True, 12.5)
    fail = SweepRow(0.2, 0, math.inf, math.inf, 0.3, False, 1e6, error="boom")
    path = tmp_path / "rows.csv"
    emit_csv([row, fail], path)
    text = path.read_text()
    assert "inf,inf" in text and "false" in text
    back = read_csv(path)
    assert back[0] == row
    assert back[1].coeff_err == math.inf and not back[1].n0_correct
    path2 = tmp_path / "again.csv"
    emit_csv(back, path2)
    assert path2.read_text() == text


def test_csv_seventeen_digits():
    buf = io.StringIO()
    emit_csv([SweepRow(0.1, 0, 0.1, 0.1, 0.1, True, 0.1)], buf)
    line = buf.getvalue().splitlines()[1]
    assert line.startswith("0.10000000000000001,0,")


def test_csv_unwritable(tmp_path):
    with pytest.raises(OSError):
        emit_csv([], tmp_path / "missing" / "x.csv")


def test_read_csv_rejects_bad_header():
    with pytest.raises(ValueError):
        read_csv(io.StringIO("a,b\n1,2\n"))


# -- injectivity ----------------------------------------------------------------------


def test_injectivity_report_fields():
    rep = injectivity_trial(3, 50, seed=1)
    assert set(rep) >= {"d", "pairs", "min_separation", "collisions"}
    assert rep["collisions"] == 0 and rep["min_separation"] > 1e-8


def test_phase_blind_inverse_case(rng):
    f = Poly(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    assert measurement_separation(f, np.exp(0.7j) * f) <= 1e-10


def test_separation_is_continuous(rng):
    f = Poly(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    g = Poly(f.coeffs + 1e-3 * (rng.standard_normal(4) + 1j * rng.standard_normal(4)))
    sep = measurement_separation(f, g)
    assert 1e-8 < sep < 1e-1
