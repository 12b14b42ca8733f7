import math

import numpy as np
import pytest

from magnomech.analysis import (Method, SpectrumTable, SweepSpec,
                                eps_nonreciprocity, fano_asymmetry,
                                find_windows, optimal_ranges, sweep_both,
                                sweep_spectrum, tau_nonreciprocity)

from conftest import OMEGA_B, make_params
from magnomech.steady_state import effective_model


def synthetic_table(delta, eps_R):
    eps_out = eps_R.astype(complex)
    T = 1.0 - eps_out
    return SpectrumTable(delta=delta, eps_out=eps_out, T=T,
                         phase=np.zeros_like(delta),
                         tau=np.zeros_like(delta),
                         pole=np.zeros(delta.shape, dtype=bool),
                         method="chain")


def lorentzian_dip(x, x0, width, depth):
    return -depth / (1.0 + ((x - x0) / width) ** 2)


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(delta_min=1.0, delta_max=0.0)
    with pytest.raises(ValueError):
        SweepSpec(delta_min=0.0, delta_max=1.0, n_points=1)


def test_sweep_grid_endpoints():
    spec = SweepSpec(delta_min=0.0, delta_max=2.0, n_points=5)
    assert np.allclose(spec.grid(), [0.0, 0.5, 1.0, 1.5, 2.0])


def test_sweep_spectrum_basic(full_model):
    spec = SweepSpec(0.0, 2.0 * OMEGA_B, 301)
    table = sweep_spectrum(full_model, spec)
    assert len(table.delta) == 301
    assert not table.pole.any()
    assert np.all(np.isfinite(table.eps_R))
    assert table.method == "chain"
    # Unwrapping leaves no branch-cut jumps in the transmission phase.
    assert np.max(np.abs(np.diff(table.phase))) <= math.pi
    assert np.all(np.isfinite(table.phase))


def test_sweep_methods_agree(full_model):
    spec = SweepSpec(0.0, 2.0 * OMEGA_B, 101)
    chain, direct = sweep_both(full_model, spec)
    assert chain.method == "chain" and direct.method == "oracle"
    assert np.allclose(chain.eps_out, direct.eps_out, rtol=1e-8)


def test_sweep_deterministic(full_model):
    spec = SweepSpec(0.0, 2.0 * OMEGA_B, 201)
    a = sweep_spectrum(full_model, spec)
    b = sweep_spectrum(full_model, spec)
    assert np.array_equal(a.eps_out, b.eps_out)
    assert np.array_equal(a.tau, b.tau)


def bump(x):
    """Broad absorption-like background with a single maximum."""
    return 2.0 * np.exp(-((x - 5.0) / 3.0) ** 2)


def test_synthetic_double_dip_recovery():
    x = np.linspace(0.0, 10.0, 4001)
    y = bump(x) + lorentzian_dip(x, 3.0, 0.2, 0.8) \
        + lorentzian_dip(x, 7.0, 0.1, 0.6)
    windows = find_windows(synthetic_table(x, y), prominence=0.05)
    assert len(windows) == 2
    assert windows[0].dip_location == pytest.approx(3.0, abs=0.02)
    assert windows[1].dip_location == pytest.approx(7.0, abs=0.02)
    assert windows[0].dip_value == pytest.approx(bump(3.0) - 0.8, abs=0.03)
    assert windows[0].width > 0 and windows[1].width > 0
    # Narrower dip reports a narrower window.
    assert windows[1].width < windows[0].width
    # Dips carved into a rising (falling) slope lean the opposite ways.
    assert windows[0].asymmetry < 0 < windows[1].asymmetry


def test_prominence_filters_shallow_dip():
    x = np.linspace(0.0, 10.0, 2001)
    # The shallow dip sits on the flat top of the bump so it still forms
    # a genuine local minimum.
    y = bump(x) + lorentzian_dip(x, 3.0, 0.2, 1.0) \
        + lorentzian_dip(x, 5.0, 0.3, 0.05)
    deep_only = find_windows(synthetic_table(x, y), prominence=0.01)
    both = find_windows(synthetic_table(x, y), prominence=0.001)
    assert len(deep_only) == 1
    assert len(both) == 2


def test_prominence_must_be_positive():
    x = np.linspace(0.0, 1.0, 11)
    with pytest.raises(ValueError):
        find_windows(synthetic_table(x, np.ones_like(x)), prominence=0.0)


def test_fano_asymmetry_matches_window():
    x = np.linspace(0.0, 10.0, 4001)
    # Off-center dip: unequal shoulders give a nonzero asymmetry.
    y = bump(x) + lorentzian_dip(x, 3.5, 0.3, 1.0)
    table = synthetic_table(x, y)
    windows = find_windows(table, prominence=0.05)
    assert len(windows) == 1
    asym = fano_asymmetry(windows[0], table)
    assert asym == pytest.approx(windows[0].asymmetry)
    assert asym < 0  # rising background: right shoulder is higher


def test_window_progression_with_couplings():
    # Each activated interaction splits one more transparency window.
    counts = []
    coupling_sets = [
        {}, {"g_1": 1}, {"g_1": 1, "G_1": 1},
        {"g_1": 1, "g_2": 1, "G_1": 1},
        {"g_1": 1, "g_2": 1, "G_1": 1, "G_2": 1},
        {"g_1": 1, "g_2": 1, "G_1": 1, "G_2": 1, "G_a": 1},
    ]
    values = {"g_1": 1.5e6, "g_2": 1.5e6, "G_1": 1.5e6, "G_2": 3.5e6,
              "G_a": 2.5e6}
    for cset in coupling_sets:
        kwargs = {k: (2 * math.pi * values[k] if k in cset else 0.0)
                  for k in values}
        model = effective_model(make_params(**kwargs))
        table = sweep_spectrum(model, SweepSpec(0.0, 2.0 * OMEGA_B, 2001))
        counts.append(len(find_windows(table, prominence=0.01)))
    assert counts == [0, 1, 2, 3, 4, 5]


def test_eps_nr_zero_without_rotation(full_params):
    spec = SweepSpec(0.0, 2.0 * OMEGA_B, 101)
    report = eps_nonreciprocity(full_params, 0.0, spec)
    assert np.max(np.abs(report.eps_NR)) < 1e-12


def test_eps_nr_bounds_and_symmetry(full_params):
    spec = SweepSpec(0.0, 2.0 * OMEGA_B, 201)
    report = eps_nonreciprocity(full_params, 0.5 * OMEGA_B, spec)
    finite = report.eps_NR[~report.eps_NR_guard]
    assert np.all(np.isfinite(finite))
    # Where both branches absorb, |x - y| / (x + y) is confined to [0, 1].
    both_positive = (report.eps_R_neg > 0) & (report.eps_R_pos > 0) \
        & ~report.eps_NR_guard
    assert np.all(report.eps_NR[both_positive] >= 0.0)
    assert np.all(report.eps_NR[both_positive] <= 1.0 + 1e-12)
    # Both absorption branches are finite everywhere on the grid.
    assert np.all(np.isfinite(report.eps_R_neg))
    assert np.all(np.isfinite(report.eps_R_pos))


def test_eps_nr_rejects_negative_shift(full_params):
    with pytest.raises(ValueError):
        eps_nonreciprocity(full_params, -1.0,
                           SweepSpec(0.0, OMEGA_B, 11))


def test_tau_nr_validity_mask(full_params):
    import dataclasses
    p = dataclasses.replace(full_params, G_a=2 * math.pi * 1e6)
    spec = SweepSpec(0.9 * OMEGA_B, 1.1 * OMEGA_B, 401)
    report = tau_nonreciprocity(p, 0.5 * OMEGA_B, spec)
    assert report.tau_NR is not None
    assert np.all(np.isnan(report.tau_NR[~report.tau_NR_valid]))
    valid_vals = report.tau_NR[report.tau_NR_valid]
    assert np.all(valid_vals >= 0.0)
    # Near-unity contrast appears close to the mechanical resonance.
    assert np.nanmax(valid_vals) > 0.9


def test_optimal_ranges_contiguity():
    delta = np.arange(10.0)
    contrast = np.array([0, 1, 1, 0, 1, 0, 1, 1, 1, 1], dtype=float)
    ranges = optimal_ranges(delta, contrast, threshold=0.5)
    assert ranges == [(1.0, 2.0), (4.0, 4.0), (6.0, 9.0)]
    masked = optimal_ranges(delta, contrast, threshold=0.5,
                            valid=contrast > 0.5)
    assert masked == ranges
