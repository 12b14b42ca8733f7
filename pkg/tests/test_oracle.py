import dataclasses

import numpy as np
import pytest

from magnomech.oracle import (VARIABLES, SolveError, assemble_sideband_matrix,
                              cross_validate, oracle_amplitude,
                              solve_probe_response)
from magnomech.response import probe_sideband_amplitude
from magnomech.steady_state import effective_model

from conftest import OMEGA_B, make_params

IDX = {name: i for i, name in enumerate(VARIABLES)}


def test_variable_ordering():
    assert VARIABLES[0] == "a"
    assert len(VARIABLES) == 12
    assert set(VARIABLES) >= {"a", "a_dag", "m1", "m2", "q1", "p1", "q3", "p3"}


def test_decoupled_solution(bare_model):
    delta = 0.6 * OMEGA_B
    system = assemble_sideband_matrix(bare_model, delta)
    v = solve_probe_response(system)
    h1 = bare_model.kappa_a + 1j * (bare_model.Delta_a_eff - delta)
    assert v[IDX["a"]] == pytest.approx(1.0 / h1, rel=1e-12)
    # Nothing else is driven when every coupling vanishes.
    others = np.delete(v, IDX["a"])
    assert np.max(np.abs(others)) < 1e-30


def test_decoupled_sparsity(bare_model):
    system = assemble_sideband_matrix(bare_model, 0.25 * OMEGA_B)
    mat = system.matrix
    # Cavity row couples only to itself; magnon rows likewise.
    for name in ("a", "a_dag", "m1", "m1_dag", "m2", "m2_dag"):
        row = np.abs(mat[IDX[name]]) > 0
        assert row.sum() == 1 and row[IDX[name]]
    # Mechanical oscillators stay internally coupled (q <-> p).
    q1 = np.abs(mat[IDX["q1"]]) > 0
    assert q1[IDX["p1"]] and q1[IDX["q1"]]


def test_rhs_drives_only_cavity(full_model):
    system = assemble_sideband_matrix(full_model, OMEGA_B)
    rhs = np.abs(system.rhs) > 0
    assert rhs[IDX["a"]] and rhs.sum() == 1


def test_solution_satisfies_system(full_model):
    system = assemble_sideband_matrix(full_model, 0.97 * OMEGA_B)
    v = solve_probe_response(system)
    residual = system.matrix @ v - system.rhs
    assert np.max(np.abs(residual)) < 1e-10 * np.max(np.abs(system.rhs))


def test_dagger_swap_symmetry(full_model):
    # Conjugating the equations of motion swaps each operator with its
    # conjugate partner and flips the sideband sign:
    # P conj(M(delta)) P = M(-delta) exactly.
    P = np.zeros((12, 12))
    for x, y in (("a", "a_dag"), ("m1", "m1_dag"), ("m2", "m2_dag")):
        P[IDX[x], IDX[y]] = P[IDX[y], IDX[x]] = 1.0
    for name in ("q1", "p1", "q2", "p2", "q3", "p3"):
        P[IDX[name], IDX[name]] = 1.0
    delta = 0.7 * OMEGA_B
    plus = assemble_sideband_matrix(full_model, delta).matrix
    minus = assemble_sideband_matrix(full_model, -delta).matrix
    assert np.array_equal(P @ np.conj(plus) @ P, minus)


def test_oracle_matches_chain_everywhere(full_model):
    grid = np.linspace(0.0, 2.0 * OMEGA_B, 401)
    report = cross_validate(full_model, grid)
    assert not report.flagged.any()
    assert report.max_rel_err < 1e-9
    assert 0.0 <= report.argmax_delta <= 2.0 * OMEGA_B


def test_cross_validate_on_subsets():
    for overrides in ({"g_2": 0.0, "G_2": 0.0},
                      {"G_1": 0.0, "G_2": 0.0, "G_a": 0.0},
                      {"Delta_B": -0.5 * OMEGA_B}):
        kwargs = {"g_1": 1.5 * 2e6 * np.pi, **overrides}
        model = effective_model(make_params(**kwargs))
        report = cross_validate(model, np.linspace(0, 2 * OMEGA_B, 101))
        assert report.max_rel_err < 1e-9


def test_cross_validate_rejects_empty(full_model):
    with pytest.raises(ValueError):
        cross_validate(full_model, np.array([]))


def test_pole_is_flagged_not_fatal(full_model):
    # An undamped phonon at delta = omega_b is a true pole of the chain.
    model = dataclasses.replace(full_model, gamma_1=0.0, gamma_2=0.0,
                                gamma_3=0.0)
    grid = np.array([0.5 * OMEGA_B, OMEGA_B, 1.5 * OMEGA_B])
    report = cross_validate(model, grid)
    assert report.flagged[1]
    assert np.isnan(report.rel_err[1])


def test_oracle_amplitude_scalar(full_model):
    delta = 1.04 * OMEGA_B
    assert oracle_amplitude(full_model, delta) == pytest.approx(
        probe_sideband_amplitude(full_model, delta), rel=1e-9)
