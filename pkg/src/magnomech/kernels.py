"""Hot kernel: probe sideband amplitude over a detuning grid.

The continued-fraction expression is written once, with plain arithmetic
that works elementwise on numpy arrays.  When numba is available the same
expression is JIT-compiled into a scalar loop; set MAGNOMECH_NO_NUMBA=1
to force the pure-numpy path.  ``benchmarks/bench_kernels.py`` compares
the two.
"""

from __future__ import annotations

import os

import numpy as np


def _amplitude_expr(delta,
                    kappa_a, kappa_m1, kappa_m2,
                    gamma_1, gamma_2, gamma_3,
                    omega_b1, omega_b2, omega_b3,
                    Delta_a, Delta_m1, Delta_m2,
                    g_1, g_2, G_11, G_22, G_aa):
    """a_-/eps_p at probe detuning ``delta`` (scalar or ndarray)."""
    h1 = kappa_a + 1j * (Delta_a - delta)
    h2 = kappa_m1 + 1j * (Delta_m1 - delta)
    h3 = omega_b1 - (delta / omega_b1) * (delta + 1j * gamma_1)
    h4 = kappa_m1 - 1j * (Delta_m1 + delta)
    h5 = kappa_a - 1j * (Delta_a + delta)
    h6 = kappa_m2 - 1j * (Delta_m2 + delta)
    h7 = omega_b2 - (delta / omega_b2) * (delta + 1j * gamma_2)
    h8 = kappa_m2 + 1j * (Delta_m2 - delta)
    h9 = omega_b3 - (delta / omega_b3) * (delta + 1j * gamma_3)

    A = 1.0 + G_22**2 / (1j * h7 * h8)
    B = 1.0 - G_22**2 / (1j * h6 * h7 * A)
    E = 1.0 + g_2**2 / (h5 * h6 * B) - G_aa**2 / (1j * h5 * h9)
    F = 1j * g_2**2 * G_22**2 / (h5 * h6 * h7 * h8 * A * B) \
        - G_aa**2 / (1j * h5 * h9)
    G = 1.0 + g_1**2 / (h4 * h5 * E)
    K = 1.0 - G_11**2 / (1j * h3 * h4 * G)
    L = 1.0 + G_11**2 / (1j * h2 * h3 * K)
    M = -1j * g_1 / h2 + g_1 * G_11**2 * F / (h2 * h3 * h4 * E * G * K)

    X1 = 1.0 + G_11**2 / (1j * h2 * h3)
    X2 = 1.0 - G_11**2 / (1j * h3 * h4 * X1)
    X3 = 1.0 + g_1**2 / (h4 * h5 * X2) - G_aa**2 / (1j * h5 * h9)
    X4 = 1j * g_1**2 * G_11**2 / (h2 * h3 * h4 * h5 * X1 * X2) \
        - G_aa**2 / (1j * h5 * h9)
    X5 = 1.0 + g_2**2 / (h5 * h6 * X3)
    X6 = 1.0 - G_22**2 / (1j * h6 * h7 * X5)
    X7 = 1.0 + G_22**2 / (1j * h7 * h8 * X6)
    X8 = -1j * g_2 / h8 + g_2 * G_22**2 * X4 / (h6 * h7 * h8 * X3 * X5 * X6)

    Z1 = 1.0 + g_1**2 / (h4 * h5 * X2) + g_2**2 / (h5 * h6 * B)
    Z2 = 1j * g_1**2 * G_11**2 / (h2 * h3 * h4 * h5 * X1 * X2) \
        + 1j * g_2**2 * G_22**2 / (h5 * h6 * h7 * h8 * A * B)
    Z3 = 1.0 - G_aa**2 / (1j * h5 * h9 * Z1)
    Z4 = -G_aa / (1j * h9) + G_aa * Z2 / (1j * h9 * Z1)

    return 1.0 / (h1 + 1j * g_1 * M / L + 1j * g_2 * X8 / X7
                  - G_aa * Z4 / Z3)


def _grid_numpy(deltas, args):
    deltas = np.asarray(deltas, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.asarray(_amplitude_expr(deltas + 0.0j, *args))


_USE_NUMBA = os.environ.get("MAGNOMECH_NO_NUMBA", "") not in ("1", "true", "yes")
if _USE_NUMBA:
    try:
        import numba
    except ImportError:
        _USE_NUMBA = False

if _USE_NUMBA:
    _amplitude_scalar = numba.njit(cache=True, error_model="numpy")(_amplitude_expr)

    @numba.njit(cache=True, error_model="numpy")
    def _grid_loop(deltas,
                   kappa_a, kappa_m1, kappa_m2,
                   gamma_1, gamma_2, gamma_3,
                   omega_b1, omega_b2, omega_b3,
                   Delta_a, Delta_m1, Delta_m2,
                   g_1, g_2, G_11, G_22, G_aa):
        out = np.empty(deltas.shape[0], dtype=np.complex128)
        for i in range(deltas.shape[0]):
            out[i] = _amplitude_scalar(
                complex(deltas[i]),
                kappa_a, kappa_m1, kappa_m2,
                gamma_1, gamma_2, gamma_3,
                omega_b1, omega_b2, omega_b3,
                Delta_a, Delta_m1, Delta_m2,
                g_1, g_2, G_11, G_22, G_aa)
        return out

    def _grid_numba(deltas, args):
        deltas = np.ascontiguousarray(deltas, dtype=float)
        return _grid_loop(deltas, *args)


def using_numba() -> bool:
    return _USE_NUMBA


def _model_args(model):
    return (model.kappa_a, model.kappa_m1, model.kappa_m2,
            model.gamma_1, model.gamma_2, model.gamma_3,
            model.omega_b1, model.omega_b2, model.omega_b3,
            model.Delta_a_eff, model.Delta_m1_eff, model.Delta_m2_eff,
            model.g_1, model.g_2, model.G_11, model.G_22, model.G_aa)


def amplitude_grid(model, deltas) -> np.ndarray:
    """a_-/eps_p on a detuning grid; poles come back non-finite."""
    args = _model_args(model)
    if _USE_NUMBA:
        return _grid_numba(deltas, args)
    return _grid_numpy(deltas, args)
