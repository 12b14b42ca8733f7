"""Closed-form probe response: sideband amplitude, output field, group delay.

The amplitude is a nested continued fraction in the per-mode
susceptibility denominators h1..h9; ``chain_coefficients`` exposes every
intermediate for inspection and pole diagnostics, while grid evaluation
goes through the compiled kernel.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .kernels import _amplitude_expr, _model_args
from .steady_state import LinearizedModel


class PoleError(ArithmeticError):
    """A susceptibility denominator vanished at the requested detuning."""

    def __init__(self, name: str, delta: float):
        super().__init__(f"pole in {name} at delta = {delta!r} rad/s")
        self.name = name
        self.delta = delta


@dataclass(frozen=True)
class ChainCoefficients:
    delta: float
    h1: complex
    h2: complex
    h3: complex
    h4: complex
    h5: complex
    h6: complex
    h7: complex
    h8: complex
    h9: complex
    A: complex
    B: complex
    E: complex
    F: complex
    G: complex
    K: complex
    L: complex
    M: complex
    X1: complex
    X2: complex
    X3: complex
    X4: complex
    X5: complex
    X6: complex
    X7: complex
    X8: complex
    Z1: complex
    Z2: complex
    Z3: complex
    Z4: complex


@dataclass(frozen=True)
class ProbePoint:
    delta: float
    eps_out: complex
    eps_R: float
    eps_I: float
    T: complex
    phase: float
    tau: float | None = None


def chain_coefficients(model: LinearizedModel, delta: float) -> ChainCoefficients:
    """Evaluate every intermediate coefficient, checking denominators."""
    m = model
    h1 = m.kappa_a + 1j * (m.Delta_a_eff - delta)
    h2 = m.kappa_m1 + 1j * (m.Delta_m1_eff - delta)
    h3 = m.omega_b1 - (delta / m.omega_b1) * (delta + 1j * m.gamma_1)
    h4 = m.kappa_m1 - 1j * (m.Delta_m1_eff + delta)
    h5 = m.kappa_a - 1j * (m.Delta_a_eff + delta)
    h6 = m.kappa_m2 - 1j * (m.Delta_m2_eff + delta)
    h7 = m.omega_b2 - (delta / m.omega_b2) * (delta + 1j * m.gamma_2)
    h8 = m.kappa_m2 + 1j * (m.Delta_m2_eff - delta)
    h9 = m.omega_b3 - (delta / m.omega_b3) * (delta + 1j * m.gamma_3)
    for name, value in (("h1", h1), ("h2", h2), ("h3", h3), ("h4", h4),
                        ("h5", h5), ("h6", h6), ("h7", h7), ("h8", h8),
                        ("h9", h9)):
        if value == 0:
            raise PoleError(name, delta)

    g1, g2 = m.g_1, m.g_2
    G11, G22, Gaa = m.G_11, m.G_22, m.G_aa

    def guarded(name, num, den):
        if den == 0:
            raise PoleError(name, delta)
        return num / den

    A = 1.0 + G22**2 / (1j * h7 * h8)
    B = 1.0 - guarded("A", G22**2, 1j * h6 * h7 * A)
    E = 1.0 + guarded("B", g2**2, h5 * h6 * B) - Gaa**2 / (1j * h5 * h9)
    F = guarded("A*B", 1j * g2**2 * G22**2, h5 * h6 * h7 * h8 * A * B) \
        - Gaa**2 / (1j * h5 * h9)
    G = 1.0 + guarded("E", g1**2, h4 * h5 * E)
    K = 1.0 - guarded("G", G11**2, 1j * h3 * h4 * G)
    L = 1.0 + guarded("K", G11**2, 1j * h2 * h3 * K)
    M = -1j * g1 / h2 + guarded("E*G*K", g1 * G11**2 * F,
                                h2 * h3 * h4 * E * G * K)

    X1 = 1.0 + G11**2 / (1j * h2 * h3)
    X2 = 1.0 - guarded("X1", G11**2, 1j * h3 * h4 * X1)
    X3 = 1.0 + guarded("X2", g1**2, h4 * h5 * X2) - Gaa**2 / (1j * h5 * h9)
    X4 = guarded("X1*X2", 1j * g1**2 * G11**2,
                 h2 * h3 * h4 * h5 * X1 * X2) - Gaa**2 / (1j * h5 * h9)
    X5 = 1.0 + guarded("X3", g2**2, h5 * h6 * X3)
    X6 = 1.0 - guarded("X5", G22**2, 1j * h6 * h7 * X5)
    X7 = 1.0 + guarded("X6", G22**2, 1j * h7 * h8 * X6)
    X8 = -1j * g2 / h8 + guarded("X3*X5*X6", g2 * G22**2 * X4,
                                 h6 * h7 * h8 * X3 * X5 * X6)

    Z1 = 1.0 + g1**2 / (h4 * h5 * X2) + g2**2 / (h5 * h6 * B)
    Z2 = 1j * g1**2 * G11**2 / (h2 * h3 * h4 * h5 * X1 * X2) \
        + 1j * g2**2 * G22**2 / (h5 * h6 * h7 * h8 * A * B)
    Z3 = 1.0 - guarded("Z1", Gaa**2, 1j * h5 * h9 * Z1)
    Z4 = -Gaa / (1j * h9) + Gaa * Z2 / (1j * h9 * Z1)

    coeffs = ChainCoefficients(delta, h1, h2, h3, h4, h5, h6, h7, h8, h9,
                               A, B, E, F, G, K, L, M,
                               X1, X2, X3, X4, X5, X6, X7, X8,
                               Z1, Z2, Z3, Z4)
    for name in ("A", "B", "E", "F", "G", "K", "L", "M",
                 "X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8",
                 "Z1", "Z2", "Z3", "Z4"):
        value = getattr(coeffs, name)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise PoleError(name, delta)
    return coeffs


def probe_sideband_amplitude(model: LinearizedModel, delta: float) -> complex:
    """a_-/eps_p at one detuning (units of seconds)."""
    c = chain_coefficients(model, delta)
    for name, den in (("L", c.L), ("X7", c.X7), ("Z3", c.Z3)):
        if den == 0:
            raise PoleError(name, delta)
    den = c.h1 + 1j * model.g_1 * c.M / c.L \
        + 1j * model.g_2 * c.X8 / c.X7 - model.G_aa * c.Z4 / c.Z3
    if den == 0:
        raise PoleError("outer denominator", delta)
    return 1.0 / den


def amplitude_unchecked(model: LinearizedModel, delta: float) -> complex:
    """Same expression without pole diagnostics (used by stencils)."""
    return complex(_amplitude_expr(complex(delta), *_model_args(model)))


def output_field(model: LinearizedModel, delta: float) -> ProbePoint:
    """Normalized output field and transmission at one detuning."""
    eps_out = 2.0 * model.kappa_a * probe_sideband_amplitude(model, delta)
    T = 1.0 - eps_out
    return ProbePoint(delta=delta, eps_out=eps_out,
                      eps_R=eps_out.real, eps_I=eps_out.imag,
                      T=T, phase=cmath.phase(T))


def _wrap_to_pi(angle: float) -> float:
    """Reduce a phase difference to (-pi, pi]."""
    wrapped = math.fmod(angle + math.pi, 2.0 * math.pi)
    if wrapped <= 0.0:
        wrapped += 2.0 * math.pi
    return wrapped - math.pi


def group_delay(model: LinearizedModel, delta: float,
                step: float | None = None, max_refine: int = 10) -> float:
    """Group delay tau = d arg(T) / d omega_p by centered differences.

    The stencil phase jump is branch-reduced to (-pi, pi]; if it still
    exceeds pi/2 the step is halved (up to ``max_refine`` times) before
    giving up.  Positive tau is slow light, negative fast light.
    """
    if step is None:
        step = 1e-5 * model.omega_b1
    if step <= 0:
        raise ValueError("step must be positive")
    for _ in range(max_refine + 1):
        lo = output_field(model, delta - step)
        hi = output_field(model, delta + step)
        jump = _wrap_to_pi(hi.phase - lo.phase)
        if abs(jump) <= 0.5 * math.pi:
            return jump / (2.0 * step)
        step *= 0.5
    raise ArithmeticError(
        f"phase jump stayed above pi/2 after {max_refine} step refinements"
        f" at delta = {delta!r}")
