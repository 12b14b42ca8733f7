"""Sweep engine and spectral analytics.

Produces per-detuning spectrum tables, finds transparency windows with
prominence-based dip detection and quadratic refinement, quantifies Fano
asymmetry, and evaluates the two Barnett-rotation contrast ratios.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np
from scipy.signal import find_peaks

from . import kernels, oracle
from .params import RawParams
from .steady_state import LinearizedModel, effective_model
from .response import PoleError

EPS_NR_GUARD = 1e-12  # absolute denominator guard for the contrast ratio
TAU_NR_GUARD = 1e-12  # seconds
OPTIMAL_CONTRAST = 0.99


class Method(str, enum.Enum):
    CHAIN = "chain"
    ORACLE = "oracle"
    BOTH = "both"


@dataclass(frozen=True)
class SweepSpec:
    delta_min: float  # rad/s
    delta_max: float
    n_points: int = 2001
    method: Method = Method.CHAIN

    def __post_init__(self):
        if self.delta_min >= self.delta_max:
            raise ValueError("delta_min must be below delta_max")
        if self.n_points < 2:
            raise ValueError("n_points must be at least 2")

    def grid(self) -> np.ndarray:
        return np.linspace(self.delta_min, self.delta_max, self.n_points)


@dataclass(frozen=True)
class SpectrumTable:
    delta: np.ndarray
    eps_out: np.ndarray  # complex
    T: np.ndarray  # complex
    phase: np.ndarray  # unwrapped arg(T)
    tau: np.ndarray  # seconds, grid-level centered differences
    pole: np.ndarray  # bool flags
    method: str

    @property
    def eps_R(self) -> np.ndarray:
        return self.eps_out.real

    @property
    def eps_I(self) -> np.ndarray:
        return self.eps_out.imag


@dataclass(frozen=True)
class Window:
    dip_location: float  # rad/s, refined
    dip_value: float
    left_peak: float
    right_peak: float
    depth: float
    width: float
    asymmetry: float


@dataclass(frozen=True)
class NonreciprocityReport:
    delta: np.ndarray
    eps_R_neg: np.ndarray
    eps_R_pos: np.ndarray
    eps_NR: np.ndarray
    eps_NR_guard: np.ndarray  # True where the denominator guard tripped
    tau_neg: np.ndarray | None = None
    tau_pos: np.ndarray | None = None
    tau_NR: np.ndarray | None = None
    tau_NR_valid: np.ndarray | None = None


def _oracle_grid(model: LinearizedModel, grid: np.ndarray) -> np.ndarray:
    out = np.empty(grid.shape, dtype=complex)
    for i, delta in enumerate(grid):
        try:
            out[i] = oracle.oracle_amplitude(model, float(delta))
        except (oracle.SolveError, PoleError):
            out[i] = np.nan
    return out


def sweep_spectrum(model: LinearizedModel, spec: SweepSpec) -> SpectrumTable:
    """Evaluate the spectrum on a uniform grid; poles are flagged, not fatal."""
    if spec.method is Method.BOTH:
        raise ValueError("use sweep_both for method=both")
    grid = spec.grid()
    if spec.method is Method.ORACLE:
        amp = _oracle_grid(model, grid)
    else:
        amp = kernels.amplitude_grid(model, grid)
    pole = ~np.isfinite(amp)
    eps_out = 2.0 * model.kappa_a * amp
    T = 1.0 - eps_out
    raw_phase = np.angle(np.where(pole, 1.0, T))
    phase = np.unwrap(raw_phase)
    tau = np.gradient(phase, grid)
    return SpectrumTable(delta=grid, eps_out=eps_out, T=T, phase=phase,
                         tau=tau, pole=pole, method=spec.method.value)


def sweep_both(model: LinearizedModel,
               spec: SweepSpec) -> tuple[SpectrumTable, SpectrumTable]:
    chain = sweep_spectrum(model, replace(spec, method=Method.CHAIN))
    direct = sweep_spectrum(model, replace(spec, method=Method.ORACLE))
    return chain, direct


def _refine_parabola(x: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    """Vertex of the parabola through points i-1, i, i+1."""
    if i == 0 or i == len(x) - 1:
        return float(x[i]), float(y[i])
    denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
    if denom == 0.0:
        return float(x[i]), float(y[i])
    shift = 0.5 * (y[i - 1] - y[i + 1]) / denom
    shift = max(-1.0, min(1.0, shift))
    step = x[i + 1] - x[i]
    x0 = float(x[i] + shift * step)
    y0 = float(y[i] - 0.25 * (y[i - 1] - y[i + 1]) * shift)
    return x0, y0


def _half_depth_width(delta, eps_R, i_dip, dip_value, depth) -> float:
    level = dip_value + 0.5 * depth
    left = right = None
    for j in range(i_dip, 0, -1):
        if eps_R[j - 1] >= level:
            frac = (level - eps_R[j]) / (eps_R[j - 1] - eps_R[j])
            left = delta[j] + frac * (delta[j - 1] - delta[j])
            break
    for j in range(i_dip, len(delta) - 1):
        if eps_R[j + 1] >= level:
            frac = (level - eps_R[j]) / (eps_R[j + 1] - eps_R[j])
            right = delta[j] + frac * (delta[j + 1] - delta[j])
            break
    if left is None or right is None:
        return float("nan")
    return float(right - left)


def find_windows(table: SpectrumTable, prominence: float = 0.01) -> list[Window]:
    """Transparency windows: prominent local minima of the absorption."""
    if prominence <= 0:
        raise ValueError("prominence must be positive")
    eps_R = np.where(table.pole, np.nan, table.eps_R)
    if len(eps_R) < 5:
        raise ValueError("table must have at least 5 points")
    scale = np.nanmax(eps_R)
    dip_idx, _ = find_peaks(-eps_R, prominence=prominence * scale)
    peak_idx, _ = find_peaks(eps_R)
    windows = []
    for i in dip_idx:
        lefts = peak_idx[peak_idx < i]
        rights = peak_idx[peak_idx > i]
        if len(lefts) == 0 or len(rights) == 0:
            continue
        il, ir = lefts[-1], rights[0]
        dip_loc, dip_val = _refine_parabola(table.delta, eps_R, i)
        depth = float(min(eps_R[il], eps_R[ir]) - dip_val)
        asym = float((eps_R[il] - eps_R[ir]) / (eps_R[il] + eps_R[ir]))
        windows.append(Window(
            dip_location=dip_loc, dip_value=dip_val,
            left_peak=float(table.delta[il]), right_peak=float(table.delta[ir]),
            depth=depth,
            width=_half_depth_width(table.delta, eps_R, i, dip_val, depth),
            asymmetry=asym))
    windows.sort(key=lambda w: w.dip_location)
    return windows


def fano_asymmetry(window: Window, table: SpectrumTable) -> float:
    """Normalized shoulder-height imbalance of one window, in [-1, 1]."""
    il = int(np.argmin(np.abs(table.delta - window.left_peak)))
    ir = int(np.argmin(np.abs(table.delta - window.right_peak)))
    left, right = table.eps_R[il], table.eps_R[ir]
    if left == 0.0 and right == 0.0:
        raise ValueError("degenerate window: both shoulder values are zero")
    return float((left - right) / (left + right))


def _paired_models(params: RawParams, abs_Delta_B: float):
    if abs_Delta_B < 0:
        raise ValueError("abs_Delta_B must be nonnegative")
    neg = effective_model(replace(params, Delta_B=-abs_Delta_B))
    pos = effective_model(replace(params, Delta_B=+abs_Delta_B))
    return neg, pos


def eps_nonreciprocity(params: RawParams, abs_Delta_B: float,
                       spec: SweepSpec) -> NonreciprocityReport:
    """Absorption contrast ratio between the two rotation directions."""
    model_neg, model_pos = _paired_models(params, abs_Delta_B)
    t_neg = sweep_spectrum(model_neg, spec)
    t_pos = sweep_spectrum(model_pos, spec)
    den = t_neg.eps_R + t_pos.eps_R
    guard = np.abs(den) < EPS_NR_GUARD
    with np.errstate(divide="ignore", invalid="ignore"):
        nr = np.abs(t_neg.eps_R - t_pos.eps_R) / den
    nr[guard] = 0.0
    return NonreciprocityReport(delta=t_neg.delta, eps_R_neg=t_neg.eps_R,
                                eps_R_pos=t_pos.eps_R, eps_NR=nr,
                                eps_NR_guard=guard)


def tau_nonreciprocity(params: RawParams, abs_Delta_B: float,
                       spec: SweepSpec) -> NonreciprocityReport:
    """Group-delay contrast ratio; only points with positive total delay
    carry a valid value (the ratio is undefined for net fast light)."""
    report = eps_nonreciprocity(params, abs_Delta_B, spec)
    model_neg, model_pos = _paired_models(params, abs_Delta_B)
    tau_neg = sweep_spectrum(model_neg, spec).tau
    tau_pos = sweep_spectrum(model_pos, spec).tau
    den = tau_neg + tau_pos
    valid = den > TAU_NR_GUARD
    with np.errstate(divide="ignore", invalid="ignore"):
        nr = np.abs(tau_neg - tau_pos) / den
    nr[~valid] = np.nan
    return replace(report, tau_neg=tau_neg, tau_pos=tau_pos,
                   tau_NR=nr, tau_NR_valid=valid)


def optimal_ranges(delta: np.ndarray, contrast: np.ndarray,
                   threshold: float = OPTIMAL_CONTRAST,
                   valid: np.ndarray | None = None) -> list[tuple[float, float]]:
    """Contiguous detuning runs where the contrast stays at or above threshold."""
    mask = np.asarray(contrast) >= threshold
    if valid is not None:
        mask &= np.asarray(valid, dtype=bool)
    ranges = []
    start = None
    for i, flag in enumerate(mask):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            ranges.append((float(delta[start]), float(delta[i - 1])))
            start = None
    if start is not None:
        ranges.append((float(delta[start]), float(delta[-1])))
    return ranges
