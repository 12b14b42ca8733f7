"""Configuration handling and physical-parameter derivations.

Config files are TOML with plain frequencies in Hz (``*_hz`` keys); every
internal frequency and rate is angular (rad/s), so a file value ``f`` is
stored as ``2*pi*f``.  The Barnett shift is given relative to the first
mechanical frequency via ``delta_B_over_wb``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # 3.10
    import tomli as tomllib

from .constants import HBAR, DEFAULT_CONSTANTS, PhysicalConstants

TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """Invalid or inconsistent configuration; message names the key."""


class Mode(str, enum.Enum):
    EFFECTIVE = "effective"
    FIRST_PRINCIPLES = "first_principles"


@dataclass(frozen=True)
class RawParams:
    """Validated system parameters, everything angular (rad/s).

    ``delta_a/m1/m2`` are the drive-frame detunings of the cavity and the
    two magnon modes (without the Barnett shift, which lives in
    ``Delta_B``).  In EFFECTIVE mode the three effective coupling
    magnitudes ``G_1, G_2, G_a`` are inputs; in FIRST_PRINCIPLES mode they
    are derived from the steady state and the bare couplings
    ``G_01, G_02, g_a_bare`` plus the drive fields.
    """

    omega_a: float
    omega_L: float
    omega_b1: float
    omega_b2: float
    omega_b3: float
    kappa_a: float
    kappa_m1: float
    kappa_m2: float
    gamma_1: float
    gamma_2: float
    gamma_3: float
    g_1: float
    g_2: float
    delta_a: float
    delta_m1: float
    delta_m2: float
    Delta_B: float = 0.0
    mode: Mode = Mode.EFFECTIVE
    # EFFECTIVE mode inputs
    G_1: float | None = None
    G_2: float | None = None
    G_a: float | None = None
    # FIRST_PRINCIPLES mode inputs
    G_01: float | None = None
    G_02: float | None = None
    g_a_bare: float | None = None
    B_drive: float | None = None
    P_drive: float | None = None
    sphere_diameter: float | None = None
    # include static-displacement detuning shifts in the effective model;
    # required to reproduce the reference transparency-window positions
    displacement_shifts: bool = True

    def __post_init__(self):
        for name in ("omega_a", "omega_L", "omega_b1", "omega_b2", "omega_b3"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        for name in ("kappa_a", "kappa_m1", "kappa_m2",
                     "gamma_1", "gamma_2", "gamma_3"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        for name in ("g_1", "g_2"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.mode is Mode.EFFECTIVE:
            for name in ("G_1", "G_2", "G_a"):
                if getattr(self, name) is None:
                    raise ConfigError(
                        f"{name} is required in EffectiveParams mode")
        else:
            for name in ("G_01", "G_02", "g_a_bare",
                         "B_drive", "P_drive", "sphere_diameter"):
                if getattr(self, name) is None:
                    raise ConfigError(
                        f"{name} is required in FirstPrinciples mode")
            if self.sphere_diameter <= 0:
                raise ConfigError("sphere_diameter must be positive")


@dataclass(frozen=True)
class DerivedDrive:
    """Drive quantities derived from the raw first-principles inputs."""

    N_spins: float
    Omega: float  # Rabi frequency of the driven magnon, rad/s
    epsilon_p: float  # probe amplitude; cancels in normalized outputs


@dataclass(frozen=True)
class KerrReport:
    nonlinear_scale: float
    threshold: float
    ratio: float
    negligible: bool


# Kerr scale must stay below this for the quartic magnon term to be
# ignorable; plain configurable comparison value.
DEFAULT_KERR_THRESHOLD = 2.23e14  # rad/s

# TOML config keys carrying ordinary Hz, mapped to RawParams fields.
_HZ_KEYS = {
    "omega_a_hz": "omega_a",
    "omega_L_hz": "omega_L",
    "omega_b1_hz": "omega_b1",
    "omega_b2_hz": "omega_b2",
    "omega_b3_hz": "omega_b3",
    "kappa_a_hz": "kappa_a",
    "kappa_m1_hz": "kappa_m1",
    "kappa_m2_hz": "kappa_m2",
    "gamma_1_hz": "gamma_1",
    "gamma_2_hz": "gamma_2",
    "gamma_3_hz": "gamma_3",
    "g_1_hz": "g_1",
    "g_2_hz": "g_2",
}
_HZ_KEYS_EFFECTIVE = {"G_1_hz": "G_1", "G_2_hz": "G_2", "G_a_hz": "G_a"}
_HZ_KEYS_FIRST = {"G_01_hz": "G_01", "G_02_hz": "G_02", "g_a_hz": "g_a_bare"}
_PLAIN_KEYS_FIRST = {
    "B_tesla": "B_drive",
    "P_watt": "P_drive",
    "diameter_m": "sphere_diameter",
}


def _flatten(table: dict, out: dict) -> dict:
    for key, value in table.items():
        if isinstance(value, dict):
            _flatten(value, out)
        else:
            if key in out:
                raise ConfigError(f"duplicate key {key} across sections")
            out[key] = value
    return out


def _pop_number(data: dict, key: str) -> float:
    if key not in data:
        raise ConfigError(f"missing key {key}")
    value = data.pop(key)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def load_validate_config(path) -> RawParams:
    """Parse a TOML config file into validated RawParams."""
    with open(path, "rb") as fh:
        data = _flatten(tomllib.load(fh), {})

    mode_name = data.pop("mode", "effective")
    try:
        mode = Mode(mode_name)
    except ValueError:
        raise ConfigError(f"mode must be 'effective' or 'first_principles',"
                          f" got {mode_name!r}") from None

    kwargs = {"mode": mode}
    for key, name in _HZ_KEYS.items():
        kwargs[name] = TWO_PI * _pop_number(data, key)
    if mode is Mode.EFFECTIVE:
        for key, name in _HZ_KEYS_EFFECTIVE.items():
            kwargs[name] = TWO_PI * _pop_number(data, key)
    else:
        for key, name in _HZ_KEYS_FIRST.items():
            kwargs[name] = TWO_PI * _pop_number(data, key)
        for key, name in _PLAIN_KEYS_FIRST.items():
            kwargs[name] = _pop_number(data, key)

    # Detunings: explicit keys win; delta_a falls back to omega_a - omega_L
    # and the magnon detunings default to delta_a (resonant magnons).
    if "delta_a_hz" in data:
        kwargs["delta_a"] = TWO_PI * _pop_number(data, "delta_a_hz")
    else:
        kwargs["delta_a"] = kwargs["omega_a"] - kwargs["omega_L"]
    for key, name in (("delta_m1_hz", "delta_m1"), ("delta_m2_hz", "delta_m2")):
        if key in data:
            kwargs[name] = TWO_PI * _pop_number(data, key)
        else:
            kwargs[name] = kwargs["delta_a"]

    kwargs["Delta_B"] = _pop_number(data, "delta_B_over_wb") * kwargs["omega_b1"] \
        if "delta_B_over_wb" in data else 0.0
    shifts = data.pop("displacement_shifts", True)
    if not isinstance(shifts, bool):
        raise ConfigError("displacement_shifts must be a boolean")
    kwargs["displacement_shifts"] = shifts

    if data:
        raise ConfigError(f"unknown key {sorted(data)[0]}")
    return RawParams(**kwargs)


def save_config(params: RawParams, path) -> None:
    """Write RawParams back to a TOML file; load_validate_config inverts it."""
    lines = [f'mode = "{params.mode.value}"']
    for key, name in _HZ_KEYS.items():
        lines.append(f"{key} = {getattr(params, name) / TWO_PI!r}")
    lines.append(f"delta_a_hz = {params.delta_a / TWO_PI!r}")
    lines.append(f"delta_m1_hz = {params.delta_m1 / TWO_PI!r}")
    lines.append(f"delta_m2_hz = {params.delta_m2 / TWO_PI!r}")
    lines.append(f"delta_B_over_wb = {params.Delta_B / params.omega_b1!r}")
    table = _HZ_KEYS_EFFECTIVE if params.mode is Mode.EFFECTIVE else _HZ_KEYS_FIRST
    for key, name in table.items():
        lines.append(f"{key} = {getattr(params, name) / TWO_PI!r}")
    if params.mode is Mode.FIRST_PRINCIPLES:
        for key, name in _PLAIN_KEYS_FIRST.items():
            lines.append(f"{key} = {getattr(params, name)!r}")
    lines.append(f"displacement_shifts = {'true' if params.displacement_shifts else 'false'}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def spin_count(diameter: float,
               constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Total spin number of a YIG sphere of the given diameter (m)."""
    if diameter <= 0:
        raise ValueError("diameter must be positive")
    volume = (4.0 / 3.0) * math.pi * (diameter / 2.0) ** 3
    return constants.spin_density * volume


def rabi_frequency(B: float, N: float,
                   constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Rabi frequency of the driven magnon mode, (sqrt(5)/4) gamma sqrt(N) B."""
    if N <= 0:
        raise ValueError("spin count N must be positive")
    if B < 0:
        raise ValueError("drive amplitude B must be nonnegative")
    return (math.sqrt(5.0) / 4.0) * constants.gyromagnetic_ratio * math.sqrt(N) * B


def barnett_field(Delta_B: float,
                  constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Effective magnetic field (T) equivalent to a Barnett shift (rad/s)."""
    return Delta_B / constants.gyromagnetic_ratio


def barnett_shift(H_B: float,
                  constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Barnett frequency shift (rad/s) from the effective field (T)."""
    return constants.gyromagnetic_ratio * H_B


def probe_amplitude(power: float, kappa_a: float, omega_p: float) -> float:
    """Probe amplitude sqrt(2 kappa_a P / hbar omega_p).

    Documentation value only: normalized outputs are independent of it.
    """
    if power < 0:
        raise ValueError("power must be nonnegative")
    return math.sqrt(2.0 * kappa_a * power / (HBAR * omega_p))


def derive_drive(params: RawParams,
                 constants: PhysicalConstants = DEFAULT_CONSTANTS) -> DerivedDrive:
    """Spin count, Rabi frequency and probe amplitude for FIRST_PRINCIPLES mode."""
    if params.mode is not Mode.FIRST_PRINCIPLES:
        raise ConfigError("derive_drive requires FirstPrinciples mode")
    N = spin_count(params.sphere_diameter, constants)
    Omega = rabi_frequency(params.B_drive, N, constants)
    eps_p = probe_amplitude(params.P_drive, params.kappa_a,
                            params.omega_L + params.omega_b1)
    return DerivedDrive(N_spins=N, Omega=Omega, epsilon_p=eps_p)


def kerr_diagnostic(K: float, m_amplitude: float,
                    threshold: float = DEFAULT_KERR_THRESHOLD) -> KerrReport:
    """Check that the quartic magnon self-interaction is negligible.

    The nonlinear scale is K |m|^3; it must stay below the threshold.
    """
    if K < 0:
        raise ValueError("Kerr coefficient K must be nonnegative")
    if m_amplitude < 0:
        raise ValueError("m_amplitude must be nonnegative")
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    scale = K * m_amplitude ** 3
    return KerrReport(nonlinear_scale=scale, threshold=threshold,
                      ratio=scale / threshold, negligible=scale < threshold)
