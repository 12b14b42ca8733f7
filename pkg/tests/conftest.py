import math

import pytest

from magnomech.params import Mode, RawParams
from magnomech.steady_state import effective_model

TWO_PI = 2.0 * math.pi
MHZ = TWO_PI * 1e6
OMEGA_B = TWO_PI * 1e7


def make_params(**overrides) -> RawParams:
    base = dict(
        omega_a=TWO_PI * 1e10, omega_L=TWO_PI * 1e10,
        omega_b1=OMEGA_B, omega_b2=OMEGA_B, omega_b3=OMEGA_B,
        kappa_a=TWO_PI * 1e6, kappa_m1=TWO_PI * 1e5, kappa_m2=TWO_PI * 1e5,
        gamma_1=TWO_PI * 1e2, gamma_2=TWO_PI * 1e2, gamma_3=TWO_PI * 1e2,
        g_1=1.5 * MHZ, g_2=1.5 * MHZ,
        G_1=1.5 * MHZ, G_2=3.5 * MHZ, G_a=2.5 * MHZ,
        delta_a=OMEGA_B, delta_m1=OMEGA_B, delta_m2=OMEGA_B,
        Delta_B=0.0, mode=Mode.EFFECTIVE,
    )
    base.update(overrides)
    return RawParams(**base)


@pytest.fixture
def full_params():
    """All five couplings on, Table-style values."""
    return make_params()


@pytest.fixture
def full_model(full_params):
    return effective_model(full_params)


@pytest.fixture
def bare_params():
    """All couplings off: the cavity is a bare Lorentzian."""
    return make_params(g_1=0.0, g_2=0.0, G_1=0.0, G_2=0.0, G_a=0.0)


@pytest.fixture
def bare_model(bare_params):
    return effective_model(bare_params)


FULL_CONFIG_TOML = """\
mode = "effective"
omega_a_hz = 1e10
omega_L_hz = 1e10
omega_b1_hz = 1e7
omega_b2_hz = 1e7
omega_b3_hz = 1e7
kappa_a_hz = 1e6
kappa_m1_hz = 1e5
kappa_m2_hz = 1e5
gamma_1_hz = 100.0
gamma_2_hz = 100.0
gamma_3_hz = 100.0
g_1_hz = 1.5e6
g_2_hz = 1.5e6
G_1_hz = 1.5e6
G_2_hz = 3.5e6
G_a_hz = 2.5e6
delta_a_hz = 1e7
delta_m1_hz = 1e7
delta_m2_hz = 1e7
"""

FIRST_PRINCIPLES_TOML = """\
mode = "first_principles"
omega_a_hz = 1e10
omega_L_hz = 1e10
omega_b1_hz = 1e7
omega_b2_hz = 1e7
omega_b3_hz = 1e7
kappa_a_hz = 1e6
kappa_m1_hz = 1e5
kappa_m2_hz = 1e5
gamma_1_hz = 100.0
gamma_2_hz = 100.0
gamma_3_hz = 100.0
g_1_hz = 1.5e6
g_2_hz = 1.5e6
G_01_hz = 0.2
G_02_hz = 0.2
g_a_hz = 0.2
B_tesla = 3.6e-5
P_watt = 7.6e-3
diameter_m = 250e-6
delta_a_hz = 1e7
"""


@pytest.fixture
def full_config_path(tmp_path):
    path = tmp_path / "full.toml"
    path.write_text(FULL_CONFIG_TOML)
    return path


@pytest.fixture
def first_principles_config_path(tmp_path):
    path = tmp_path / "fp.toml"
    path.write_text(FIRST_PRINCIPLES_TOML)
    return path
