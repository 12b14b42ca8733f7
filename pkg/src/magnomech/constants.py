"""Physical constants for YIG-sphere magnomechanics.

All frequencies and rates are angular (rad/s) unless a name says otherwise.
"""

from dataclasses import dataclass

import numpy as np

HBAR = 1.054571817e-34  # J s

# Gyromagnetic ratio of YIG, gamma/2pi = 28 GHz/T
GYROMAGNETIC_RATIO = 2.0 * np.pi * 28.0e9  # rad s^-1 T^-1

# Spin density of Fe3+ in YIG
SPIN_DENSITY = 4.22e27  # m^-3


@dataclass(frozen=True)
class PhysicalConstants:
    """Material constants of the YIG spheres."""

    gyromagnetic_ratio: float = GYROMAGNETIC_RATIO  # rad s^-1 T^-1
    spin_density: float = SPIN_DENSITY  # spins per m^3
    spin_per_ion: float = 2.5  # ground-state Fe3+

    def __post_init__(self):
        if self.gyromagnetic_ratio <= 0:
            raise ValueError("gyromagnetic_ratio must be positive")
        if self.spin_density <= 0:
            raise ValueError("spin_density must be positive")


DEFAULT_CONSTANTS = PhysicalConstants()
