"""Frequency-domain probe response of a hybrid microwave cavity holding
two magnon spheres and a vibrating membrane.

The package computes absorption/dispersion spectra, transparency
windows, Fano asymmetries, slow/fast-light group delays and
rotation-induced (Barnett) nonreciprocity, with a closed-form response
chain cross-checked against a direct linear-system solve.
"""

from .analysis import (Method, NonreciprocityReport, SpectrumTable, SweepSpec,
                       Window, eps_nonreciprocity, fano_asymmetry,
                       find_windows, optimal_ranges, sweep_both,
                       sweep_spectrum, tau_nonreciprocity)
from .kernels import amplitude_grid, using_numba
from .oracle import (SolveError, ValidationReport, assemble_sideband_matrix,
                     cross_validate, oracle_amplitude, solve_probe_response)
from .params import (ConfigError, DerivedDrive, KerrReport, Mode, RawParams,
                     barnett_field, barnett_shift, derive_drive,
                     kerr_diagnostic, load_validate_config, probe_amplitude,
                     rabi_frequency, save_config, spin_count)
from .presets import Preset, UnknownPresetError, list_presets, resolve_preset
from .response import (ChainCoefficients, PoleError, ProbePoint,
                       chain_coefficients, group_delay, output_field,
                       probe_sideband_amplitude)
from .steady_state import (LinearizedModel, SteadyState, SteadyStateError,
                           effective_model, solve_steady_state, with_barnett)

__version__ = "0.1.0"
