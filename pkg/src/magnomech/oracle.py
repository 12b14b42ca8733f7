"""Independent ground truth: direct solve of the linearized sideband system.

The mean-field Langevin equations are linearized around the steady state
(noise terms zero, counter-rotating terms kept) and the lower-sideband
Fourier components of the twelve fluctuation variables are solved as one
dense complex system.  This shares no algebra with the continued-fraction
chain in ``response``; agreement between the two is the correctness check
for both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .response import PoleError, probe_sideband_amplitude
from .steady_state import LinearizedModel

# Unknown ordering of the sideband vector.
VARIABLES = ("a", "a_dag", "m1", "m1_dag", "m2", "m2_dag",
             "q1", "p1", "q2", "p2", "q3", "p3")
_IDX = {name: i for i, name in enumerate(VARIABLES)}

COND_LIMIT = 1e12


class SolveError(RuntimeError):
    pass


@dataclass(frozen=True)
class SidebandSystem:
    matrix: np.ndarray  # 12x12 complex
    rhs: np.ndarray  # 12 complex, probe amplitude in the a row only
    delta: float


@dataclass(frozen=True)
class ValidationReport:
    grid: np.ndarray
    rel_err: np.ndarray  # nan where a point was flagged
    flagged: np.ndarray  # bool, pole or solver failure
    max_rel_err: float
    argmax_delta: float


def _drift_matrix(model: LinearizedModel) -> np.ndarray:
    """Jacobian of the linearized fluctuation dynamics (no probe drive)."""
    m = model
    J = np.zeros((12, 12), dtype=complex)

    def at(row, col, value):
        J[_IDX[row], _IDX[col]] = value

    # cavity and its conjugate; the membrane displacement couples via the
    # effective rate G_aa with the real-magnitude steady-phase convention
    at("a", "a", -(m.kappa_a + 1j * m.Delta_a_eff))
    at("a", "m1", -1j * m.g_1)
    at("a", "m2", -1j * m.g_2)
    at("a", "q3", m.G_aa)
    at("a_dag", "a_dag", -(m.kappa_a - 1j * m.Delta_a_eff))
    at("a_dag", "m1_dag", 1j * m.g_1)
    at("a_dag", "m2_dag", 1j * m.g_2)
    at("a_dag", "q3", m.G_aa)

    for r, (kappa, Delta, g, G) in enumerate(
            ((m.kappa_m1, m.Delta_m1_eff, m.g_1, m.G_11),
             (m.kappa_m2, m.Delta_m2_eff, m.g_2, m.G_22)), start=1):
        at(f"m{r}", f"m{r}", -(kappa + 1j * Delta))
        at(f"m{r}", "a", -1j * g)
        at(f"m{r}", f"q{r}", -G)
        at(f"m{r}_dag", f"m{r}_dag", -(kappa - 1j * Delta))
        at(f"m{r}_dag", "a_dag", 1j * g)
        at(f"m{r}_dag", f"q{r}", -G)

    for r, (omega, gamma) in enumerate(((m.omega_b1, m.gamma_1),
                                        (m.omega_b2, m.gamma_2),
                                        (m.omega_b3, m.gamma_3)), start=1):
        at(f"q{r}", f"p{r}", omega)
        at(f"p{r}", f"q{r}", -omega)
        at(f"p{r}", f"p{r}", -gamma)

    # magnetostrictive force on the sphere phonons
    at("p1", "m1", -1j * m.G_11)
    at("p1", "m1_dag", 1j * m.G_11)
    at("p2", "m2", -1j * m.G_22)
    at("p2", "m2_dag", 1j * m.G_22)
    # radiation-pressure-type force on the membrane
    at("p3", "a", 1j * m.G_aa)
    at("p3", "a_dag", -1j * m.G_aa)
    return J


def assemble_sideband_matrix(model: LinearizedModel, delta: float,
                             eps_p: float = 1.0) -> SidebandSystem:
    """System M v = rhs for the e^{-i delta t} fluctuation components.

    Substituting v(t) = v_- e^{-i delta t} into dv/dt = J v + s e^{-i delta t}
    gives (-J - i delta I) v_- = s.
    """
    J = _drift_matrix(model)
    matrix = -J - 1j * delta * np.eye(12)
    rhs = np.zeros(12, dtype=complex)
    rhs[_IDX["a"]] = eps_p
    return SidebandSystem(matrix=matrix, rhs=rhs, delta=delta)


def solve_probe_response(system: SidebandSystem) -> np.ndarray:
    """Solve for all twelve sideband components; index 0 is a_-/eps_p."""
    cond = np.linalg.cond(system.matrix)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SolveError(
            f"ill-conditioned sideband system at delta = {system.delta!r}"
            f" (condition estimate {cond:.3e})")
    solution = np.linalg.solve(system.matrix, system.rhs)
    residual = np.linalg.norm(system.matrix @ solution - system.rhs)
    if residual > 1e-10 * np.linalg.norm(system.rhs):
        raise SolveError(
            f"solution residual {residual:.3e} too large at"
            f" delta = {system.delta!r}")
    return solution


def oracle_amplitude(model: LinearizedModel, delta: float) -> complex:
    """a_-/eps_p from the direct linear solve."""
    system = assemble_sideband_matrix(model, delta)
    return complex(solve_probe_response(system)[_IDX["a"]])


def cross_validate(model: LinearizedModel, grid) -> ValidationReport:
    """Relative disagreement of the chain against the direct solve."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    rel_err = np.full(grid.shape, np.nan)
    flagged = np.zeros(grid.shape, dtype=bool)
    for i, delta in enumerate(grid):
        try:
            chain = probe_sideband_amplitude(model, float(delta))
            ref = oracle_amplitude(model, float(delta))
        except (PoleError, SolveError):
            flagged[i] = True
            continue
        rel_err[i] = abs(chain - ref) / abs(ref)
    if np.all(flagged):
        raise SolveError("every grid point was flagged")
    imax = int(np.nanargmax(rel_err))
    return ValidationReport(grid=grid, rel_err=rel_err, flagged=flagged,
                            max_rel_err=float(rel_err[imax]),
                            argmax_delta=float(grid[imax]))
