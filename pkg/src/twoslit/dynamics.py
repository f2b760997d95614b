"""What happens to one particle at the atom: interference, scattering, detection."""
from __future__ import annotations

import math

import numpy as np

from .model import BIN_LO, N_BINS, ModelParams, OrbitRegister, SlitTag, nearest_orbit
from .numerics import DEFAULT_SETTINGS, SolverSettings, arcsin_clamped, solve_displacement


def apply_interference(
    y_at_atom: float,
    slit: SlitTag,
    register: OrbitRegister,
    params: ModelParams,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> tuple[float, bool]:
    """Displace the particle toward its nearest orbit if the orbit's spin
    carries the name of the particle's slit, flipping that spin.

    Returns the new ordinate and whether a displacement event happened.
    The register is mutated in place.
    """
    rho = abs(y_at_atom)
    k, dist = nearest_orbit(rho, params)
    if int(register[k]) != int(slit):
        return y_at_atom, False
    register.flip(k)
    unit = math.pi * params.orbit_spacing
    d_new = solve_displacement(dist / unit, settings) * unit
    r_k = params.orbit_radius(k)
    rho_new = r_k - d_new if rho < r_k else r_k + d_new
    return math.copysign(rho_new, y_at_atom), True


def scatter(y_final: float, sign: int, params: ModelParams) -> float:
    if sign not in (1, -1):
        raise ValueError(f"scatter sign must be +1 or -1, got {sign}")
    return sign * arcsin_clamped(y_final / params.atom_radius)


def register_on_screen(angle: float) -> int:
    """1-degree screen bin (left edge, degrees) hit by a ray at ``angle``."""
    if not (-math.pi / 2 <= angle <= math.pi / 2):
        raise ValueError(f"angle {angle} outside [-pi/2, pi/2]")
    b = math.floor(math.degrees(angle))
    return min(max(b, BIN_LO), BIN_LO + N_BINS - 1)


def register_on_screen_array(angle: np.ndarray) -> np.ndarray:
    angle = np.asarray(angle, dtype=float)
    if np.any(np.abs(angle) > np.pi / 2):
        raise ValueError("angles outside [-pi/2, pi/2]")
    b = np.floor(np.degrees(angle)).astype(np.int64)
    return np.clip(b, BIN_LO, BIN_LO + N_BINS - 1)
