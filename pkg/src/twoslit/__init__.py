"""Monte Carlo simulator of a contextual two-slit toy model.

Particles pass one of two slits, interact with an atom whose orbits carry
two-valued spins, scatter, and land on a screen. Every particle keeps its
slit label, yet the both-slits histogram shows fringes that neither
single-slit histogram has.
"""
from .model import (
    Context,
    Histogram,
    ModelParams,
    OrbitRegister,
    ParticleRecord,
    SlitTag,
    Spin,
    SpinPattern,
    flip,
    init_register,
    nearest_orbit,
)
from .numerics import SolverError, SolverSettings, arcsin_clamped, solve_displacement
from .dynamics import apply_interference, register_on_screen, scatter
from .experiment import RngStreams, RunRecord, emit, replay_check, run, run_reference

__version__ = "0.1.0"
