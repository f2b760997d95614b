"""Seeded runs of the experiment in each context."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dynamics
from .model import (
    BIN_LO,
    N_BINS,
    Context,
    Histogram,
    ModelParams,
    OrbitRegister,
    ParticleRecord,
    SlitTag,
    Spin,
    init_register,
    nearest_orbit,
    nearest_orbit_array,
)
from .numerics import DEFAULT_SETTINGS, SolverSettings, solve_displacement_array

DEFAULT_PARTICLES = 200_000
DEFAULT_SEED = 42

# Both streams are PCG64 generators seeded from SeedSequence(seed).spawn(2):
# child 0 drives emission ordinates, child 1 the scattering sign. Every draw
# is one 53-bit double, so bulk and one-at-a-time consumption agree.
PRNG_ID = "numpy.random.PCG64; SeedSequence(seed).spawn(2) -> [position, sign]; Generator.random doubles"


class RngStreams:
    """Independent position and sign streams derived from one 64-bit seed."""

    def __init__(self, seed: int):
        seed = _check_seed(seed)
        self.seed = seed
        pos_ss, sign_ss = np.random.SeedSequence(seed).spawn(2)
        self.position = np.random.Generator(np.random.PCG64(pos_ss))
        self.sign = np.random.Generator(np.random.PCG64(sign_ss))

    def uniforms(self, n: int) -> np.ndarray:
        return self.position.random(n)

    def signs(self, n: int) -> np.ndarray:
        return np.where(self.sign.random(n) < 0.5, 1, -1).astype(np.int64)


def _check_seed(seed) -> int:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= int(seed) < 2**64:
        raise ValueError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return int(seed)


def _ordinates(u: np.ndarray, context: Context, phase: int, params: ModelParams) -> np.ndarray:
    if context is Context.SEQUENTIAL_HALVES:
        if phase == 1:
            lo, hi = params.slit1_aperture
            return hi - (hi - lo) * u  # (lo, hi]
        lo, hi = params.slit2_aperture
        return lo + (hi - lo) * u  # [lo, hi)
    R = params.atom_radius
    return R * (2.0 * u - 1.0)


def _gate(y: float, context: Context, params: ModelParams) -> SlitTag | None:
    tag = params.slit_of(y)
    if tag is None or tag not in context.open_slits:
        return None
    return tag


def emit(streams: RngStreams, context: Context, phase: int, params: ModelParams) -> tuple[float, SlitTag | None]:
    """Draw one emission ordinate and its slit tag (None when blocked)."""
    u = streams.uniforms(1)
    y = float(_ordinates(u, context, phase, params)[0])
    if context is Context.SEQUENTIAL_HALVES:
        if phase not in (1, 2):
            raise ValueError(f"sequential phase must be 1 or 2, got {phase}")
        return y, SlitTag.SLIT1 if phase == 1 else SlitTag.SLIT2
    return y, _gate(y, context, params)


@dataclass
class RunRecord:
    params: ModelParams
    context: Context
    seed: int
    n_emitted: int
    n_blocked: int
    n_registered: int
    n_displaced: int
    slit1: Histogram
    slit2: Histogram
    total: Histogram
    final_register: OrbitRegister
    prng: str = PRNG_ID

    @property
    def histograms(self) -> dict[str, Histogram]:
        return {"slit1": self.slit1, "slit2": self.slit2, "total": self.total}

    @property
    def displaced_fraction(self) -> float:
        return self.n_displaced / self.n_registered if self.n_registered else 0.0

    def check_invariants(self) -> None:
        assert self.n_emitted == self.n_blocked + self.n_registered
        assert self.n_registered == self.total.total
        assert self.n_displaced <= self.n_registered
        assert np.array_equal(self.slit1.bins + self.slit2.bins, self.total.bins)
        assert self.n_displaced == sum(self.final_register.flip_count)


def _phase_sizes(context: Context, n: int) -> list[tuple[int, int]]:
    if context is Context.SEQUENTIAL_HALVES:
        first = (n + 1) // 2
        return [(1, first), (2, n - first)]
    return [(1, n)]


def _check_n(n_particles) -> int:
    if isinstance(n_particles, bool) or int(n_particles) != n_particles or n_particles < 0:
        raise ValueError(f"n_particles must be a nonnegative integer, got {n_particles!r}")
    return int(n_particles)


def run(
    params: ModelParams,
    context: Context,
    n_particles: int = DEFAULT_PARTICLES,
    seed: int = DEFAULT_SEED,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> RunRecord:
    """Simulate ``n_particles`` emissions in order and histogram the screen hits.

    The register update is order dependent, but it has a closed form per
    orbit: whatever happens to a particle at orbit ``k``, the spin of ``k``
    afterwards is the opposite of that particle's slit name. A particle is
    therefore displaced iff its slit differs from the previous particle's
    slit at the same orbit (or equals the initial spin if it is the first).
    That lets the whole run be computed with array operations; the
    particle-by-particle loop lives in :func:`run_reference`.
    """
    context = Context(context)
    n = _check_n(n_particles)
    streams = RngStreams(seed)
    R = params.atom_radius

    ys, tags = [], []
    for phase, size in _phase_sizes(context, n):
        y = _ordinates(streams.uniforms(size), context, phase, params)
        if context is Context.SEQUENTIAL_HALVES:
            tag = np.full(size, phase, dtype=np.int64)
        else:
            lo1, hi1 = params.slit1_aperture
            lo2, hi2 = params.slit2_aperture
            tag = np.where((lo1 <= y) & (y <= hi1), 1, np.where((lo2 <= y) & (y < hi2), 2, 0))
            for slit in (SlitTag.SLIT1, SlitTag.SLIT2):
                if slit not in context.open_slits:
                    tag = np.where(tag == int(slit), 0, tag)
        ys.append(y)
        tags.append(tag)
    y = np.concatenate(ys) if ys else np.empty(0)
    tag = np.concatenate(tags).astype(np.int64) if tags else np.empty(0, dtype=np.int64)
    sign = streams.signs(n)

    keep = tag != 0
    y, tag, sign = y[keep], tag[keep], sign[keep]
    m = y.size

    register = init_register(params)
    k, dist = nearest_orbit_array(np.abs(y), params)
    initial = np.array([0] + [int(s) for s in register.initial], dtype=np.int64)

    order = np.argsort(k, kind="stable")
    k_sorted, tag_sorted = k[order], tag[order]
    first = np.ones(m, dtype=bool)
    first[1:] = k_sorted[1:] != k_sorted[:-1]
    spin_before = np.empty(m, dtype=np.int64)
    spin_before[first] = initial[k_sorted[first]]
    spin_before[~first] = 3 - tag_sorted[:-1][~first[1:]]
    displaced_sorted = tag_sorted == spin_before
    displaced = np.empty(m, dtype=bool)
    displaced[order] = displaced_sorted

    flips = np.bincount(k[displaced], minlength=params.n_orbits + 1)[1:]
    last = np.ones(m, dtype=bool)
    last[:-1] = k_sorted[1:] != k_sorted[:-1]
    spins = [int(s) for s in register.initial]
    for kk, t in zip(k_sorted[last], tag_sorted[last]):
        spins[kk - 1] = 3 - int(t)
    final = OrbitRegister([Spin(s) for s in spins], [int(c) for c in flips], list(register.initial))

    unit = np.pi * params.orbit_spacing
    d_new = solve_displacement_array(dist[displaced] / unit, settings) * unit
    rho = np.abs(y[displaced])
    r_k = k[displaced] * params.orbit_spacing
    rho_new = np.where(rho < r_k, r_k - d_new, r_k + d_new)
    y_final = y.copy()
    y_final[displaced] = np.copysign(rho_new, y[displaced])

    angle = sign * np.arcsin(np.clip(y_final / R, -1.0, 1.0))
    b = dynamics.register_on_screen_array(angle)
    return _record(params, context, seed, n, b, tag, int(displaced.sum()), final)


def _record(params, context, seed, n, bins_hit, tag, n_displaced, register) -> RunRecord:
    idx = np.asarray(bins_hit, dtype=np.int64) - BIN_LO
    tag = np.asarray(tag, dtype=np.int64)
    h1 = np.bincount(idx[tag == 1], minlength=N_BINS)
    h2 = np.bincount(idx[tag == 2], minlength=N_BINS)
    n_registered = int(tag.size)
    return RunRecord(
        params=params,
        context=context,
        seed=int(seed),
        n_emitted=n,
        n_blocked=n - n_registered,
        n_registered=n_registered,
        n_displaced=n_displaced,
        slit1=Histogram(h1, "slit1"),
        slit2=Histogram(h2, "slit2"),
        total=Histogram(h1 + h2, "total"),
        final_register=register,
    )


def run_reference(
    params: ModelParams,
    context: Context,
    n_particles: int,
    seed: int,
    settings: SolverSettings = DEFAULT_SETTINGS,
    trace: list | None = None,
) -> RunRecord:
    """Particle-by-particle run; slow, but follows the rules literally.

    If ``trace`` is a list, one :class:`ParticleRecord` per emission is
    appended to it, together with the register state each particle saw.
    """
    context = Context(context)
    n = _check_n(n_particles)
    streams = RngStreams(seed)
    register = init_register(params)
    emitted = []
    for phase, size in _phase_sizes(context, n):
        for _ in range(size):
            emitted.append(emit(streams, context, phase, params))
    # signs come from their own stream, one per emission, blocked or not
    signs = [int(s) for s in streams.signs(n)]

    bins_hit, tags, n_displaced = [], [], 0
    for (y0, tag), sign in zip(emitted, signs):
        rec = ParticleRecord(emission_ordinate=y0, slit_tag=tag, scatter_sign=sign)
        if tag is not None:
            k, dist = nearest_orbit(abs(y0), params)
            spin_seen = register[k]
            y1, hit = dynamics.apply_interference(y0, tag, register, params, settings)
            angle = dynamics.scatter(y1, sign, params)
            b = dynamics.register_on_screen(angle)
            rec.displaced = hit
            rec.nearest_orbit = k
            rec.displacement_before = dist
            rec.displacement_after = abs(abs(y1) - params.orbit_radius(k)) if hit else dist
            rec.final_ordinate = y1
            rec.angle = angle
            rec.screen_bin = b
            n_displaced += hit
            bins_hit.append(b)
            tags.append(int(tag))
            if trace is not None:
                trace.append((rec, spin_seen))
        elif trace is not None:
            trace.append((rec, None))
    return _record(params, context, seed, n, bins_hit, tags, n_displaced, register)


def replay_check(record: RunRecord) -> bool:
    """Re-run ``record``'s configuration and compare every counter and bin."""
    again = run(record.params, record.context, record.n_emitted, record.seed)
    return again == record and record.prng == PRNG_ID
