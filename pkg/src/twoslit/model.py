"""Domain types: atom geometry, slits, orbit spin register, histograms."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

N_BINS = 180
BIN_LO = -90  # left edge (degrees) of the first screen bin


class Spin(enum.IntEnum):
    SPIN1 = 1
    SPIN2 = 2

    def other(self) -> "Spin":
        return Spin.SPIN2 if self is Spin.SPIN1 else Spin.SPIN1


class SlitTag(enum.IntEnum):
    SLIT1 = 1
    SLIT2 = 2


class SpinPattern(str, enum.Enum):
    ALTERNATING = "alternating"
    ALL_SPIN1 = "all1"
    ALL_SPIN2 = "all2"


class Context(str, enum.Enum):
    """Experimental protocol governing emission and slit gating."""

    S1_ONLY = "s1"
    S2_ONLY = "s2"
    BOTH_RANDOM = "both"
    SEQUENTIAL_HALVES = "sequential"

    @property
    def open_slits(self) -> frozenset[SlitTag]:
        if self is Context.S1_ONLY:
            return frozenset({SlitTag.SLIT1})
        if self is Context.S2_ONLY:
            return frozenset({SlitTag.SLIT2})
        return frozenset({SlitTag.SLIT1, SlitTag.SLIT2})


@dataclass(frozen=True)
class ModelParams:
    """Geometry of the source, slits, atom and screen.

    Slit apertures are ``(lo, hi)`` pairs. The slit-1 aperture is tested
    first and is closed at both ends; the slit-2 aperture is ``[lo, hi)``.
    With the default halves this sends the ordinate 0 to slit 1.
    ``None`` selects the default upper/lower half of ``[-R, R]``.
    """

    atom_radius: float = 1.0
    n_orbits: int = 10
    slit1_aperture: tuple[float, float] | None = None
    slit2_aperture: tuple[float, float] | None = None
    initial_spin_pattern: SpinPattern = SpinPattern.ALTERNATING

    def __post_init__(self):
        if not (math.isfinite(self.atom_radius) and self.atom_radius > 0):
            raise ValueError(f"atom_radius must be positive, got {self.atom_radius}")
        if isinstance(self.n_orbits, bool) or int(self.n_orbits) != self.n_orbits or self.n_orbits < 1:
            raise ValueError(f"n_orbits must be a positive integer, got {self.n_orbits}")
        object.__setattr__(self, "n_orbits", int(self.n_orbits))
        object.__setattr__(self, "initial_spin_pattern", SpinPattern(self.initial_spin_pattern))
        R = float(self.atom_radius)
        object.__setattr__(self, "atom_radius", R)
        a1 = (0.0, R) if self.slit1_aperture is None else tuple(map(float, self.slit1_aperture))
        a2 = (-R, 0.0) if self.slit2_aperture is None else tuple(map(float, self.slit2_aperture))
        for name, (lo, hi) in (("slit1_aperture", a1), ("slit2_aperture", a2)):
            if not (-R <= lo < hi <= R):
                raise ValueError(f"{name} {lo, hi} must be a nonempty interval inside [-R, R]")
        # slit 1 is closed, slit 2 half-open on the right
        if a1[0] < a2[1] and a2[0] <= a1[1]:
            raise ValueError(f"slit apertures overlap: {a1} and {a2}")
        object.__setattr__(self, "slit1_aperture", a1)
        object.__setattr__(self, "slit2_aperture", a2)

    @property
    def orbit_spacing(self) -> float:
        return self.atom_radius / self.n_orbits

    @property
    def screen_bins(self) -> int:
        return N_BINS

    def orbit_radius(self, k: int) -> float:
        return k * self.orbit_spacing

    def orbit_radii(self) -> np.ndarray:
        return np.arange(1, self.n_orbits + 1) * self.orbit_spacing

    def slit_of(self, ordinate: float) -> SlitTag | None:
        """Slit whose aperture contains ``ordinate``, or None."""
        lo, hi = self.slit1_aperture
        if lo <= ordinate <= hi:
            return SlitTag.SLIT1
        lo, hi = self.slit2_aperture
        if lo <= ordinate < hi:
            return SlitTag.SLIT2
        return None

    def to_dict(self) -> dict:
        return {
            "atom_radius": self.atom_radius,
            "n_orbits": self.n_orbits,
            "slit1_aperture": list(self.slit1_aperture),
            "slit2_aperture": list(self.slit2_aperture),
            "initial_spin_pattern": self.initial_spin_pattern.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelParams":
        return cls(
            atom_radius=d["atom_radius"],
            n_orbits=d["n_orbits"],
            slit1_aperture=tuple(d["slit1_aperture"]),
            slit2_aperture=tuple(d["slit2_aperture"]),
            initial_spin_pattern=SpinPattern(d["initial_spin_pattern"]),
        )


@dataclass
class OrbitRegister:
    """Per-orbit spins with flip counters. Orbits are indexed from 1."""

    spins: list[Spin]
    flip_count: list[int] = field(default=None)
    initial: list[Spin] = field(default=None, repr=False)

    def __post_init__(self):
        self.spins = [Spin(s) for s in self.spins]
        if self.flip_count is None:
            self.flip_count = [0] * len(self.spins)
        if self.initial is None:
            self.initial = list(self.spins)

    def __len__(self) -> int:
        return len(self.spins)

    def __getitem__(self, k: int) -> Spin:
        self._check(k)
        return self.spins[k - 1]

    def _check(self, k: int) -> None:
        if not 1 <= k <= len(self.spins):
            raise IndexError(f"orbit index {k} outside 1..{len(self.spins)}")

    def flip(self, k: int) -> "OrbitRegister":
        self._check(k)
        self.spins[k - 1] = self.spins[k - 1].other()
        self.flip_count[k - 1] += 1
        return self

    def copy(self) -> "OrbitRegister":
        return OrbitRegister(list(self.spins), list(self.flip_count), list(self.initial))

    def parity_consistent(self) -> bool:
        return all(
            s == (i if c % 2 == 0 else i.other())
            for s, c, i in zip(self.spins, self.flip_count, self.initial)
        )

    def to_dict(self) -> dict:
        return {
            "initial": [int(s) for s in self.initial],
            "spins": [int(s) for s in self.spins],
            "flip_count": list(self.flip_count),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OrbitRegister":
        return cls(
            [Spin(s) for s in d["spins"]],
            [int(c) for c in d["flip_count"]],
            [Spin(s) for s in d["initial"]],
        )

    def __eq__(self, other):
        if not isinstance(other, OrbitRegister):
            return NotImplemented
        return (
            self.spins == other.spins
            and self.flip_count == other.flip_count
            and self.initial == other.initial
        )


def init_register(params: ModelParams) -> OrbitRegister:
    n = params.n_orbits
    pattern = params.initial_spin_pattern
    if pattern is SpinPattern.ALL_SPIN1:
        spins = [Spin.SPIN1] * n
    elif pattern is SpinPattern.ALL_SPIN2:
        spins = [Spin.SPIN2] * n
    else:
        spins = [Spin.SPIN1 if k % 2 == 1 else Spin.SPIN2 for k in range(1, n + 1)]
    return OrbitRegister(spins)


def flip(register: OrbitRegister, k: int) -> OrbitRegister:
    return register.flip(k)


def nearest_orbit(rho: float, params: ModelParams) -> tuple[int, float]:
    """Index of the orbit closest to radial ordinate ``rho`` and the distance.

    Ties go to the smaller index; ``rho`` beyond the outermost orbit maps
    to orbit ``n_orbits``.
    """
    if rho < 0:
        raise ValueError(f"radial ordinate must be >= 0, got {rho}")
    h = params.orbit_spacing
    n = params.n_orbits
    # candidates around rho/h; exact comparison keeps the tie-break honest
    guess = int(math.floor(rho / h))
    best_k, best_d = 0, math.inf
    for k in range(max(1, guess - 1), min(n, guess + 2) + 1):
        d = abs(rho - k * h)
        if d < best_d:
            best_k, best_d = k, d
    if best_k == 0:
        best_k, best_d = n, abs(rho - n * h)
    return best_k, best_d


def nearest_orbit_array(rho: np.ndarray, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`nearest_orbit` with the same tie-break."""
    h = params.orbit_spacing
    n = params.n_orbits
    rho = np.asarray(rho, dtype=float)
    lower = np.clip(np.floor(rho / h), 1, n).astype(np.int64)
    best_k = lower.copy()
    best_d = np.abs(rho - lower * h)
    for shift in (-1, 1):
        k = np.clip(lower + shift, 1, n)
        d = np.abs(rho - k * h)
        better = (d < best_d) | ((d == best_d) & (k < best_k))
        best_k = np.where(better, k, best_k)
        best_d = np.where(better, d, best_d)
    return best_k, best_d


@dataclass
class Histogram:
    """Counts per 1-degree screen bin; ``bins[i]`` covers ``[i-90, i-89)`` degrees."""

    bins: np.ndarray
    tag: str

    def __post_init__(self):
        self.bins = np.asarray(self.bins, dtype=np.int64)
        if self.bins.shape != (N_BINS,):
            raise ValueError(f"histogram needs {N_BINS} bins, got shape {self.bins.shape}")
        if (self.bins < 0).any():
            raise ValueError("histogram counts must be nonnegative")

    @property
    def total(self) -> int:
        return int(self.bins.sum())

    @staticmethod
    def edges() -> np.ndarray:
        return np.arange(BIN_LO, BIN_LO + N_BINS)

    def count(self, b: int) -> int:
        return int(self.bins[b - BIN_LO])

    def __eq__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        return self.tag == other.tag and np.array_equal(self.bins, other.bins)


@dataclass
class ParticleRecord:
    emission_ordinate: float
    slit_tag: SlitTag | None  # None means blocked
    scatter_sign: int
    displaced: bool = False
    displacement_before: float = 0.0
    displacement_after: float = 0.0
    nearest_orbit: int | None = None
    final_ordinate: float | None = None
    angle: float | None = None
    screen_bin: int | None = None

    @property
    def blocked(self) -> bool:
        return self.slit_tag is None
