"""``key=value`` run configuration."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .experiment import DEFAULT_PARTICLES, DEFAULT_SEED
from .model import Context, ModelParams, SpinPattern


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams = field(default_factory=ModelParams)
    context: Context = Context.BOTH_RANDOM
    particles: int = DEFAULT_PARTICLES
    seed: int = DEFAULT_SEED
    csv: Path | None = None
    json: Path | None = None
    svg: Path | None = None


def _float(key, v):
    try:
        return float(v)
    except ValueError:
        raise ConfigError(key, f"not a number: {v!r}") from None


def _int(key, v):
    try:
        return int(v)
    except ValueError:
        raise ConfigError(key, f"not an integer: {v!r}") from None


def _interval(key, v):
    parts = [p for p in str(v).split(",")]
    if len(parts) != 2:
        raise ConfigError(key, f"expected 'lo,hi', got {v!r}")
    return (_float(key, parts[0]), _float(key, parts[1]))


KEYS = (
    "atom_radius",
    "n_orbits",
    "slit1_aperture",
    "slit2_aperture",
    "spins",
    "context",
    "particles",
    "seed",
    "csv",
    "json",
    "svg",
)


def read_pairs(text: str) -> dict[str, str]:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def parse_config(pairs: dict[str, str] | str | None = None, file: str | Path | None = None) -> RunConfig:
    """Build a RunConfig from a config file and/or explicit pairs.

    ``pairs`` may be a dict or a whitespace-separated ``key=value`` string;
    its entries override the file's.
    """
    merged: dict[str, str] = {}
    if file is not None:
        merged.update(read_pairs(Path(file).read_text(encoding="utf-8")))
    if isinstance(pairs, str):
        merged.update(read_pairs("\n".join(pairs.split())))
    elif pairs:
        merged.update({k: v for k, v in pairs.items() if v is not None})

    unknown = sorted(set(merged) - set(KEYS))
    if unknown:
        raise ConfigError(unknown[0], "unknown key")

    pkw = {}
    if "atom_radius" in merged:
        pkw["atom_radius"] = _float("atom_radius", merged["atom_radius"])
    if "n_orbits" in merged:
        pkw["n_orbits"] = _int("n_orbits", merged["n_orbits"])
        if pkw["n_orbits"] < 1:
            raise ConfigError("n_orbits", "must be >= 1")
    for key in ("slit1_aperture", "slit2_aperture"):
        if key in merged and merged[key] not in ("", "default"):
            pkw[key] = _interval(key, merged[key])
    if "spins" in merged:
        try:
            pkw["initial_spin_pattern"] = SpinPattern(merged["spins"])
        except ValueError:
            raise ConfigError("spins", f"expected one of {[p.value for p in SpinPattern]}") from None
    try:
        params = ModelParams(**pkw)
    except ValueError as e:
        raise ConfigError(next(iter(pkw), "params"), str(e)) from None

    kw = {"params": params}
    if "context" in merged:
        try:
            kw["context"] = Context(merged["context"])
        except ValueError:
            raise ConfigError("context", f"unknown context {merged['context']!r}") from None
    if "particles" in merged:
        kw["particles"] = _int("particles", merged["particles"])
        if kw["particles"] < 1:
            raise ConfigError("particles", "must be a positive integer")
    if "seed" in merged:
        kw["seed"] = _int("seed", merged["seed"])
        if not 0 <= kw["seed"] < 2**64:
            raise ConfigError("seed", "must fit in an unsigned 64-bit integer")
    for key in ("csv", "json", "svg"):
        if merged.get(key):
            kw[key] = Path(merged[key])
    return RunConfig(**kw)


def render_config(cfg: RunConfig) -> str:
    p = cfg.params
    lines = [
        f"atom_radius={p.atom_radius!r}",
        f"n_orbits={p.n_orbits}",
        f"slit1_aperture={p.slit1_aperture[0]!r},{p.slit1_aperture[1]!r}",
        f"slit2_aperture={p.slit2_aperture[0]!r},{p.slit2_aperture[1]!r}",
        f"spins={p.initial_spin_pattern.value}",
        f"context={cfg.context.value}",
        f"particles={cfg.particles}",
        f"seed={cfg.seed}",
    ]
    for key in ("csv", "json", "svg"):
        if getattr(cfg, key) is not None:
            lines.append(f"{key}={getattr(cfg, key)}")
    return "\n".join(lines) + "\n"
