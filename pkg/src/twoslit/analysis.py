"""Scalar summaries of screen histograms and the cross-context report."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .model import BIN_LO, Context, Histogram

FRINGE_WINDOW = 15
CENTRAL_DEG = 60


def _counts(h) -> np.ndarray:
    bins = h.bins if isinstance(h, Histogram) else np.asarray(h)
    bins = np.asarray(bins, dtype=float)
    if bins.sum() <= 0:
        raise ValueError("histogram has zero total count")
    return bins


def tv_distance(h1, h2) -> float:
    """Total variation distance between two histograms after normalisation."""
    p, q = _counts(h1), _counts(h2)
    if p.shape != q.shape:
        raise ValueError(f"histogram shapes differ: {p.shape} vs {q.shape}")
    return float(0.5 * np.abs(p / p.sum() - q / q.sum()).sum())


def mirror(h):
    """Reflect a screen histogram about 0 degrees.

    Bin ``b`` covers ``[b, b+1)`` degrees, so its mirror image is bin
    ``-b-1``; on the array that is a plain reversal.
    """
    if isinstance(h, Histogram):
        return Histogram(h.bins[::-1].copy(), h.tag)
    return np.asarray(h)[::-1].copy()


def symmetry_defect(h) -> float:
    return tv_distance(h, mirror(h))


def moving_average(x: np.ndarray, window: int = FRINGE_WINDOW) -> np.ndarray:
    """Centred running mean; near the ends the window is cut short."""
    half = window // 2
    c = np.concatenate(([0.0], np.cumsum(x, dtype=float)))
    i = np.arange(x.size)
    lo = np.maximum(i - half, 0)
    hi = np.minimum(i + half + 1, x.size)
    return (c[hi] - c[lo]) / (hi - lo)


def fringe_score(h, window: int = FRINGE_WINDOW, central_deg: int = CENTRAL_DEG) -> float:
    """Relative ripple of the histogram around its own moving average.

    Only bins whose centres lie in ``[-central_deg, central_deg]`` take part,
    which keeps out the grazing bins where clamped rays pile up.
    """
    bins = _counts(h)
    lo = -central_deg - BIN_LO
    c = bins[lo : lo + 2 * central_deg]
    m = moving_average(c, window)
    denom = m.sum()
    if denom <= 0:
        raise ValueError("no counts in the central region")
    return float(np.abs(c - m).sum() / denom)


@dataclass(frozen=True)
class Thresholds:
    """Pass/fail limits for :func:`contextual_report`.

    The single-slit fringe limit and the contextual-shift floor were
    calibrated on seed 42 with the default geometry and 200000 particles,
    then widened by a factor of two: the one-slit fringe score was 0.0321,
    and two one-slit runs (seeds 42, 43) differed by a TV distance of 0.0258.
    """

    single_slit_fringe_max: float = 0.0642
    fringe_ratio_min: float = 3.0
    slit_tv_max: float = 0.05
    context_shift_min: float = 0.0517
    displaced_fraction_band: tuple[float, float] = (0.49, 0.51)
    symmetry_max: float = 0.05


@dataclass
class AnalysisReport:
    fringe_scores: dict[str, float]
    tv_distances: dict[str, float]
    symmetry_defects: dict[str, float]
    displaced_fractions: dict[str, float]
    verdicts: dict[str, bool]
    thresholds: Thresholds = field(default_factory=Thresholds)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["thresholds"]["displaced_fraction_band"] = list(self.thresholds.displaced_fraction_band)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        t = dict(d["thresholds"])
        t["displaced_fraction_band"] = tuple(t["displaced_fraction_band"])
        return cls(
            fringe_scores=dict(d["fringe_scores"]),
            tv_distances=dict(d["tv_distances"]),
            symmetry_defects=dict(d["symmetry_defects"]),
            displaced_fractions=dict(d["displaced_fractions"]),
            verdicts=dict(d["verdicts"]),
            thresholds=Thresholds(**t),
        )


def contextual_report(rec_s1, rec_s2, rec_s12, thresholds: Thresholds | None = None) -> AnalysisReport:
    """Compare the one-slit runs against the both-slits run.

    The key number is ``slit1_both_vs_s1_total``: how far the slit-1
    population moves when slit 2 is opened. It is set against
    ``slit1_vs_slit2_both``, the difference between the two slit
    populations inside the same both-slits run.
    """
    t = thresholds or Thresholds()
    expected = {"s1": Context.S1_ONLY, "s2": Context.S2_ONLY, "both": Context.BOTH_RANDOM}
    recs = {"s1": rec_s1, "s2": rec_s2, "both": rec_s12}
    for name, rec in recs.items():
        if rec.context is not expected[name]:
            raise ValueError(f"{name} record has context {rec.context.value!r}")
    if not (rec_s1.params == rec_s2.params == rec_s12.params):
        raise ValueError("records were produced with different model parameters")
    if not (rec_s1.n_emitted == rec_s2.n_emitted == rec_s12.n_emitted):
        raise ValueError("records were produced with different particle counts")

    fringes = {name: fringe_score(rec.total) for name, rec in recs.items()}
    tvs = {
        "slit1_both_vs_s1_total": tv_distance(rec_s12.slit1, rec_s1.total),
        "slit2_both_vs_s2_total": tv_distance(rec_s12.slit2, rec_s2.total),
        "slit1_vs_slit2_both": tv_distance(rec_s12.slit1, rec_s12.slit2),
    }
    sym = {name: symmetry_defect(rec.total) for name, rec in recs.items()}
    frac = {name: rec.displaced_fraction for name, rec in recs.items()}

    lo, hi = t.displaced_fraction_band
    single_max = max(fringes["s1"], fringes["s2"])
    verdicts = {
        "additivity": all(
            np.array_equal(r.slit1.bins + r.slit2.bins, r.total.bins) for r in recs.values()
        ),
        "one_slit_per_particle": all(
            r.slit1.total + r.slit2.total == r.n_registered for r in recs.values()
        ),
        "single_slit_smooth": single_max <= t.single_slit_fringe_max,
        "both_slits_fringed": fringes["both"] >= t.fringe_ratio_min * single_max,
        "slits_alike_in_both": tvs["slit1_vs_slit2_both"] < t.slit_tv_max,
        "context_shift": (
            tvs["slit1_both_vs_s1_total"] > tvs["slit1_vs_slit2_both"]
            and tvs["slit1_both_vs_s1_total"] > t.context_shift_min
        ),
        "displaced_fraction": lo <= frac["both"] <= hi,
        "symmetric": all(v < t.symmetry_max for v in sym.values()),
    }
    return AnalysisReport(fringes, tvs, sym, frac, verdicts, t)
