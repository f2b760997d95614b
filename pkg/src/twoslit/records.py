"""CSV and JSON persistence of run records."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .analysis import AnalysisReport
from .experiment import RunRecord
from .model import BIN_LO, N_BINS, Context, Histogram, ModelParams, OrbitRegister

CSV_HEADER = "angle_deg,slit1,slit2,total"
JSON_FORMAT = "twoslit-run"
JSON_VERSION = 1


def csv_text(record: RunRecord) -> str:
    rows = [CSV_HEADER]
    for i in range(N_BINS):
        a, b, t = (int(record.slit1.bins[i]), int(record.slit2.bins[i]), int(record.total.bins[i]))
        rows.append(f"{BIN_LO + i},{a},{b},{t}")
    return "\n".join(rows) + "\n"


def write_csv(record: RunRecord, path) -> Path:
    path = Path(path)
    path.write_bytes(csv_text(record).encode("utf-8"))
    return path


def read_csv(path) -> dict[str, np.ndarray]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {lines[0]!r}")
    data = np.array([[int(v) for v in ln.split(",")] for ln in lines[1:]], dtype=np.int64)
    return {name: data[:, i] for i, name in enumerate(CSV_HEADER.split(","))}


def record_to_dict(record: RunRecord, report: AnalysisReport | None = None) -> dict:
    """JSON-ready dict.

    Layout::

        format, version       "twoslit-run", 1
        params                model geometry (see ModelParams.to_dict)
        context, seed, prng   run identity; prng names the generator and sub-seeding
        counters              n_emitted, n_blocked, n_registered, n_displaced
        register              initial spins, final spins, per-orbit flip counts
        histograms            bin_left_edge_deg and 180 counts each for slit1, slit2, total
        report                optional analysis report; absent when not given
    """
    d = {
        "format": JSON_FORMAT,
        "version": JSON_VERSION,
        "params": record.params.to_dict(),
        "context": record.context.value,
        "seed": record.seed,
        "prng": record.prng,
        "counters": {
            "n_emitted": record.n_emitted,
            "n_blocked": record.n_blocked,
            "n_registered": record.n_registered,
            "n_displaced": record.n_displaced,
        },
        "register": record.final_register.to_dict(),
        "histograms": {
            "bin_left_edge_deg": BIN_LO,
            **{name: [int(c) for c in h.bins] for name, h in record.histograms.items()},
        },
    }
    if report is not None:
        d["report"] = report.to_dict()
    return d


def record_from_dict(d: dict) -> tuple[RunRecord, AnalysisReport | None]:
    if d.get("format") != JSON_FORMAT:
        raise ValueError(f"not a {JSON_FORMAT} document")
    if d.get("version") != JSON_VERSION:
        raise ValueError(f"unsupported version {d.get('version')!r}")
    c = d["counters"]
    h = d["histograms"]
    rec = RunRecord(
        params=ModelParams.from_dict(d["params"]),
        context=Context(d["context"]),
        seed=int(d["seed"]),
        n_emitted=c["n_emitted"],
        n_blocked=c["n_blocked"],
        n_registered=c["n_registered"],
        n_displaced=c["n_displaced"],
        slit1=Histogram(h["slit1"], "slit1"),
        slit2=Histogram(h["slit2"], "slit2"),
        total=Histogram(h["total"], "total"),
        final_register=OrbitRegister.from_dict(d["register"]),
        prng=d["prng"],
    )
    report = AnalysisReport.from_dict(d["report"]) if "report" in d else None
    return rec, report


def write_json(record: RunRecord, report: AnalysisReport | None, path) -> Path:
    path = Path(path)
    text = json.dumps(record_to_dict(record, report), indent=2, sort_keys=True)
    path.write_bytes((text + "\n").encode("utf-8"))
    return path


def read_json(path) -> tuple[RunRecord, AnalysisReport | None]:
    return record_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
