"""Static SVG and ASCII renderings of the three screen histograms."""
from __future__ import annotations

from pathlib import Path

from .experiment import RunRecord
from .model import BIN_LO, N_BINS

SERIES = (("slit1", "#2ca02c", "slit 1"), ("slit2", "#d62728", "slit 2"), ("total", "#1f77b4", "total"))
SPARK = " ▁▂▃▄▅▆▇█"

WIDTH, HEIGHT = 760, 360
LEFT, RIGHT, TOP, BOTTOM = 60, 20, 40, 50


def svg_text(record: RunRecord, title: str | None = None) -> str:
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM
    peak = max(int(record.total.bins.max()), 1)
    x_of = lambda deg: LEFT + (deg - BIN_LO) * plot_w / N_BINS  # noqa: E731
    y_of = lambda c: TOP + plot_h - c * plot_h / peak  # noqa: E731
    base = TOP + plot_h
    title = title or f"context={record.context.value} seed={record.seed} n={record.n_emitted}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="20" text-anchor="middle">{title}</text>',
        f'<line id="x-axis" x1="{LEFT}" y1="{base}" x2="{LEFT + plot_w}" y2="{base}" stroke="black"/>',
        f'<line id="y-axis" x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{base}" stroke="black"/>',
    ]
    for deg in range(-90, 91, 30):
        x = x_of(deg)
        out.append(f'<line x1="{x:.2f}" y1="{base}" x2="{x:.2f}" y2="{base + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{base + 18}" text-anchor="middle">{deg}</text>')
    out.append(
        f'<text x="{LEFT + plot_w / 2:.1f}" y="{HEIGHT - 10}" text-anchor="middle">angle (degrees)</text>'
    )
    out.append(f'<text x="{LEFT - 8}" y="{TOP + 4}" text-anchor="end">{peak}</text>')
    out.append(f'<text x="{LEFT - 8}" y="{base + 4}" text-anchor="end">0</text>')
    for name, color, _ in SERIES:
        bins = record.histograms[name].bins
        pts = " ".join(f"{x_of(BIN_LO + i + 0.5):.2f},{y_of(int(c)):.2f}" for i, c in enumerate(bins))
        out.append(f'<polyline id="{name}" fill="none" stroke="{color}" stroke-width="1" points="{pts}"/>')
    for j, (name, color, label) in enumerate(SERIES):
        y = TOP + 8 + 16 * j
        x = LEFT + plot_w - 90
        out.append(f'<line x1="{x}" y1="{y}" x2="{x + 20}" y2="{y}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{x + 26}" y="{y + 4}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def ascii_text(record: RunRecord) -> str:
    """One 180-column strip per series, shaded against the total's peak."""
    peak = max(int(record.total.bins.max()), 1)
    top = len(SPARK) - 1
    lines = []
    for name, _, label in SERIES:
        bins = record.histograms[name].bins
        strip = "".join(SPARK[(int(c) * top + peak - 1) // peak] for c in bins)
        lines.append(f"{label} (max {int(bins.max())})")
        lines.append(strip)
    ruler = [" "] * N_BINS
    for deg in range(-90, 90, 30):
        for j, ch in enumerate(str(deg)):
            if deg - BIN_LO + j < N_BINS:
                ruler[deg - BIN_LO + j] = ch
    lines.append("".join(ruler).rstrip())
    return "\n".join(lines) + "\n"


def render_plot(record: RunRecord, path, format: str = "svg", title: str | None = None) -> Path:
    path = Path(path)
    if format == "svg":
        text = svg_text(record, title)
    elif format == "ascii":
        text = ascii_text(record)
    else:
        raise ValueError(f"unknown plot format {format!r}")
    path.write_bytes(text.encode("utf-8"))
    return path
