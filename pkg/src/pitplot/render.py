"""Deterministic SVG and plain-text rendering of PIT and tornado data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

from .metrics import PitData
from .tornado import TornadoRow

TEXT_BAR_COLS = 60


@dataclass(frozen=True)
class ChartStyle:
    width: int = 900
    height: int = 500
    exclusion_color: str = "#2b6cb0"
    success_color: str = "#2f855a"
    font_family: str = "monospace"
    font_size: int = 12
    decimals: int = 3
    show_values: bool = True

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("chart dimensions must be positive")
        if not (0 <= self.decimals <= 6):
            raise ValueError("decimals must be in 0..6")


def _fmt(value: float, style: ChartStyle) -> str:
    return f"{value:.{style.decimals}f}"


def _svg_open(style: ChartStyle) -> str:
    return (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{style.width}" height="{style.height}" '
            f'viewBox="0 0 {style.width} {style.height}">')


def render_pit(data: PitData, style: ChartStyle = ChartStyle()) -> str:
    """Horizontal paired bars around a vertical center line at the metric
    value; smallest exclusion delta at the top."""
    if not data.rows:
        raise ValueError("cannot render an empty PIT data set")

    margin_left, margin_right, margin_top, margin_bottom = 90, 30, 50, 30
    plot_w = style.width - margin_left - margin_right
    plot_h = style.height - margin_top - margin_bottom
    center_x = margin_left + plot_w / 2

    values = [abs(r.delta_exclusion) for r in data.rows]
    values += [abs(r.delta_success) for r in data.rows if r.delta_success is not None]
    max_abs = max(values) or 1.0
    scale = (plot_w / 2) / (max_abs * 1.1)  # 10% padding each side

    row_h = plot_h / len(data.rows)
    bar_h = min(row_h * 0.35, 18.0)

    parts = [_svg_open(style)]
    title = f"{escape(data.metric_name)} portfolio impact (center {_fmt(data.center_value, style)})"
    parts.append(f'<text x="{margin_left}" y="24" font-family="{style.font_family}" '
                 f'font-size="{style.font_size + 2}">{title}</text>')
    parts.append(f'<line x1="{center_x:.2f}" y1="{margin_top}" x2="{center_x:.2f}" '
                 f'y2="{margin_top + plot_h:.2f}" stroke="#444" stroke-width="1"/>')

    for k, row in enumerate(data.rows):
        y0 = margin_top + k * row_h
        parts.append(f'<g class="pit-row" data-project="{escape(row.project_id)}">')
        parts.append(f'<text x="8" y="{y0 + row_h / 2 + style.font_size / 3:.2f}" '
                     f'font-family="{style.font_family}" font-size="{style.font_size}">'
                     f'{escape(row.project_id)}</text>')

        # exclusion bar above success bar within the row
        for which, value, color, offset in (
            ("exclusion", row.delta_exclusion, style.exclusion_color, row_h * 0.12),
            ("success", row.delta_success, style.success_color, row_h * 0.12 + bar_h + 2),
        ):
            y = y0 + offset
            if which == "success" and value is None:
                parts.append(f'<text x="{center_x + 6:.2f}" y="{y + bar_h * 0.8:.2f}" '
                             f'font-family="{style.font_family}" font-size="{style.font_size}" '
                             f'fill="#999" class="pit-missing">n/a</text>')
                continue
            length = abs(value) * scale
            x = center_x if value >= 0 else center_x - length
            parts.append(f'<rect class="pit-{which}" x="{x:.2f}" y="{y:.2f}" '
                         f'width="{length:.2f}" height="{bar_h:.2f}" fill="{color}"/>')
            if style.show_values:
                label_x = center_x + length + 6 if value >= 0 else center_x - length - 6
                anchor = "start" if value >= 0 else "end"
                parts.append(f'<text x="{label_x:.2f}" y="{y + bar_h * 0.8:.2f}" '
                             f'font-family="{style.font_family}" font-size="{style.font_size}" '
                             f'text-anchor="{anchor}">{_fmt(value, style)}</text>')
        parts.append('</g>')

    parts.append('</svg>')
    return "\n".join(parts) + "\n"


def render_tornado(rows: Sequence[TornadoRow], style: ChartStyle = ChartStyle()) -> str:
    """One bar per variable spanning [min outcome, max outcome] around the
    base-value center line; widest bar at the top."""
    if not rows:
        raise ValueError("cannot render an empty tornado data set")

    margin_left, margin_right, margin_top, margin_bottom = 120, 30, 50, 30
    plot_w = style.width - margin_left - margin_right
    plot_h = style.height - margin_top - margin_bottom
    center_x = margin_left + plot_w / 2
    base = rows[0].outcome_base

    max_dev = max(max(abs(r.outcome_low - base), abs(r.outcome_high - base)) for r in rows) or 1.0
    scale = (plot_w / 2) / (max_dev * 1.1)

    row_h = plot_h / len(rows)
    bar_h = min(row_h * 0.5, 24.0)

    parts = [_svg_open(style)]
    parts.append(f'<text x="{margin_left}" y="24" font-family="{style.font_family}" '
                 f'font-size="{style.font_size + 2}">Sensitivity (base {_fmt(base, style)})</text>')
    parts.append(f'<line x1="{center_x:.2f}" y1="{margin_top}" x2="{center_x:.2f}" '
                 f'y2="{margin_top + plot_h:.2f}" stroke="#444" stroke-width="1"/>')

    for k, row in enumerate(rows):
        y = margin_top + k * row_h + (row_h - bar_h) / 2
        lo = min(row.outcome_low, row.outcome_base, row.outcome_high)
        hi = max(row.outcome_low, row.outcome_base, row.outcome_high)
        x = center_x + (lo - base) * scale
        width = (hi - lo) * scale
        parts.append(f'<g class="tornado-row" data-variable="{escape(row.variable_name)}">')
        parts.append(f'<text x="8" y="{y + bar_h * 0.7:.2f}" font-family="{style.font_family}" '
                     f'font-size="{style.font_size}">{escape(row.variable_name)}</text>')
        parts.append(f'<rect class="tornado-bar" x="{x:.2f}" y="{y:.2f}" '
                     f'width="{width:.2f}" height="{bar_h:.2f}" fill="{style.exclusion_color}"/>')
        if style.show_values:
            parts.append(f'<text x="{x - 6:.2f}" y="{y + bar_h * 0.7:.2f}" text-anchor="end" '
                         f'font-family="{style.font_family}" font-size="{style.font_size}">'
                         f'{_fmt(lo, style)}</text>')
            parts.append(f'<text x="{x + width + 6:.2f}" y="{y + bar_h * 0.7:.2f}" '
                         f'font-family="{style.font_family}" font-size="{style.font_size}">'
                         f'{_fmt(hi, style)}</text>')
        parts.append('</g>')

    parts.append('</svg>')
    return "\n".join(parts) + "\n"


def render_pit_text(data: PitData, decimals: int = 3) -> str:
    """Fixed-width ASCII chart: exclusion/success bars scaled to 60 columns."""
    values = [abs(r.delta_exclusion) for r in data.rows]
    values += [abs(r.delta_success) for r in data.rows if r.delta_success is not None]
    max_abs = max(values, default=0.0) or 1.0
    half = TEXT_BAR_COLS // 2

    def bar(value: float) -> str:
        n = round(abs(value) / max_abs * half)
        if value >= 0:
            return " " * half + "|" + "#" * n + " " * (half - n)
        return " " * (half - n) + "#" * n + "|" + " " * half

    lines = [f"{data.metric_name} PIT  center={data.center_value:.{decimals}f}"]
    width = max((len(r.project_id) for r in data.rows), default=0)
    for row in data.rows:
        lines.append(f"{row.project_id:<{width}} X {bar(row.delta_exclusion)} "
                     f"{row.delta_exclusion:+.{decimals}f}")
        if row.delta_success is not None:
            lines.append(f"{'':<{width}} S {bar(row.delta_success)} "
                         f"{row.delta_success:+.{decimals}f}")
        else:
            lines.append(f"{'':<{width}} S {' ' * half}|{' ' * half} n/a")
    return "\n".join(lines) + "\n"


def render_tornado_text(rows: Sequence[TornadoRow], decimals: int = 3) -> str:
    base = rows[0].outcome_base if rows else 0.0
    max_dev = max((max(abs(r.outcome_low - base), abs(r.outcome_high - base)) for r in rows),
                  default=0.0) or 1.0
    half = TEXT_BAR_COLS // 2

    lines = [f"tornado  base={base:.{decimals}f}"]
    width = max((len(r.variable_name) for r in rows), default=0)
    for row in rows:
        lo = min(row.outcome_low, row.outcome_base, row.outcome_high)
        hi = max(row.outcome_low, row.outcome_base, row.outcome_high)
        left = round((base - lo) / max_dev * half)
        right = round((hi - base) / max_dev * half)
        bar = " " * (half - left) + "#" * left + "|" + "#" * right + " " * (half - right)
        lines.append(f"{row.variable_name:<{width}} {bar} "
                     f"[{lo:.{decimals}f}, {hi:.{decimals}f}] span={row.span:.{decimals}f}")
    return "\n".join(lines) + "\n"
