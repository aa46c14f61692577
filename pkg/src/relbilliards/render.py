"""Spacetime diagrams as standalone SVG.

Worldlines are piecewise-linear: vertices at the collision events a
particle takes part in, extrapolated with the incoming/outgoing velocity
to a small margin beyond the logged time span. Position runs horizontally,
time vertically (up). Tachyonic events get distinct circular markers.

The SVG is produced by hand so the byte stream is a pure function of the
event log (plotting libraries embed timestamps and session ids, which
would break output determinism).
"""

from __future__ import annotations

from .errors import ConfigError
from .simulator import CollisionEvent

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
)


def worldlines(
    events: list[CollisionEvent], margin: float = 0.05
) -> tuple[dict[int, list[tuple[float, float]]], list[tuple[float, float]]]:
    """Per-particle (t, x) polylines plus (t, x) tachyonic markers.

    Each particle's vertices are its event points; the first and last
    segments extend to the padded time window using the event's incoming
    and outgoing velocities.
    """
    if not events:
        raise ConfigError("empty event log: nothing to draw")

    times = [float(e.t) for e in events]
    t_lo, t_hi = min(times), max(times)
    pad = margin * max(t_hi - t_lo, 1.0)
    t_start, t_end = t_lo - pad, t_hi + pad

    touched: dict[int, list[CollisionEvent]] = {}
    for event in events:
        for label in event.pair:
            touched.setdefault(label, []).append(event)

    lines: dict[int, list[tuple[float, float]]] = {}
    for label, evs in sorted(touched.items()):
        evs = sorted(evs, key=lambda e: float(e.t))
        first, last = evs[0], evs[-1]
        v_in = float(_state_of(first, label, "pre").velocity)
        v_out = float(_state_of(last, label, "post").velocity)
        pts = [(float(e.t), float(e.x)) for e in evs]
        t0, x0 = pts[0]
        tn, xn = pts[-1]
        head = (t_start, x0 - v_in * (t0 - t_start))
        tail = (t_end, xn + v_out * (t_end - tn))
        lines[label] = [head] + pts + [tail]

    markers = [
        (float(e.t), float(e.x)) for e in events if e.tachyonic
    ]
    return lines, markers


def _state_of(event: CollisionEvent, label: int, which: str):
    states = event.pre if which == "pre" else event.post
    return states[0] if event.pair[0] == label else states[1]


def render_spacetime(
    events: list[CollisionEvent],
    width: int = 640,
    height: int = 640,
) -> str:
    """Render the event log to SVG text (deterministic bytes)."""
    lines, markers = worldlines(events)

    all_pts = [p for pts in lines.values() for p in pts]
    ts = [t for t, _ in all_pts]
    xs = [x for _, x in all_pts]
    t_lo, t_hi = min(ts), max(ts)
    x_lo, x_hi = min(xs), max(xs)
    t_span = max(t_hi - t_lo, 1e-9)
    x_span = max(x_hi - x_lo, 1e-9)
    inset = 20.0

    def sx(x: float) -> float:
        return inset + (x - x_lo) / x_span * (width - 2 * inset)

    def sy(t: float) -> float:
        return height - inset - (t - t_lo) / t_span * (height - 2 * inset)

    def fmt(v: float) -> str:
        return f"{v:.3f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for label, pts in sorted(lines.items()):
        color = _PALETTE[label % len(_PALETTE)]
        coords = " ".join(f"{fmt(sx(x))},{fmt(sy(t))}" for t, x in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>'
        )
    for t, x in markers:
        parts.append(
            f'<circle cx="{fmt(sx(x))}" cy="{fmt(sy(t))}" r="4" '
            f'fill="none" stroke="#d62728" stroke-width="1.5"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
