"""Event-log and trajectory serialization.

CSV files start with a schema tag line (``# relbilliards-events-v1
arithmetic=float``) followed by an ordinary header row. Floats are written
with ``repr``, which round-trips bit-for-bit; rationals are written as
``p/q`` strings. Parsing a file back reconstructs the event list exactly.

Files are written atomically (temp file + rename) so a crashed run never
leaves a half-written artifact.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from fractions import Fraction
from typing import Iterable, Optional

from .errors import ConfigError
from .kinematics import ParticleState
from .mirror import MirrorState
from .numeric import Number
from .simulator import CollisionEvent

EVENTS_SCHEMA = "relbilliards-events-v1"
MIRROR_SCHEMA = "relbilliards-mirror-v1"

_EVENT_FIELDS = [
    "n", "t", "i", "j", "x",
    "E_i_pre", "P_i_pre", "mu_i",
    "E_j_pre", "P_j_pre", "mu_j",
    "E_i_post", "P_i_post",
    "E_j_post", "P_j_post",
    "tachyonic", "sign_flip_i", "sign_flip_j",
    "sigma1", "E2", "x1", "k",
]

_MIRROR_FIELDS = ["n", "t", "sigma1", "E2", "x1", "k"]


def _format_number(value: Number) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))


def _parse_number(text: str, arithmetic: str) -> Number:
    if arithmetic == "rational":
        return Fraction(text)
    return float(text)


def _format_bool(value: bool) -> str:
    return "true" if value else "false"


def _parse_bool(text: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ConfigError(f"expected boolean, got {text!r}")


def events_to_csv(
    events: Iterable[CollisionEvent],
    arithmetic: str = "float",
    mirror_rows: Optional[list[dict]] = None,
) -> str:
    """Render an event log as CSV text.

    ``mirror_rows`` optionally supplies the per-event reduced coordinates
    (dicts with sigma1/E2/x1/k) for mirror-mode runs; general runs leave
    those columns empty.
    """
    events = list(events)
    out = io.StringIO()
    out.write(f"# {EVENTS_SCHEMA} arithmetic={arithmetic}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_EVENT_FIELDS)
    for n, event in enumerate(events):
        pre_i, pre_j = event.pre
        post_i, post_j = event.post
        row = [
            str(n),
            _format_number(event.t),
            str(event.pair[0]),
            str(event.pair[1]),
            _format_number(event.x),
            _format_number(pre_i.E), _format_number(pre_i.P),
            _format_number(pre_i.mu),
            _format_number(pre_j.E), _format_number(pre_j.P),
            _format_number(pre_j.mu),
            _format_number(post_i.E), _format_number(post_i.P),
            _format_number(post_j.E), _format_number(post_j.P),
            _format_bool(event.tachyonic),
            _format_bool(event.sign_flips[0]),
            _format_bool(event.sign_flips[1]),
        ]
        if mirror_rows is not None:
            extra = mirror_rows[n]
            row += [
                _format_number(extra["sigma1"]),
                _format_number(extra["E2"]),
                _format_number(extra["x1"]),
                _format_number(extra["k"]),
            ]
        else:
            row += ["", "", "", ""]
        writer.writerow(row)
    return out.getvalue()


def events_from_csv(text: str) -> tuple[list[CollisionEvent], str]:
    """Parse CSV text back into an event log. Returns (events, arithmetic)."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(f"# {EVENTS_SCHEMA}"):
        raise ConfigError(f"not a {EVENTS_SCHEMA} file")
    arithmetic = "float"
    if "arithmetic=" in lines[0]:
        arithmetic = lines[0].split("arithmetic=")[1].strip()
    reader = csv.reader(lines[1:])
    header = next(reader)
    if header != _EVENT_FIELDS:
        raise ConfigError("unexpected column layout")

    events = []
    for row in reader:
        rec = dict(zip(_EVENT_FIELDS, row))
        num = lambda key: _parse_number(rec[key], arithmetic)  # noqa: E731
        i, j = int(rec["i"]), int(rec["j"])
        x = num("x")

        def state(e_key, p_key, mu_key, label):
            # evolved data: reuse the loose internal drift bound
            return ParticleState(
                num(e_key), num(p_key), num(mu_key), x, label, _drift_tol=1e-6
            )

        pre = (
            state("E_i_pre", "P_i_pre", "mu_i", i),
            state("E_j_pre", "P_j_pre", "mu_j", j),
        )
        post = (
            state("E_i_post", "P_i_post", "mu_i", i),
            state("E_j_post", "P_j_post", "mu_j", j),
        )
        events.append(
            CollisionEvent(
                t=num("t"),
                pair=(i, j),
                x=x,
                pre=pre,
                post=post,
                tachyonic=_parse_bool(rec["tachyonic"]),
                sign_flips=(
                    _parse_bool(rec["sign_flip_i"]),
                    _parse_bool(rec["sign_flip_j"]),
                ),
            )
        )
    return events, arithmetic


def mirror_trajectory_to_csv(
    states: Iterable[MirrorState],
    k: Number,
    arithmetic: str = "float",
) -> str:
    """Render a reduced-map trajectory as CSV text."""
    out = io.StringIO()
    out.write(f"# {MIRROR_SCHEMA} arithmetic={arithmetic}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_MIRROR_FIELDS)
    for s in states:
        writer.writerow([
            str(s.n),
            _format_number(s.t),
            _format_number(s.sigma1),
            _format_number(s.E2),
            _format_number(s.x1),
            _format_number(k),
        ])
    return out.getvalue()


def write_atomic(path: str, text: str) -> None:
    """Write text to ``path`` atomically."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
