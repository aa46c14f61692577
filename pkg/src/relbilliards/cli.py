"""Command-line front end.

Subcommands: simulate, mirror, cross-check, period, tachyon-scan,
estimate, render. Exit codes: 0 success, 1 validation error, 2 simulation
degeneracy (triple collision, zero-rest-mass pair, map pole), 3
cross-check tolerance failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, replace
from typing import Optional

from . import mirror as mr
from .config import ScenarioConfig, initial_state, parse_config
from .errors import (
    BilliardError,
    ConfigError,
    DegenerateCollisionError,
    PoleError,
    SimulationError,
    TripleCollisionError,
)
from .numeric import rel_diff
from .render import render_spacetime
from .scale import GRAVITY_M_PER_KG, estimate_tachyonic_scale
from .serialize import (
    events_from_csv,
    events_to_csv,
    mirror_trajectory_to_csv,
    write_atomic,
)
from .simulator import BilliardState, simulate

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DEGENERATE = 2
EXIT_CROSS_CHECK = 3

_DEGENERATE = (
    DegenerateCollisionError,
    TripleCollisionError,
    PoleError,
    SimulationError,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; keep 2 for degeneracies
    def error(self, message):
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _mirror_columns(
    config: ScenarioConfig, events, state0: BilliardState
) -> Optional[list[dict]]:
    """Reduced coordinates carried along the event log for the mirror-mode
    CSV columns: sigma1 and E2 track the current segment, x1 and k update
    at each collision of the leftmost pair (k stays constant up to
    rounding, which makes its drift visible in the output)."""
    if config.mode != "mirror":
        return None
    _, mstate = config.mirror
    sigma1, e2, x1, k = mstate.sigma1, mstate.E2, mstate.x1, config.mirror[0].k
    rows = []
    particles = list(state0.particles)
    for event in events:
        i, j = event.pair
        particles[i], particles[j] = event.post
        p0, p1 = particles[0], particles[1]
        sigma1 = p0.E + p0.P
        e2 = p1.E
        if event.pair == (0, 1):
            x1 = event.x
            k = x1 * e2 / sigma1
        rows.append({"sigma1": sigma1, "E2": e2, "x1": x1, "k": k})
    return rows


def _run_simulate(args) -> int:
    config = _load_config(args)
    state0 = initial_state(config)
    state, events = simulate(
        state0,
        config.direction,
        max_events=config.max_events,
        t_limit=config.t_limit,
    )
    rows = _mirror_columns(config, events, state0)
    text = events_to_csv(events, config.arithmetic, rows)
    out = os.path.join(args.out, "events.csv")
    write_atomic(out, text)
    print(f"wrote {out} ({len(events)} events, final t = {state.t!r})")
    if "svg" in config.outputs:
        svg = render_spacetime(events)
        svg_path = os.path.join(args.out, "spacetime.svg")
        write_atomic(svg_path, svg)
        print(f"wrote {svg_path}")
    return EXIT_OK


def _run_mirror(args) -> int:
    config = _load_config(args)
    if config.mode != "mirror":
        raise ConfigError("mirror subcommand needs a mirror-mode config")
    if config.max_events is None:
        raise ConfigError("mirror subcommand needs an events stop rule")
    params, state = config.mirror
    n_fwd = config.max_events if config.direction == "forward" else 0
    n_bwd = config.max_events if config.direction == "backward" else 0
    states = mr.reduced_trajectory(params, state, n_fwd, n_bwd)
    text = mirror_trajectory_to_csv(states, params.k, config.arithmetic)
    out = os.path.join(args.out, "mirror.csv")
    write_atomic(out, text)
    print(f"wrote {out} ({len(states)} collision states)")
    return EXIT_OK


@dataclass
class CrossCheckReport:
    n_collisions: int
    max_dev: dict[str, float]
    growth_rate: Optional[float]
    passed: bool
    tol: float

    def render(self) -> str:
        lines = [
            f"cross-check over {self.n_collisions} collisions "
            f"(tolerance {self.tol:g})",
        ]
        for key in ("sigma1", "E2", "x1", "t"):
            lines.append(
                f"  max relative deviation {key:6s} = {self.max_dev[key]:.3e}"
            )
        if self.growth_rate is not None:
            lines.append(
                f"  deviation growth rate ~ {self.growth_rate:.3f} per step"
            )
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"


def cross_check(
    params: mr.MirrorParams,
    state0: mr.MirrorState,
    n_collisions: int,
    tol: float = 1e-9,
) -> CrossCheckReport:
    """Run the four-particle simulation against the reduced map and compare
    (sigma1, E2, x1, t) at every collision of the leftmost pair."""
    oracle = mr.reduced_trajectory(params, state0, n_collisions)[1:]
    billiard = mr.billiard_from_mirror(params, state0)
    # each reduced collision costs three events: the inner-pair swap plus
    # the two simultaneous outer collisions
    _, events = simulate(billiard, "forward", max_events=3 * n_collisions)
    simulated = mr.reduced_states_from_events(events, state0)
    if len(simulated) < n_collisions:
        raise SimulationError(
            f"simulation produced {len(simulated)} collisions, "
            f"expected {n_collisions}"
        )

    devs: dict[str, list[float]] = {"sigma1": [], "E2": [], "x1": [], "t": []}
    for ref, got in zip(oracle, simulated):
        devs["sigma1"].append(rel_diff(ref.sigma1, got.sigma1))
        devs["E2"].append(rel_diff(ref.E2, got.E2))
        devs["x1"].append(rel_diff(ref.x1, got.x1))
        devs["t"].append(rel_diff(ref.t, got.t))
    max_dev = {key: max(vals, default=0.0) for key, vals in devs.items()}

    growth = None
    seq = [d for d in devs["sigma1"]]
    ratios = [
        b / a for a, b in zip(seq, seq[1:]) if a > 1e-14 and b > 1e-14
    ]
    if len(ratios) >= 3:
        ratios.sort()
        growth = ratios[len(ratios) // 2]

    passed = all(v <= tol for v in max_dev.values())
    return CrossCheckReport(
        n_collisions=n_collisions,
        max_dev=max_dev,
        growth_rate=growth,
        passed=passed,
        tol=tol,
    )


def _run_cross_check(args) -> int:
    config = _load_config(args)
    if config.mode != "mirror":
        raise ConfigError("cross-check needs a mirror-mode config")
    n = args.events if args.events is not None else config.max_events
    if n is None:
        raise ConfigError("cross-check needs an event count")
    params, state0 = config.mirror
    report = cross_check(params, state0, n, tol=args.tol)
    text = report.render()
    if args.out:
        path = os.path.join(args.out, "report.txt")
        write_atomic(path, text)
        print(f"wrote {path}")
    sys.stdout.write(text)
    return EXIT_OK if report.passed else EXIT_CROSS_CHECK


def _run_period(args) -> int:
    params, state0 = mr.mirror_initial(
        args.mu, args.e_total, args.sigma1, args.x1
    )
    found = mr.period(params, b_max=args.b_max, tol=args.tol)
    if found is None:
        print(f"aperiodic within b_max={args.b_max} (tol {args.tol:g})")
        return EXIT_OK
    states = mr.reduced_trajectory(params, state0, found.b)
    simulated_T = states[-1].t - states[0].t
    print(
        f"b={found.b}, a={found.a}, T={found.T:.9g}; "
        f"simulated {float(simulated_T):.9f}"
    )
    return EXIT_OK


def _parse_grid(text: str, name: str) -> list[float]:
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            values.append(float(token))
        except ValueError as exc:
            raise ConfigError(f"--{name}: bad number {token!r}") from exc
    if not values:
        raise ConfigError(f"--{name}: empty grid")
    return values


def tachyonic_census(
    params: mr.MirrorParams, sigma1_0: float, steps: int
) -> tuple[int, bool]:
    """Count tachyonic collisions over the orbit window [-steps, steps].

    Returns (count, consecutive) where ``consecutive`` reports whether the
    hits form one run of adjacent collision indices.
    """
    hits = []
    sigma = sigma1_0
    for n in range(steps + 1):
        if mr.tachyonic_predicate(sigma, params):
            hits.append(n)
        if n < steps:
            sigma = mr.reduced_map(sigma, params)
    sigma = sigma1_0
    for n in range(1, steps + 1):
        sigma = mr.inverse_map(sigma, params)
        if mr.tachyonic_predicate(sigma, params):
            hits.append(-n)
    hits.sort()
    consecutive = all(b - a == 1 for a, b in zip(hits, hits[1:]))
    return len(hits), consecutive


def _run_tachyon_scan(args) -> int:
    mus = _parse_grid(args.mu, "mu")
    energies = _parse_grid(args.e_total, "e-total")
    sigmas = _parse_grid(args.sigma1, "sigma1")
    lines = ["mu,E_total,sigma1_0,delta,classification,count,consecutive,agrees"]
    disagreements = 0
    for mu in mus:
        for e_total in energies:
            for sigma1_0 in sigmas:
                params = mr.MirrorParams(mu, e_total)
                label = mr.classify_tachyonic(params, sigma1_0)
                count, consecutive = tachyonic_census(
                    params, sigma1_0, args.steps
                )
                if label is mr.TachyonicCount.INFINITELY_MANY:
                    agrees = count > 2
                elif label is mr.TachyonicCount.EXACTLY_TWO_CONSECUTIVE:
                    agrees = count == 2 and consecutive
                else:
                    agrees = count == 0
                disagreements += 0 if agrees else 1
                lines.append(
                    f"{mu!r},{e_total!r},{sigma1_0!r},{params.delta!r},"
                    f"{label.value},{count},"
                    f"{'true' if consecutive else 'false'},"
                    f"{'true' if agrees else 'false'}"
                )
    text = "\n".join(lines) + "\n"
    if args.out:
        path = os.path.join(args.out, "tachyon_scan.csv")
        write_atomic(path, text)
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)
    print(f"{disagreements} disagreement(s)")
    return EXIT_OK if disagreements == 0 else EXIT_CROSS_CHECK


def _run_estimate(args) -> int:
    bound = estimate_tachyonic_scale(args.mass, args.gravity)
    print("bound = 2 * G * m")
    print(f"G = {args.gravity:.6g} m/kg (c = 1 units)")
    print(f"m = {args.mass:.6g} kg")
    print(f"bound = {bound:.6g} m (~ {bound:.1e} m)")
    return EXIT_OK


def _run_render(args) -> int:
    with open(args.log, "r") as handle:
        events, _ = events_from_csv(handle.read())
    svg = render_spacetime(events)
    path = os.path.join(args.out, "spacetime.svg")
    write_atomic(path, svg)
    print(f"wrote {path}")
    return EXIT_OK


def _load_config(args) -> ScenarioConfig:
    try:
        with open(args.config, "r") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    config = parse_config(text, arithmetic=getattr(args, "arithmetic", None))
    if getattr(args, "events", None) is not None:
        config = replace(config, max_events=args.events)
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="relbilliards")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario, write events.csv")
    sim.add_argument("--config", required=True)
    sim.add_argument("--arithmetic", choices=("float", "rational"))
    sim.add_argument("--events", type=int)
    sim.add_argument("--out", default=".")
    sim.set_defaults(func=_run_simulate)

    mirror_cmd = sub.add_parser(
        "mirror", help="run the reduced collision map, write mirror.csv"
    )
    mirror_cmd.add_argument("--config", required=True)
    mirror_cmd.add_argument("--arithmetic", choices=("float", "rational"))
    mirror_cmd.add_argument("--events", type=int)
    mirror_cmd.add_argument("--out", default=".")
    mirror_cmd.set_defaults(func=_run_mirror)

    check = sub.add_parser(
        "cross-check",
        help="compare the full simulation against the reduced map",
    )
    check.add_argument("--config", required=True)
    check.add_argument("--arithmetic", choices=("float", "rational"))
    check.add_argument("--events", type=int)
    check.add_argument("--tol", type=float, default=1e-9)
    check.add_argument("--out")
    check.set_defaults(func=_run_cross_check)

    per = sub.add_parser(
        "period", help="detect rational rotation and report the orbit period"
    )
    per.add_argument("--mu", type=float, required=True)
    per.add_argument("--e-total", dest="e_total", type=float, required=True)
    per.add_argument("--sigma1", type=float, required=True)
    per.add_argument("--x1", type=float, required=True)
    per.add_argument("--b-max", dest="b_max", type=int, default=10_000)
    per.add_argument("--tol", type=float, default=1e-9)
    per.set_defaults(func=_run_period)

    scan = sub.add_parser(
        "tachyon-scan",
        help="classify tachyonic collision counts over a parameter grid",
    )
    scan.add_argument("--mu", required=True, help="comma-separated values")
    scan.add_argument("--e-total", dest="e_total", required=True)
    scan.add_argument("--sigma1", required=True)
    scan.add_argument("--steps", type=int, default=1000)
    scan.add_argument("--out")
    scan.set_defaults(func=_run_tachyon_scan)

    est = sub.add_parser(
        "estimate", help="tachyonic length scale 2*G*m for a real mass"
    )
    est.add_argument("--mass", type=float, required=True, help="mass in kg")
    est.add_argument(
        "--gravity", type=float, default=GRAVITY_M_PER_KG,
        help="gravitational constant in m/kg (c = 1 units)",
    )
    est.set_defaults(func=_run_estimate)

    ren = sub.add_parser(
        "render", help="draw a spacetime diagram from an events.csv"
    )
    ren.add_argument("--log", required=True)
    ren.add_argument("--out", default=".")
    ren.set_defaults(func=_run_render)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _DEGENERATE as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ConfigError, ValueError, BilliardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
