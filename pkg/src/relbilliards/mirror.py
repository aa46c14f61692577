"""Closed-form engine for the symmetric four-particle configuration.

The configuration: two outer particles of equal squared mass mu > 0 at
mirror positions x1 = -x4 < 0, and two massless inner particles at
x2 = -x3 whose energies match by symmetry. The inner particles shuttle
between the outer ones at light speed, swapping coordinates when they meet
at the origin, so the whole evolution is driven by the successive
collisions of particle 1 with particle 2.

Writing sigma1 for particle 1's light-cone coordinate E1 + P1 and
E_total for the conserved half-system energy E1 + E2, one collision maps

    sigma1 -> mu / (2*E_total - sigma1)          (the reduced map)
    E2     -> E2 * sigma1 / (2*E_total - sigma1)
    x1     -> x1 * mu / sigma1**2

with the flight time between collisions tau = -x1 - x1'. The reduced map
is a Moebius transformation; the sign of the discriminant
delta = E_total**2 - mu decides between hyperbolic escape (delta > 0),
the parabolic boundary case (delta = 0) and elliptic rotation with
bounded, possibly periodic orbits (delta < 0). The combination
k = x1 * E2 / sigma1 is invariant under the collision map and sets the
time scale of periodic orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import ConfigError, DiscriminantError, PoleError
from .kinematics import ParticleState, massless
from .numeric import REL_TOL, Number, near_zero
from .simulator import BilliardState, CollisionEvent


@dataclass(frozen=True)
class MirrorParams:
    """System constants: outer squared mass, half-system energy, and
    (once initial data is chosen) the motion constant k."""

    mu: Number
    E_total: Number
    k: Optional[Number] = None

    def __post_init__(self) -> None:
        if self.mu <= 0:
            raise ConfigError("outer squared mass mu must be positive")
        if self.E_total == 0:
            raise ConfigError("half-system energy E_total must be nonzero")

    @property
    def delta(self) -> Number:
        """Discriminant E_total**2 - mu of the reduced map's fixed points."""
        return self.E_total * self.E_total - self.mu


@dataclass(frozen=True)
class MirrorState:
    """State at the n-th collision of particle 1: its light-cone coordinate
    and position, the inner-particle energy, and the collision time."""

    n: int
    sigma1: Number
    E2: Number
    x1: Number
    t: Number


class TachyonicCount(Enum):
    """How many tachyonic collisions a full solution contains."""

    INFINITELY_MANY = "infinitely-many"
    EXACTLY_TWO_CONSECUTIVE = "exactly-two-consecutive"
    NONE = "none"


def _check_pole(sigma: Number, params: MirrorParams, rel_tol: float) -> Number:
    denom = 2 * params.E_total - sigma
    if near_zero(denom, abs(2 * params.E_total) + abs(sigma), rel_tol):
        raise PoleError(
            f"pole of reduced map: sigma = {sigma!r} at 2*E_total"
        )
    return denom


def reduced_map(
    sigma: Number, params: MirrorParams, rel_tol: float = REL_TOL
) -> Number:
    """One collision of particle 1: sigma -> mu / (2*E_total - sigma)."""
    return params.mu / _check_pole(sigma, params, rel_tol)


def inverse_map(
    sigma: Number, params: MirrorParams, rel_tol: float = REL_TOL
) -> Number:
    """Algebraic inverse 2*E_total - mu/sigma (one collision backward).

    Only sigma exactly zero is a pole; a tiny nonzero sigma has a huge but
    perfectly well-defined preimage (the previous collision was far away).
    """
    if sigma == 0:
        raise PoleError("inverse map undefined at sigma = 0")
    return 2 * params.E_total - params.mu / sigma


def map_derivative(sigma: Number, params: MirrorParams) -> Number:
    """d/dsigma of the reduced map: mu / (2*E_total - sigma)**2."""
    denom = 2 * params.E_total - sigma
    return params.mu / (denom * denom)


@dataclass(frozen=True)
class FixedPoints:
    """Fixed points of the reduced map with their stability data.

    kind is "hyperbolic" (delta > 0: attractor plus repeller),
    "parabolic" (delta = 0: one double fixed point, neither attracting nor
    repelling) or "elliptic" (delta < 0: a complex-conjugate pair and the
    map acts as a rotation). The real attracting/repelling values and
    their |f'| are filled for delta >= 0; the conjugate pair for delta < 0.
    """

    kind: str
    attracting: Optional[float] = None
    repelling: Optional[float] = None
    derivative_attracting: Optional[float] = None
    derivative_repelling: Optional[float] = None
    complex_pair: Optional[tuple[complex, complex]] = None


def fixed_points(params: MirrorParams) -> FixedPoints:
    """Solve sigma**2 - 2*E_total*sigma + mu = 0 and classify the roots.

    For delta >= 0 the root on the far side of E_total from the origin is
    the repeller (|f'| > 1) and the near one the attractor (|f'| < 1),
    for either sign of E_total.
    """
    e = float(params.E_total)
    delta = float(params.delta)
    if delta < 0:
        root = math.sqrt(-delta)
        pair = (complex(e, root), complex(e, -root))
        return FixedPoints(kind="elliptic", complex_pair=pair)
    root = math.sqrt(delta)
    if delta == 0:
        return FixedPoints(
            kind="parabolic",
            attracting=e,
            repelling=e,
            derivative_attracting=1.0,
            derivative_repelling=1.0,
        )
    if e > 0:
        at, re = e - root, e + root
    else:
        at, re = e + root, e - root
    mu = float(params.mu)
    return FixedPoints(
        kind="hyperbolic",
        attracting=at,
        repelling=re,
        derivative_attracting=abs(mu / (2 * e - at) ** 2),
        derivative_repelling=abs(mu / (2 * e - re) ** 2),
    )


def _conjugacy_pair(params: MirrorParams) -> tuple[complex, complex]:
    """(attracting-like, repelling-like) fixed points as complex numbers."""
    fp = fixed_points(params)
    if fp.kind == "elliptic":
        return fp.complex_pair
    return complex(fp.attracting), complex(fp.repelling)


def e2_update(
    E2: Number, sigma1: Number, params: MirrorParams, rel_tol: float = REL_TOL
) -> Number:
    """Inner-particle energy across one collision:
    E2 -> E2 * sigma1 / (2*E_total - sigma1)."""
    return E2 * sigma1 / _check_pole(sigma1, params, rel_tol)


def x1_update(x1: Number, sigma1: Number, params: MirrorParams) -> Number:
    """Collision position of particle 1 across one collision:
    x1 -> x1 * mu / sigma1**2 (the ratio (1 - v1)/(1 + v1))."""
    if sigma1 == 0:
        raise PoleError("x1 update undefined at sigma1 = 0")
    return x1 * params.mu / (sigma1 * sigma1)


def motion_constant(x1: Number, E2: Number, sigma1: Number) -> Number:
    """The collision invariant k = x1 * E2 / sigma1."""
    if sigma1 == 0:
        raise PoleError("motion constant undefined at sigma1 = 0")
    return x1 * E2 / sigma1


def e2_from_sigma(sigma1: Number, params: MirrorParams) -> Number:
    """Inner-particle energy implied by the energy split:
    2*E2 = 2*E_total - sigma1 - mu/sigma1."""
    if sigma1 == 0:
        raise PoleError("energy split undefined at sigma1 = 0")
    return (2 * params.E_total - sigma1 - params.mu / sigma1) / 2


def mirror_initial(
    mu: Number,
    E_total: Number,
    sigma1_0: Number,
    x1_0: Number,
    t0: Number = 0,
) -> tuple[MirrorParams, MirrorState]:
    """Build consistent parameters and the collision-0 state from raw data.

    The inner energy follows from the energy split, and the motion
    constant k is recorded on the returned parameters. Initial data
    sitting exactly on a fixed point is rejected: there the inner
    particles carry zero energy, which is not a legal particle.
    """
    params = MirrorParams(mu, E_total)
    if sigma1_0 == 0:
        raise ConfigError("sigma1 must be nonzero")
    if not x1_0 < 0:
        raise ConfigError("x1 must be negative (particle 1 left of origin)")
    E2 = e2_from_sigma(sigma1_0, params)
    if E2 == 0:
        raise ConfigError(
            "initial sigma1 sits on a fixed point: the inner particles "
            "would carry zero energy"
        )
    k = motion_constant(x1_0, E2, sigma1_0)
    state = MirrorState(n=0, sigma1=sigma1_0, E2=E2, x1=x1_0, t=t0)
    return MirrorParams(mu, E_total, k), state


def consistency_residual(state: MirrorState, params: MirrorParams) -> Number:
    """Residual of the energy split 2*E2 + sigma1 + mu/sigma1 - 2*E_total."""
    return (
        2 * state.E2
        + state.sigma1
        + params.mu / state.sigma1
        - 2 * params.E_total
    )


def reduced_trajectory(
    params: MirrorParams,
    initial: MirrorState,
    n_forward: int,
    n_backward: int = 0,
    rel_tol: float = REL_TOL,
) -> list[MirrorState]:
    """Iterate the collision map n_backward steps back and n_forward steps
    ahead, accumulating collision times via tau = -x1 - x1_next.

    The returned list is ordered by collision index. Raises PoleError with
    the offending index if the orbit hits the map's pole.
    """
    res = consistency_residual(initial, params)
    if not near_zero(
        res, abs(2 * initial.E2) + abs(initial.sigma1) + abs(2 * params.E_total)
    ):
        raise ConfigError(
            f"initial state violates the energy split (residual {res!r})"
        )

    forward: list[MirrorState] = [initial]
    state = initial
    for _ in range(n_forward):
        try:
            sigma_next = reduced_map(state.sigma1, params, rel_tol)
            e2_next = e2_update(state.E2, state.sigma1, params, rel_tol)
        except PoleError as exc:
            raise PoleError(f"{exc} (at collision index {state.n})") from exc
        x1_next = x1_update(state.x1, state.sigma1, params)
        tau = -state.x1 - x1_next
        state = MirrorState(
            n=state.n + 1,
            sigma1=sigma_next,
            E2=e2_next,
            x1=x1_next,
            t=state.t + tau,
        )
        forward.append(state)

    backward: list[MirrorState] = []
    state = initial
    for _ in range(n_backward):
        try:
            sigma_prev = inverse_map(state.sigma1, params, rel_tol)
        except PoleError as exc:
            raise PoleError(f"{exc} (at collision index {state.n})") from exc
        if sigma_prev == 0:
            raise PoleError(
                f"backward orbit reached sigma = 0 at collision index "
                f"{state.n - 1}"
            )
        x1_prev = state.x1 * sigma_prev * sigma_prev / params.mu
        e2_prev = state.E2 * (2 * params.E_total - sigma_prev) / sigma_prev
        tau = -x1_prev - state.x1
        state = MirrorState(
            n=state.n - 1,
            sigma1=sigma_prev,
            E2=e2_prev,
            x1=x1_prev,
            t=state.t - tau,
        )
        backward.append(state)

    backward.reverse()
    return backward + forward


def conjugacy_h(sigma: Number, params: MirrorParams) -> complex:
    """Moebius change of variable sending the fixed points to 0 and infinity.

    h(sigma) = (sigma - s_at) / (s_re - sigma). Conjugates the reduced map
    to multiplication by lambda = s_at / s_re; for delta < 0 it carries the
    real line onto the unit circle, with h(E_total) = 1.
    """
    s_at, s_re = _conjugacy_pair(params)
    z = complex(sigma)
    denom = s_re - z
    if denom == 0:
        raise PoleError("conjugacy undefined at the repelling fixed point")
    return (z - s_at) / denom


def conjugacy_h_inverse(z: complex, params: MirrorParams) -> complex:
    """Inverse of the conjugacy: sigma = (s_at + z * s_re) / (1 + z)."""
    s_at, s_re = _conjugacy_pair(params)
    z = complex(z)
    if z == -1:
        raise PoleError("inverse conjugacy undefined at z = -1")
    return (s_at + z * s_re) / (1 + z)


def multiplier(params: MirrorParams) -> complex:
    """Derivative of the conjugated map: lambda = s_at / s_re."""
    s_at, s_re = _conjugacy_pair(params)
    return s_at / s_re


def rotation_angle(params: MirrorParams) -> float:
    """Rotation angle theta in (0, 2*pi) of the elliptic reduced map.

    With delta < 0 the multiplier lies on the unit circle and equals
    exp(i*theta) with theta = 2*atan2(sqrt(-delta), E_total).
    """
    delta = float(params.delta)
    if delta >= 0:
        raise DiscriminantError("not elliptic: discriminant is nonnegative")
    return 2 * math.atan2(math.sqrt(-delta), float(params.E_total))


def _convergents(x: float, b_max: int):
    """Continued-fraction convergents a/b of x with b <= b_max."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    y = x
    for _ in range(64):
        a = math.floor(y)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > b_max:
            return
        yield p1, q1
        frac = y - a
        if frac <= 1e-17:
            return
        y = 1 / frac


@dataclass(frozen=True)
class RationalPeriod:
    """Detected rational rotation number a/b and the orbit period T."""

    a: int
    b: int
    T: float


def period(
    params: MirrorParams,
    k: Optional[Number] = None,
    b_max: int = 10_000,
    tol: float = 1e-9,
) -> Optional[RationalPeriod]:
    """Detect a rational rotation number and return the orbit period.

    Scans continued-fraction convergents of theta/(2*pi) for a reduced
    fraction a/b with b <= b_max within tol, then confirms the candidate by
    actually iterating the map b steps before reporting

        T = 2 * k * b * mu / (mu - E_total**2).

    Returns None when no confirmed rational rotation exists within bounds.
    """
    k_value = params.k if k is None else k
    theta = rotation_angle(params)  # raises unless delta < 0
    x = theta / (2 * math.pi)
    for a, b in _convergents(x, b_max):
        if a == 0 or a >= b:
            continue
        if abs(x - a / b) > tol:
            continue
        if _confirm_cycle(params, b):
            if k_value is None:
                raise ValueError(
                    "motion constant k required to compute the period time"
                )
            mu = float(params.mu)
            e = float(params.E_total)
            return RationalPeriod(
                a=a, b=b, T=2 * float(k_value) * b * mu / (mu - e * e)
            )
    return None


def _confirm_cycle(params: MirrorParams, b: int) -> bool:
    """Check sigma returns to itself after b map iterations from a few
    generic starting points (skipping ones whose orbit grazes the pole)."""
    fparams = MirrorParams(float(params.mu), float(params.E_total))
    for offset in (0.6180339887498949, 1.4142135623730951, 2.718281828459045):
        sigma0 = fparams.E_total * offset
        sigma = sigma0
        try:
            for _ in range(b):
                sigma = reduced_map(sigma, fparams)
        except PoleError:
            continue
        return abs(sigma - sigma0) <= 1e-9 * max(1.0, abs(sigma0))
    return False


def tachyonic_predicate(sigma1: Number, params: MirrorParams) -> bool:
    """Whether the collision entered with this sigma1 is tachyonic:
    0 < sigma1 * (sigma1 - 2*E_total) (strict; the boundary is not)."""
    return sigma1 * (sigma1 - 2 * params.E_total) > 0


def classify_tachyonic(
    params: MirrorParams, sigma1_0: Number
) -> TachyonicCount:
    """How many tachyonic collisions the full solution through sigma1_0 has.

    delta < 0: infinitely many. delta >= 0: exactly two consecutive ones
    iff (sigma1_0 - E_total)**2 > delta, none otherwise. Initial data
    sitting exactly on a fixed point is stationary and classified by its
    own predicate value, i.e. NONE.
    """
    delta = params.delta
    if delta < 0:
        return TachyonicCount.INFINITELY_MANY
    gap = sigma1_0 - params.E_total
    if gap * gap > delta:
        return TachyonicCount.EXACTLY_TWO_CONSECUTIVE
    return TachyonicCount.NONE


@dataclass(frozen=True)
class LimitVelocities:
    """Asymptotic velocities of particle 1 in the far past and future."""

    past: float
    future: float
    note: Optional[str] = None


def limit_velocities(params: MirrorParams) -> LimitVelocities:
    """Escape velocities for delta >= 0: particle 1 comes in from -infinity
    at +sqrt(delta)/|E_total| and leaves toward -infinity at the opposite
    value. At delta = 0 both limits are zero, approached one-sidedly
    (0+ in the past, 0- in the future): the bounce at zero speed.
    """
    delta = float(params.delta)
    if delta < 0:
        raise DiscriminantError(
            "no limit velocities: negative discriminant (bounded orbits)"
        )
    if delta == 0:
        return LimitVelocities(
            past=0.0,
            future=0.0,
            note="bounce at zero speed: past -> 0+, future -> 0-",
        )
    v = math.sqrt(delta) / abs(float(params.E_total))
    return LimitVelocities(past=v, future=-v)


def limit_products(
    params: MirrorParams, initial: MirrorState
) -> tuple[float, float]:
    """Limits of x1 * E2 in the far past and future (delta >= 0).

    Both equal k times a fixed point of the reduced map: the repeller for
    the past, the attractor for the future; they coincide at delta = 0.
    """
    if float(params.delta) < 0:
        raise DiscriminantError(
            "no product limits: negative discriminant (bounded orbits)"
        )
    fp = fixed_points(params)
    k0 = float(
        motion_constant(initial.x1, initial.E2, initial.sigma1)
    )
    return k0 * fp.repelling, k0 * fp.attracting


def kappa_from_initial(initial: MirrorState) -> Number:
    """Scale parameter kappa = -2 * E2_0 / sigma1_0 of the collision bound."""
    return -2 * initial.E2 / initial.sigma1


def tachyon_scale_bound(params: MirrorParams, kappa: Number) -> Number:
    """Upper bound 4 * kappa * E_total**2 / mu on x1_n / x1_0 over all
    tachyonic collisions, valid for delta >= -E_total**2 (mu <= 2*E_total**2).
    """
    e2 = params.E_total * params.E_total
    if not params.delta >= -e2:
        raise DiscriminantError(
            "bound requires delta >= -E_total**2 (i.e. mu <= 2*E_total**2)"
        )
    if kappa < 0:
        raise ValueError(
            "bound requires kappa >= 0 (solutions with tachyonic collisions "
            "have kappa > 0)"
        )
    return 4 * kappa * e2 / params.mu


def billiard_from_mirror(
    params: MirrorParams, state: MirrorState
) -> BilliardState:
    """The full four-particle state just after the given collision.

    Particles 1 and 2 sit together at x1 (the collision just resolved),
    particle 2 now moving right at light speed; particles 3 and 4 mirror
    them at -x1. Exact negations keep the configuration bit-for-bit
    symmetric, which is what makes the paired collisions land at exactly
    equal times in the event simulator.
    """
    sigma1, E2, x1 = state.sigma1, state.E2, state.x1
    if sigma1 == 0:
        raise ConfigError("sigma1 must be nonzero")
    if not x1 < 0:
        raise ConfigError("x1 must be negative")
    if E2 == 0:
        raise ConfigError("inner particles cannot carry zero energy")
    rho1 = params.mu / sigma1
    E1 = (sigma1 + rho1) / 2
    P1 = (sigma1 - rho1) / 2
    outer_left = ParticleState(E=E1, P=P1, mu=params.mu, x=x1, label=0)
    inner_right_mover = massless(E2, +1, x=x1, label=1)
    inner_left_mover = massless(E2, -1, x=-x1, label=2)
    outer_right = ParticleState(E=E1, P=-P1, mu=params.mu, x=-x1, label=3)
    return BilliardState(
        (outer_left, inner_right_mover, inner_left_mover, outer_right),
        t=state.t,
    )


def reduced_states_from_events(
    events: list[CollisionEvent], start: MirrorState
) -> list[MirrorState]:
    """Extract the reduced-coordinate sequence from a four-particle event log.

    Each collision of the leftmost pair (0, 1) yields the next collision
    state: post-collision sigma of particle 0, post-collision energy of
    particle 1, and the event's position and time.
    """
    out = []
    n = start.n
    for event in events:
        if event.pair != (0, 1):
            continue
        n += 1
        post0, post1 = event.post
        out.append(
            MirrorState(
                n=n,
                sigma1=post0.E + post0.P,
                E2=post1.E,
                x1=event.x,
                t=event.t,
            )
        )
    return out
