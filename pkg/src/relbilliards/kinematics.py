"""Free relativistic particles with energy and mass of arbitrary sign.

Units have the speed of light equal to 1. A free particle carries energy
``E != 0``, momentum ``P = E*v`` and squared mass ``mu = E**2 - P**2``;
``mu`` may be negative (tachyons, |v| > 1). The squared mass is stored
redundantly so that floating-point drift of ``E**2 - P**2 - mu`` stays an
observable diagnostic instead of being silently absorbed.

The light-cone coordinates ``sigma = E + P`` and ``rho = E - P`` satisfy
``sigma * rho = mu`` and are the natural variables for collision
resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import DegenerateKinematicsError, ZeroEnergyError
from .numeric import REL_TOL, Number, is_exact


def velocity(E: Number, P: Number) -> Number:
    """Velocity v = P/E of a free particle."""
    if E == 0:
        raise ZeroEnergyError("undefined velocity: particle has zero energy")
    return P / E


def velocity_from_sigma(sigma: Number, mu: Number) -> Number:
    """Velocity from one light-cone coordinate and the squared mass.

    Computes (sigma**2 - mu) / (sigma**2 + mu), which equals P/E whenever
    sigma and mu come from the same particle.
    """
    s2 = sigma * sigma
    denom = s2 + mu
    if denom == 0:
        raise DegenerateKinematicsError(
            "degenerate kinematics: sigma**2 + mu = 0"
        )
    return (s2 - mu) / denom


def spin_velocity(m: Number, E: Number) -> Number:
    """Watch-hand rate m/E for a chosen signed square root m of mu.

    Satisfies S**2 = 1 - v**2 for |v| < 1; the sign distinguishes the two
    square roots once the energy sign is fixed. A massless particle has a
    stopped watch (S = 0).
    """
    if E == 0:
        raise ZeroEnergyError("undefined spin velocity: zero energy")
    return m / E


@dataclass(frozen=True)
class SigmaRho:
    """Light-cone coordinates (sigma, rho) = (E + P, E - P)."""

    sigma: Number
    rho: Number

    @classmethod
    def from_energy_momentum(cls, E: Number, P: Number) -> "SigmaRho":
        return cls(E + P, E - P)

    @property
    def energy(self) -> Number:
        return (self.sigma + self.rho) / 2

    @property
    def momentum(self) -> Number:
        return (self.sigma - self.rho) / 2

    @property
    def mass_squared(self) -> Number:
        return self.sigma * self.rho

    @property
    def velocity(self) -> Number:
        return velocity(self.energy, self.momentum)


@dataclass(frozen=True)
class ParticleState:
    """One free particle: energy, momentum, stored squared mass, position.

    ``mu`` must agree with E**2 - P**2 on construction (exactly in exact
    mode, to 1e-12 relative in float mode). During evolution the stored
    value is carried through collisions unchanged while E and P pick up
    rounding noise, so ``mass_drift`` measures the accumulated error; it
    is reported, never corrected. States rebuilt internally from
    light-cone coordinates (which conserve the product exactly) use a
    loose sanity bound instead of the strict construction tolerance,
    since dynamics that pass near a resolution pole legitimately amplify
    the drift beyond fresh-data levels.
    """

    E: Number
    P: Number
    mu: Number
    x: Number
    label: int = 0
    _drift_tol: float = field(default=REL_TOL, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.E == 0:
            raise ZeroEnergyError(
                f"particle {self.label}: energy must be nonzero"
            )
        drift = self.E * self.E - self.P * self.P - self.mu
        if is_exact(drift):
            if drift != 0:
                raise ValueError(
                    f"particle {self.label}: mu != E**2 - P**2 (off by {drift})"
                )
        else:
            scale = float(
                self.E * self.E + self.P * self.P + abs(self.mu)
            )
            if abs(float(drift)) > self._drift_tol * scale:
                raise ValueError(
                    f"particle {self.label}: mu inconsistent with E, P "
                    f"(drift {float(drift):.3e} at scale {scale:.3e})"
                )

    @property
    def velocity(self) -> Number:
        return self.P / self.E

    def mass_drift(self) -> Number:
        """Current value of E**2 - P**2 - mu (diagnostic, never corrected)."""
        return self.E * self.E - self.P * self.P - self.mu

    def sigma_rho(self) -> SigmaRho:
        return SigmaRho(self.E + self.P, self.E - self.P)

    def moved(self, dt: Number) -> "ParticleState":
        """The same particle after free flight for a time dt."""
        return replace(self, x=self.x + self.velocity * dt)

    def with_position(self, x: Number) -> "ParticleState":
        return replace(self, x=x)

    def momentum_reversed(self) -> "ParticleState":
        """Time-reversal image: P -> -P, everything else unchanged."""
        return replace(self, P=-self.P)

    @classmethod
    def from_sigma_rho(
        cls,
        sr: SigmaRho,
        x: Number,
        label: int = 0,
        mu: Number | None = None,
    ) -> "ParticleState":
        """Build a particle from light-cone data, optionally carrying a
        previously stored squared mass through unchanged. Uses the loose
        drift bound: this is the internal evolution path."""
        if mu is None:
            mu = sr.mass_squared
        return cls(
            E=sr.energy, P=sr.momentum, mu=mu, x=x, label=label,
            _drift_tol=1e-6,
        )


def to_sigma_rho(p: ParticleState) -> SigmaRho:
    return p.sigma_rho()


def from_sigma_rho(sr: SigmaRho) -> tuple[Number, Number]:
    """Inverse linear map back to (E, P)."""
    return sr.energy, sr.momentum


def massless(
    E: Number, direction: int, x: Number = 0.0, label: int = 0
) -> ParticleState:
    """A massless particle moving at light speed in the given direction (+-1).

    P is set to ``direction * E`` exactly, so |velocity| == 1 holds
    bit-for-bit and the stored mu is exactly zero.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    return ParticleState(E=E, P=direction * E, mu=E - E, x=x, label=label)
