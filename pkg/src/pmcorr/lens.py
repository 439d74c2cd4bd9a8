"""Standing-wave optical lens that imprints the probe's quadratic phase.

A sub-resonant standing wave focuses (or defocuses) the matter-wave beam
through the AC-Stark shift; near an intensity maximum the potential is
harmonic, so a short crossing acts as a thin lens.  The wavefront curvature
radius R acquired this way fixes the correlation parameter: matching the
quadratic phase m V_cm x^2 / (2 hbar R) to gamma x^2 / (2 sigma0^2) gives
gamma = m V_cm sigma0^2 / (hbar R).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .constants import HBAR, PLANCK_H


@dataclass(frozen=True)
class LensSpec:
    """Laser and beam parameters of the focusing stage."""

    omega0: float      # rad/s, peak Rabi frequency
    wavelength: float  # m
    detuning: float    # rad/s, laser frequency minus resonance
    v_cm: float        # m/s, center-of-mass speed
    t_int: float       # s, effective interaction time

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be > 0, got {self.omega0}")
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be > 0, got {self.wavelength}")
        if not self.v_cm > 0:
            raise ValueError(f"v_cm must be > 0, got {self.v_cm}")
        if not self.t_int > 0:
            raise ValueError(f"t_int must be > 0, got {self.t_int}")


class OpticalPotential(NamedTuple):
    full: float      # rad/s, -(1/2) sqrt(Omega^2 + delta^2)
    harmonic: float  # rad/s, small-x expansion around an intensity maximum


def rabi_profile(lens: LensSpec, x: float, z: float) -> float:
    """Rabi frequency of the standing wave at transverse x, longitudinal z."""
    envelope = math.exp(-math.pi * z**2 / (lens.v_cm * lens.t_int) ** 2)
    return lens.omega0 * math.cos(2.0 * math.pi * x / lens.wavelength) * envelope


def optical_potential(lens: LensSpec, x: float, z: float) -> OpticalPotential:
    """Ground-state light-shift potential (energy / hbar) and its harmonic companion."""
    omega = rabi_profile(lens, x, z)
    full = -0.5 * math.sqrt(omega**2 + lens.detuning**2)
    k = 2.0 * math.pi / lens.wavelength
    harmonic = 0.25 * lens.omega0 * k**2 * x**2 * (1.0 + (lens.detuning / lens.omega0) ** 2)
    return OpticalPotential(full=full, harmonic=harmonic)


def de_broglie(mass: float, v_cm: float) -> float:
    """de Broglie wavelength h/(m v) of the beam particles."""
    if not (mass > 0 and v_cm > 0):
        raise ValueError("mass and v_cm must be positive")
    return PLANCK_H / (mass * v_cm)


def focal_length(lens: LensSpec, mass: float) -> float:
    """Thin-lens focal length of one standing-wave crossing."""
    if not mass > 0:
        raise ValueError(f"mass must be > 0, got {mass}")
    lam_db = de_broglie(mass, lens.v_cm)
    return (
        lens.wavelength**2
        / (math.pi * lens.omega0 * lens.t_int * lam_db)
        * math.sqrt(1.0 + (lens.detuning / lens.omega0) ** 2)
    )


def gamma_from_curvature(mass: float, v_cm: float, curvature_radius: float, sigma0: float) -> float:
    """Correlation parameter from the wavefront curvature radius.

    Sign convention: R > 0 (diverging beam) gives gamma > 0.
    """
    if curvature_radius == 0:
        raise ValueError("curvature radius must be nonzero")
    if not (mass > 0 and v_cm > 0 and sigma0 > 0):
        raise ValueError("mass, v_cm and sigma0 must be positive")
    return mass * v_cm * sigma0**2 / (HBAR * curvature_radius)
