"""Physical constants and the reference fullerene scenario.

All quantities are SI.  The fullerene numbers describe a C70-scale molecule
beam collimated to a 50 nm coherence length, propagating through dilute air.
"""
from __future__ import annotations

HBAR = 1.054571817e-34      # J s
K_BOLTZMANN = 1.380649e-23  # J / K
PLANCK_H = 6.62607015e-34   # J s

# Reference probe / environment ("fullerene scenario")
FULLERENE_MASS = 1.2e-24          # kg
FULLERENE_SIGMA0 = 7.8e-9         # m, initial transverse width
FULLERENE_ELL0 = 5.0e-8           # m, source coherence length
FULLERENE_MOLECULE_SIZE = 7e-10   # m, scatterer-facing size of the molecule
AIR_MOLECULE_MASS = 5.0e-26       # kg
AIR_NUMBER_DENSITY = 1e12         # m^-3
