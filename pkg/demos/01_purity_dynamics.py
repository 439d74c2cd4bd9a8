"""Purity loss of a correlated fullerene wave packet in dilute air.

A C70-scale molecule leaves the source as a transverse Gaussian of width
7.8 nm with coherence length 50 nm.  Air molecules scatter off it at an
effective rate lam (m^-2 s^-1); each scattering event localizes the packet a
little, so the purity decays.  Position-momentum correlation gamma spreads
the packet faster, exposes it to more which-path information, and makes the
purity fall sooner - the effect the estimation protocol exploits.
"""
import numpy as np

import pmcorr as pc

probe = pc.fullerene_probe()
env = pc.EnvironmentSpec(lam=1e15)  # ~0.44 K bath at the reference air density

print(f"free-spreading time tau0 = {pc.tau0(probe) * 1e6:.3f} us")
print(f"initial purity (partially coherent source) = {pc.purity_exact(probe, env, 0.0):.4f}")
print(f"decoherence time over 100 nm at lam=1e15: {pc.decoherence_time(1e15, 1e-7) * 1e3:.1f} ms")
print()

times = np.logspace(-6, -3, 8)
gammas = (0.0, 10.0, 50.0)
print(f"{'t (us)':>10} " + " ".join(f"mu(g={g:g})" for g in gammas))
for t in times:
    row = [pc.purity_exact(probe.with_gamma(g), env, float(t)) for g in gammas]
    print(f"{t * 1e6:10.1f} " + " ".join(f"{mu:8.4f}" for mu in row))
print()

# the covariance route gives the same purity through det(cov) = 1/mu^2
t = 50e-6
cov = pc.covariance(probe, env, t)
print(f"at t = {t * 1e6:.0f} us: det(cov) = {cov.det:.6f}")
print(f"  purity via covariance  = {pc.purity_from_covariance(cov):.12f}")
print(f"  purity closed form     = {pc.purity_exact(probe, env, t):.12f}")
print(f"  cubic-term approximant = {pc.purity_approx(probe, env, t):.12f}")
