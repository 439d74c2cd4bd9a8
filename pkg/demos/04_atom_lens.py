"""From laboratory laser settings to the correlation parameter.

A sub-resonant standing wave crossing the molecular beam acts as an array of
thin lenses: near each intensity maximum the light shift is harmonic, and a
short crossing imprints a quadratic phase on the wave packet.  The wavefront
curvature radius R this produces fixes gamma = m V_cm sigma0^2 / (hbar R):
diverging beams (R > 0) give positive correlations, converging ones negative.
"""
import pmcorr as pc

lens = pc.LensSpec(
    omega0=2e8,        # peak Rabi frequency, rad/s
    wavelength=532e-9,
    detuning=5e8,      # rad/s below resonance
    v_cm=100.0,        # beam speed, m/s
    t_int=1e-6,
)
mass, sigma0 = 1.2e-24, 7.8e-9

print(f"de Broglie wavelength of the beam: {pc.de_broglie(mass, lens.v_cm) * 1e12:.2f} pm")
print(f"thin-lens focal length: {pc.focal_length(lens, mass) * 1e3:.2f} mm")
print()

print("standing-wave profile across one period (z = 0):")
print(f"{'x/lambda':>9} {'Rabi (rad/s)':>14} {'U full (rad/s)':>15} {'U harmonic':>12}")
for frac in (0.0, 0.05, 0.1, 0.25):
    x = frac * lens.wavelength
    pot = pc.optical_potential(lens, x, 0.0)
    print(f"{frac:9.2f} {pc.rabi_profile(lens, x, 0.0):14.4e} {pot.full:15.4e} "
          f"{pot.harmonic:12.4e}")
print()

print("wavefront curvature -> correlation parameter:")
for radius in (1e-3, 1e-5, 1e-6, -1e-5, -1e-6):
    g = pc.gamma_from_curvature(mass, lens.v_cm, radius, sigma0)
    r = pc.pearson_from_gamma(g)
    kind = "diverging" if radius > 0 else "converging"
    print(f"  R = {radius * 1e6:9.1f} um ({kind:10s}): gamma = {g:9.2f}, Pearson r = {r:7.4f}")
