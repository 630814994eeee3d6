"""Dispersions of photon-subtracted coherent states at t = 0 and their localization in time.

Run with ``python demos/photon_subtraction.py``.
"""
import numpy as np

from morse_squeezed import (
    DpscsSpec, ModelParams, build_xd_pd, dispersions, dpscs_matrix_oracle, dpscs_state,
    overlap, revival_period, trajectory, uncertainty_product,
)

params = ModelParams(10)
Xd, Pd = build_xd_pd(params)

# The closed-form amplitudes coincide with applying A m times to the coherent state.
spec = DpscsSpec(1.0, np.pi / 4, 4)
print("formula vs A^m overlap:", overlap(dpscs_state(spec, params), dpscs_matrix_oracle(spec, params)))

print("\nalpha   m   var_x    var_p    delta_xp")
for alpha in (0.25, 1.0, 2.0):
    for m in (0, 2, 4, 8):
        psi = dpscs_state(DpscsSpec(alpha, 0.0, m), params)
        vx, vp = dispersions(psi, Xd, Pd)
        print(f"{alpha:5.2f}  {m:2d}  {vx:7.4f}  {vp:7.4f}  {uncertainty_product(psi, Xd, Pd):8.4f}")

t = np.linspace(0, revival_period(params), 2000)
for m in (0, 8):
    d = trajectory(dpscs_state(DpscsSpec(1.0, 0.0, m), params), t, params, Xd, Pd).delta_xp
    print(f"m={m}: largest uncertainty product over a period {d.max():.4f}")
