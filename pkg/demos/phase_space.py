"""Phase-space orbit of a squeezed vacuum over one revival period.

Run with ``python demos/phase_space.py``.
"""
import numpy as np

from morse_squeezed import ModelParams, build_xd_pd, loqcs_closed_form, revival_period, trajectory

params = ModelParams(10)
Xd, Pd = build_xd_pd(params)
T = revival_period(params)
t = np.linspace(0, T, 2001)

psi = loqcs_closed_form(0.0, 0.1, params)
traj = trajectory(psi, t, params, Xd, Pd)

print(f"revival period 2*pi*k = {T:.6f}")
print(f"var_x at t=0: {traj.var_x[0]:.4f}  (below 1/2: squeezed in x)")
i = int(np.argmin(traj.var_p))
print(f"smallest var_p: {traj.var_p[i]:.4f} at t = {t[i]:.3f}")
print(f"uncertainty product stays in [{traj.delta_xp.min():.4f}, {traj.delta_xp.max():.4f}]")
print(f"state after one period matches the start: x {traj.x_mean[-1]:.9f} vs {traj.x_mean[0]:.9f}")

print("\n     t      <x>      <p>")
for pt in list(traj)[::200]:
    print(f"{pt.t:8.3f}  {pt.x_mean:7.4f}  {pt.p_mean:7.4f}")
