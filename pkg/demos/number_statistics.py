"""Photon-number statistics of the squeezed vacuum and photon-subtracted states.

Run with ``python demos/number_statistics.py``.
"""
import numpy as np

from morse_squeezed import DpscsSpec, ModelParams, dpscs_state, loqcs_closed_form, number_stats

params = ModelParams(10)

# The squeezed vacuum only populates even levels, and its Mandel ratio
# grows with the squeeze parameter.
print("gamma   <n>      nv")
for gamma in np.linspace(0.1, 0.8, 8):
    s = number_stats(loqcs_closed_form(0.0, gamma, params))
    print(f"{gamma:5.2f}  {s.mean:7.4f}  {s.normalized_variance:7.4f}")

psi = loqcs_closed_form(0.0, 0.3, params)
print("\np_n at gamma = 0.3:", np.round(psi.probabilities, 5))

# Removing quanta from a deformed coherent state pushes the statistics
# below the Poissonian line.
print("\nalpha   " + "  ".join(f"m={m:<5d}" for m in (0, 2, 4, 8)))
for alpha in (0.25, 0.5, 1.0, 1.5, 2.0):
    row = [number_stats(dpscs_state(DpscsSpec(alpha, 0.0, m), params)).normalized_variance
           for m in (0, 2, 4, 8)]
    print(f"{alpha:5.2f}  " + "  ".join(f"{v:7.4f}" for v in row))
