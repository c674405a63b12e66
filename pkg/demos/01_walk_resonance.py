#!/usr/bin/env python3
# Where the hypercube walk searches: tune the coupling to resonance and
# watch the target overlap rotate up over time t* ~ (pi/2) sqrt(2^n).

import numpy as np

from trotterwalk import ctqw

n = 14
alpha = ctqw.alpha_star(n)
ts = ctqw.t_star(n)

print(f"n = {n}")
print(f"resonant coupling alpha* = {alpha:.6f}  (~1/n = {1/n:.6f})")
print(f"rotation time t* = {ts:.2f}")

g = ctqw.gap(n)
print(f"gap: exact {g.gap_exact:.3e}, finite-sum formula {g.gap_formula:.3e}, asymptotic {g.gap_asymptotic:.3e}")

print("\noverlap with the target through the walk:")
for frac in np.linspace(0, 1.2, 13):
    ov = ctqw.ctqw_overlap(n, alpha, frac * ts)
    bar = "#" * int(50 * ov)
    print(f"  t = {frac:4.1f} t*   {ov:8.5f}  {bar}")

# off resonance the rotation never completes
for detune in (0.5, 2.0):
    ov = ctqw.ctqw_overlap(n, detune * alpha, ts)
    print(f"\nat {detune} * alpha*: overlap(t*) = {ov:.5f}")

pair = ctqw.low_eigenstates(n)
print(f"\ntwo-level picture: E+ - E- = {pair.energies[0] - pair.energies[1]:.3e}")
print(f"|<target|psi+>|^2 + |<target|psi->|^2 = "
      f"{abs(pair.psi_plus.amp[0])**2 + abs(pair.psi_minus.amp[0])**2:.4f}  (~1/2 + 1/2)")
