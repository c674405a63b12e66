#!/usr/bin/env python3
# The analytic depth machinery: commutator sums, error bound inversion,
# order optimization, and the closed-form growth 2^(n/2 + sqrt(2 n log2 5)).

import math

from trotterwalk import bounds

eps = 0.01

print("commutator sum vs its closed-form bound (q = 2):")
for n in (4, 8, 12, 16):
    print(f"  n={n:2d}: exact {bounds.delta_exact(n, 2):9.3f}   bound {bounds.delta_bound(n, 2):10.1f}")

print(f"\nanalytic depth at epsilon = {eps} (spectral budget):")
print("   n   q_real  q_even     p0        log2(p)   log2(p_closed)  r_required(q_even)")
for n in (16, 24, 32, 46, 68):
    order = bounds.optimal_order(n, eps)
    est = bounds.analytic_depth(n, order.q_even, eps)
    closed = bounds.analytic_depth_closed(n, eps)
    r = bounds.required_steps(n, order.q_even, eps)
    print(
        f"  {n:3d}  {order.q_real:6.2f}  {order.q_even:4d}    {est.p0:.4f}   {est.log2_p:8.2f}"
        f"   {math.log2(closed):10.2f}      {r:.3e}"
    )

print("\nhow much of the exponent is the subexponential overhead:")
for n in (16, 32, 68):
    overhead = math.sqrt(n) * math.sqrt(2 * math.log2(5))
    print(f"  n={n:2d}: n/2 = {n/2:5.1f}, sqrt-term = {overhead:5.1f}"
          f"  (Grover exponent would be {n/2:.1f})")
