#!/usr/bin/env python3
# How short can the sequence actually be?  Refine the step count until the
# trotterized overlap matches the exact walk within an overlap budget, and
# compare against the analytic bound and the Grover baseline.

import math

from trotterwalk import bounds, ctqw, depthsearch

n, eps = 18, 0.01

print(f"n = {n}, overlap budget epsilon = {eps}")
print(f"reference walk overlap: {depthsearch.reference_overlap(n):.6f}")

print("\nnumeric minimal depth per formula order:")
best = None
for q in (2, 4, 6, 8):
    res = depthsearch.numeric_optimal_depth(n, q, eps)
    marker = ""
    if best is None or res.p_numerical < best.p_numerical:
        best, marker = res, "  <- shortest"
    print(f"  q={q}: p = {res.p_numerical:>8d}  (r = {res.r_final}, {res.evaluations} overlap evaluations){marker}")

analytic = bounds.analytic_depth_closed(n, eps)
grover_k = round(math.pi / (4 * math.asin(2.0 ** (-n / 2))) - 0.5)
print(f"\nnumeric best depth    : {best.p_numerical}")
print(f"analytic closed form  : {analytic:.3e}  (ratio {analytic / best.p_numerical:.0f})")
print(f"Grover iterations     : {grover_k}  (optimal baseline)")

print("\nsweep over a small grid (ratio = analytic / numeric):")
records, failures = depthsearch.ratio_sweep([14, 16, 18], [0.1, 0.01])
for rec in records:
    print(f"  n={rec.n} eps={rec.epsilon:5.2f}: q_best={rec.q} p_num={rec.p_numerical:>7d} ratio={rec.ratio:9.1f}")
assert not failures
