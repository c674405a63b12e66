"""Analytic depth bounds for the trotterized walk.

The Trotter error of r steps of an order-q formula is controlled by the sum
of spectral norms of all (q+1)-fold nested commutators of the two evolution
generators.  For the walk pair that sum admits the closed bound
2(n+1)(2*alpha*(n+1)+1)^q, which propagates into a circuit-depth bound and,
after optimizing the order, a closed-form depth of roughly
2^(n/2 + sqrt(2 n log2(5))).  All formula evaluation happens in natural-log
space: the raw magnitudes pass 1e90 well before n = 68.

epsilon throughout this module is a spectral-norm budget on
||U(t) - S_q^r(t/r)||_2.  The numeric depth search elsewhere uses an
overlap-deficit budget that happens to share the symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import ceil, exp, log, pi, sqrt
from typing import NamedTuple

import numpy as np

from . import ctqw, symspace, trotter

LN2 = log(2.0)
LN5 = log(5.0)


def _check_positive(**kwargs) -> None:
    for name, value in kwargs.items():
        if value <= 0:
            raise ValueError(f"{name} must be positive, got {value}")


def delta_bound(n: int, q: int) -> float:
    """Closed-form bound 2(n+1)(2*alpha*(n+1)+1)^q on the commutator sum."""
    symspace._check_n(n)
    if not isinstance(q, (int, np.integer)) or q < 1:
        raise ValueError(f"order must be an integer >= 1, got {q!r}")
    return exp(ln_delta_bound(n, q))


def ln_delta_bound(n: int, q: int) -> float:
    a = ctqw.alpha_star(n)
    return LN2 + log(n + 1.0) + q * log(2.0 * a * (n + 1.0) + 1.0)


def delta_exact(n: int, q: int) -> float:
    """Brute-force commutator sum: enumerate all (q+1)-index sequences.

    Generators are H1 = -i*H_0 and H2 = -i*alpha**H_x in the symmetric
    subspace.  Sequences whose two innermost indices coincide vanish
    identically but are enumerated anyway.  Cost grows as 2^(q+1), hence
    the order guard.
    """
    symspace._check_n(n)
    if not isinstance(q, (int, np.integer)) or q < 1:
        raise ValueError(f"order must be an integer >= 1, got {q!r}")
    if q > 4:
        raise ValueError(f"exact commutator sum limited to q <= 4, got {q}")
    h1 = -1j * symspace.build_h0(n).entries
    h2 = -1j * ctqw.alpha_star(n) * symspace.build_hx(n).entries
    gens = (h1, h2)
    total = 0.0
    for seq in product((0, 1), repeat=q + 1):
        nested = gens[seq[0]]
        for idx in seq[1:]:
            g = gens[idx]
            nested = g @ nested - nested @ g
        total += float(np.linalg.norm(nested, 2))
    return total


def trotter_error_bound(q: int, delta: float, t: float, r: int, stages: int) -> float:
    """Spectral-error bound 2*stages^(q+1)*delta*t^(q+1) / (r^q (q+1))."""
    _check_positive(q=q, delta=delta, t=t, r=r, stages=stages)
    return exp(ln_trotter_error_bound(q, log(delta), t, r, stages))


def ln_trotter_error_bound(q: int, ln_delta: float, t: float, r: float, stages: int) -> float:
    return LN2 + (q + 1) * log(stages) + ln_delta + (q + 1) * log(t) - q * log(r) - log(q + 1.0)


def p0(n: int, q: float) -> float:
    """Depth prefactor pi*(2*alpha*(n+1)+1) / (2*5^(3/2)*(q+1)^(1/q)); below 1/2."""
    a = ctqw.alpha_star(n)
    return pi * (2.0 * a * (n + 1.0) + 1.0) / (2.0 * 5.0**1.5 * (q + 1.0) ** (1.0 / q))


@dataclass(frozen=True)
class DepthEstimate:
    """Analytic depth bound and its ingredients for one (n, q, epsilon)."""

    n: int
    q: int
    epsilon: float
    delta_bound: float
    p0: float
    p_analytic: float
    log2_p: float


def analytic_depth(n: int, q: int, epsilon: float) -> DepthEstimate:
    """Depth bound solving the error equation for p at t = t*.

    Evaluated twice in log-space: directly from the error bound, and in the
    prefactor form p0*sqrt(2^n)*(2*pi*(n+1)*sqrt(2^n)/(5*epsilon))^(1/q)*5^q.
    The two are the same expression algebraically, so any disagreement past
    1e-9 relative indicates an internal defect and raises.
    """
    trotter._check_order(q)
    _check_positive(epsilon=epsilon)
    stages = trotter.stage_count(q)
    ln_d = ln_delta_bound(n, q)
    ts = ctqw.t_star(n)
    # direct inversion of the error bound: p = stages * r
    ln_p_direct = (
        (2.0 + 1.0 / q) * log(stages)
        + (LN2 + ln_d) / q
        + (1.0 + 1.0 / q) * log(ts)
        - (log(epsilon) + log(q + 1.0)) / q
    )
    pre = p0(n, q)
    ln_p_prefactor = (
        log(pre) + 0.5 * n * LN2 + (log(2.0 * pi * (n + 1.0)) + 0.5 * n * LN2 - log(5.0 * epsilon)) / q + q * LN5
    )
    if abs(ln_p_direct - ln_p_prefactor) > 1e-9 * max(1.0, abs(ln_p_direct)):
        raise RuntimeError(
            f"depth forms disagree: ln p = {ln_p_direct!r} vs {ln_p_prefactor!r} at (n={n}, q={q}, eps={epsilon})"
        )
    return DepthEstimate(
        n=n,
        q=q,
        epsilon=epsilon,
        delta_bound=exp(ln_d),
        p0=pre,
        p_analytic=exp(ln_p_direct),
        log2_p=ln_p_direct / LN2,
    )


class OrderEstimate(NamedTuple):
    """Unconstrained depth-optimal order and its even rounding."""

    q_real: float
    q_even: int


def optimal_order(n: int, epsilon: float) -> OrderEstimate:
    """Order minimizing the analytic depth, and the even integer used in practice."""
    symspace._check_n(n)
    _check_positive(epsilon=epsilon)
    radicand = (0.5 * n * LN2 + log(2.0 * pi * (n + 1.0)) - log(5.0 * epsilon)) / LN5
    if radicand <= 0:
        raise ValueError(f"order formula undefined: non-positive radicand {radicand} (epsilon too large)")
    q_real = sqrt(radicand)
    q_even = max(2, 2 * round(q_real / 2.0))
    return OrderEstimate(q_real, q_even)


def analytic_depth_closed(n: int, epsilon: float) -> float:
    """Order-optimized closed form p0*(2*pi*(n+1)/(5*eps))^(2/q)*2^(n/2+sqrt(2n*log2(5)))."""
    q_real = optimal_order(n, epsilon).q_real
    ln_p = (
        log(p0(n, q_real))
        + (2.0 / q_real) * log(2.0 * pi * (n + 1.0) / (5.0 * epsilon))
        + 0.5 * n * LN2
        + sqrt(n) * sqrt(2.0 * LN5 / LN2) * LN2
    )
    return exp(ln_p)


def required_steps(n: int, q: int, epsilon: float) -> int:
    """Smallest step count r whose error bound at t = t* is within epsilon."""
    trotter._check_order(q)
    _check_positive(epsilon=epsilon)
    stages = trotter.stage_count(q)
    ln_d = ln_delta_bound(n, q)
    ts = ctqw.t_star(n)
    ln_r = (LN2 + (q + 1) * log(stages) + ln_d + (q + 1) * log(ts) - log(q + 1.0) - log(epsilon)) / q
    r = max(1, ceil(exp(ln_r)))
    # guard the float fence: enforce the defining inequality exactly
    while ln_trotter_error_bound(q, ln_d, ts, r, stages) > log(epsilon):
        r += 1
    while r > 1 and ln_trotter_error_bound(q, ln_d, ts, r - 1, stages) <= log(epsilon):
        r -= 1
    return r


def spectral_error(n: int, q: int, t: float, r: int, alpha: float | None = None) -> float:
    """Measured ||U(alpha, t) - S_q^r(t/r)||_2 (largest singular value).

    Global-phase sensitive by construction, matching the bound's norm.
    """
    if alpha is None:
        alpha = ctqw.alpha_star(n)
    u = symspace.evolution_operator(ctqw.walk_hamiltonian(n, alpha), t)
    s = symspace.matrix_power(trotter.step_operator(n, q, t, r, alpha), r)
    return float(np.linalg.svd(u.entries - s.entries, compute_uv=False)[0])
