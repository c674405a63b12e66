"""Suzuki product formulas for the walk Hamiltonian, grouped into QAOA form.

A step of the order-q formula approximates exp(-i(alpha*H_x + H_0)*tau) by an
ordered product of cost exponentials exp(-i*c*H_0) and mixer exponentials
exp(-i*c*alpha*H_x).  Factor lists store pure time coefficients (alpha enters
when operators are built) in application order: the first factor hits the
state first.  Merging adjacent same-generator factors across r steps yields
an alternating sequence, i.e. a QAOA circuit of depth p = r * 5^(q/2-1); the
leading half-mixer acts on |+>^n as a global phase, which is how the grouped
sequence and the depth-p ansatz coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import ctqw, symspace
from .symspace import COST, MIXER, SymOperator, SymVector

Factor = tuple[str, float]


def stage_count(q: int) -> int:
    """Number of (mixer, cost) stages per step: 5^(q/2 - 1)."""
    _check_order(q)
    return 5 ** (q // 2 - 1)


def _check_order(q: int) -> None:
    if not isinstance(q, (int, np.integer)) or q < 2 or q % 2 != 0:
        raise ValueError(f"formula order must be an even integer >= 2, got {q!r}")


def _check_steps(r: int) -> None:
    if not isinstance(r, (int, np.integer)) or r < 1:
        raise ValueError(f"step count must be an integer >= 1, got {r!r}")


def u_coefficient(k: int) -> float:
    """Recursion weight u_k = 1/(4 - 4^(1/(2k-1))) of the order doubling."""
    return 1.0 / (4.0 - 4.0 ** (1.0 / (2 * k - 1)))


def suzuki_coefficients(q: int, t: float) -> list[Factor]:
    """Exponent factors of one order-q step over time t, before grouping.

    Order 2 is the symmetric split [mixer t/2, cost t, mixer t/2]; each
    order doubling replaces a step with five scaled copies of the previous
    order, two at u_k*t on each side of one at (1-4u_k)*t.  Coefficients of
    the middle copies are negative from order 4 on.
    """
    _check_order(q)
    if q == 2:
        return [(MIXER, t / 2.0), (COST, t), (MIXER, t / 2.0)]
    u = u_coefficient(q // 2)
    outer = suzuki_coefficients(q - 2, u * t)
    middle = suzuki_coefficients(q - 2, (1.0 - 4.0 * u) * t)
    return outer + outer + middle + outer + outer


def merge_adjacent(factors: Sequence[Factor]) -> list[Factor]:
    """Combine neighbouring factors that share a generator."""
    merged: list[Factor] = []
    for tag, coeff in factors:
        if merged and merged[-1][0] == tag:
            merged[-1] = (tag, merged[-1][1] + coeff)
        else:
            merged.append((tag, coeff))
    return merged


@dataclass(frozen=True)
class ProductFormula:
    """Grouped exponent-factor sequence for r steps of an order-q formula."""

    q: int
    r: int
    t: float
    factors: tuple[Factor, ...]
    stages: int

    @property
    def depth(self) -> int:
        """QAOA depth p = r * stages = number of cost factors."""
        return self.r * self.stages


def group_sequence(q: int, r: int, t: float) -> ProductFormula:
    """Concatenate r steps at t/r each and merge across step boundaries.

    The result alternates mixer/cost factors, starting and ending on a
    mixer, with per-generator coefficients summing to t.
    """
    _check_order(q)
    _check_steps(r)
    step = suzuki_coefficients(q, t / r)
    factors = merge_adjacent(step * r)
    return ProductFormula(q=q, r=int(r), t=t, factors=tuple(factors), stages=stage_count(q))


def _mixer_eigensystem(n: int):
    return symspace.hermitian_eigensystem(symspace.build_hx(n))


def apply_factors(n: int, factors: Sequence[Factor], alpha: float, state: SymVector | None = None) -> SymVector:
    """Apply an exponent-factor sequence to a state in the symmetric subspace."""
    if state is None:
        state = symspace.plus_state(n)
    w, v = _mixer_eigensystem(n)
    amp = state.amp.copy()
    for tag, tau in factors:
        if tag == COST:
            amp[0] = amp[0] * np.exp(-1j * tau)
        elif tag == MIXER:
            amp = v @ (np.exp(-1j * alpha * tau * w) * (v.conj().T @ amp))
        else:
            raise ValueError(f"unknown generator tag {tag!r}")
    return SymVector(n, amp)


def factors_operator(n: int, factors: Sequence[Factor], alpha: float) -> SymOperator:
    """Operator realized by an exponent-factor sequence (first factor rightmost)."""
    w, v = _mixer_eigensystem(n)
    op = np.eye(n + 1, dtype=complex)
    for tag, tau in factors:
        if tag == COST:
            phases = np.ones(n + 1, dtype=complex)
            phases[0] = np.exp(-1j * tau)
            op = phases[:, None] * op
        elif tag == MIXER:
            op = (v * np.exp(-1j * alpha * tau * w)) @ (v.conj().T @ op)
        else:
            raise ValueError(f"unknown generator tag {tag!r}")
    return SymOperator(n, op)


def step_operator(n: int, q: int, t: float, r: int, alpha: float | None = None) -> SymOperator:
    """One Trotter step S_q(t/r) as an (n+1)x(n+1) unitary.

    alpha defaults to the resonant coupling for n.
    """
    _check_steps(r)
    if alpha is None:
        alpha = ctqw.alpha_star(n)
    step = merge_adjacent(suzuki_coefficients(q, t / r))
    return factors_operator(n, step, alpha)


def trotterized_state(n: int, q: int, t: float, r: int, alpha: float | None = None) -> SymVector:
    """S_q^r(t/r)|+>^n via binary powering of the step operator."""
    u = symspace.matrix_power(step_operator(n, q, t, r, alpha), r)
    return SymVector(n, u.entries @ symspace.plus_state(n).amp)


def overlap_trace(
    n: int,
    q: int,
    t: float,
    r: int,
    samples: int,
    spacing: str = "linear",
    alpha: float | None = None,
) -> list[tuple[int, float]]:
    """Target overlap after prefixes of the r-step sequence.

    Returns (steps_applied, overlap) pairs at `samples` prefix lengths from
    0 to r, spaced linearly or geometrically.  Prefix powers reuse cached
    squarings of the step operator, so the cost is O(samples * log r)
    matrix products rather than O(r).
    """
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    if spacing == "linear":
        points = np.unique(np.rint(np.linspace(0, r, samples)).astype(np.int64))
    elif spacing == "geometric":
        interior = np.geomspace(1, r, samples - 1)
        points = np.unique(np.concatenate(([0], np.rint(interior)))).astype(np.int64)
    else:
        raise ValueError(f"spacing must be 'linear' or 'geometric', got {spacing!r}")
    step = step_operator(n, q, t, r, alpha)
    squarings = [step.entries]
    while 2 ** len(squarings) <= r:
        last = squarings[-1]
        squarings.append(symspace._nearest_unitary(last @ last))
    plus = symspace.plus_state(n).amp
    out = []
    for m in points.tolist():
        psi = plus
        e, bit = int(m), 0
        while e > 0:
            if e & 1:
                psi = squarings[bit] @ psi
            e >>= 1
            bit += 1
        out.append((m, float(abs(psi[0]) ** 2)))
    return out


def block_times(q: int, t: float, r: int) -> np.ndarray:
    """Durations t_k of the p = r*stages order-2 blocks making up S_q^r(t/r)."""
    _check_order(q)
    _check_steps(r)

    def times(order: int, tau: float) -> list[float]:
        if order == 2:
            return [tau]
        u = u_coefficient(order // 2)
        side = times(order - 2, u * tau)
        mid = times(order - 2, (1.0 - 4.0 * u) * tau)
        return side + side + mid + side + side

    per_step = times(q, t / r)
    return np.array(per_step * r)


@dataclass(frozen=True)
class QaoaAngles:
    """Alternating cost/mixer angles recovered from a product formula.

    gammas are the cost angles (one full block duration each); betas are the
    mixer angles (merged half-durations of adjacent blocks, bare times: the
    coupling alpha multiplies them when the circuit is applied).  The
    sequence starts with a leading mixer half-angle that reduces to a global
    phase on |+>^n; it is kept so the angle set reproduces the formula
    exactly as an operator.
    """

    p: int
    gammas: np.ndarray
    betas: np.ndarray
    block_times: np.ndarray

    @property
    def leading_mixer_half(self) -> float:
        return float(self.block_times[0] / 2.0)


def qaoa_angles(q: int, t: float, r: int) -> QaoaAngles:
    """Recover depth-p QAOA angles from the grouped order-q formula."""
    tk = block_times(q, t, r)
    p = len(tk)
    betas = np.empty(p)
    betas[:-1] = (tk[:-1] + tk[1:]) / 2.0
    betas[-1] = tk[-1] / 2.0
    return QaoaAngles(p=p, gammas=tk.copy(), betas=betas, block_times=tk)


def _angles_to_factors(angles: QaoaAngles) -> list[Factor]:
    factors: list[Factor] = [(MIXER, angles.leading_mixer_half)]
    for gamma, beta in zip(angles.gammas, angles.betas):
        factors.append((COST, float(gamma)))
        factors.append((MIXER, float(beta)))
    return factors


def apply_qaoa_angles(n: int, angles: QaoaAngles, alpha: float | None = None) -> SymVector:
    """Run the alternating-ansatz circuit from recovered angles on |+>^n."""
    if alpha is None:
        alpha = ctqw.alpha_star(n)
    return apply_factors(n, _angles_to_factors(angles), alpha)


def angles_operator(n: int, angles: QaoaAngles, alpha: float | None = None) -> SymOperator:
    """Full operator of the recovered-angle circuit, leading half included."""
    if alpha is None:
        alpha = ctqw.alpha_star(n)
    return factors_operator(n, _angles_to_factors(angles), alpha)


def phase_aligned_distance(a: SymOperator, b: SymOperator) -> float:
    """Spectral distance min over global phase of ||a - e^(i phi) b||_2."""
    tr = np.trace(b.entries.conj().T @ a.entries)
    phase = tr / abs(tr) if abs(tr) > 0 else 1.0
    return float(np.linalg.svd(a.entries - phase * b.entries, compute_uv=False)[0])
