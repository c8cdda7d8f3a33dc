"""Proximal-gradient solver for the l1-regularized quotient cost.

Each iteration takes a gradient step on the smooth quotient residual f and
a soft-threshold step for the l1 term:

    z_n = x_n - mu_n * g_n,   x_{n+1} = shrink(z_n, mu_n * lam).

The step size mu_n is a hybrid of the two spectral estimates built from
the last displacement dx = x_n - x_{n-1} and gradient change
dg = g_n - g_{n-1}: with s = dx.dg, the "steepest descent" value is
|dx|^2 / s and the "minimum residual" value is s / |dg|^2; the second is
used when it exceeds half the first, otherwise first minus half of
second.  Non-positive or degenerate outcomes fall back to the previous
step size.  A backtracking line search halves mu_n until

    f(x_{n+1}) < f(x_n) + dx_new . g_n + |dx_new|^2 / (2 mu_n)

holds, which (with the prox optimality of shrink) forces the composite
cost to be non-increasing over accepted iterations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .kernel import FlopCounter, gradient, shrink
from .metrics import squared_error

START_STEP = 0.2
MAX_BACKTRACKS = 60


class BacktrackingError(RuntimeError):
    """Raised when the line search keeps failing past the halving cap.

    Any step size below the reciprocal local Lipschitz bound must pass the
    search, so hitting the cap signals an inconsistent gradient or cost,
    not a legitimate solver state.
    """


@dataclass
class PgState:
    """Solver state between iterations.

    g_prev is the gradient at x_prev; after each step the just-used
    gradient moves there together with the old iterate.  The invariants
    y = 1/(||x||^2+1) and f = y * ||a x - b||^2 hold for the current x.
    """

    x_prev: np.ndarray
    x: np.ndarray
    g_prev: np.ndarray
    mu: float
    y: float
    f: float
    n: int
    flops: FlopCounter = field(default_factory=FlopCounter)
    backtracks_last: int = 0


@dataclass(frozen=True)
class TraceRecord:
    """One accepted iteration; rejected line-search trials only show up in
    the flop and backtrack counters."""

    iteration: int
    cost: float
    f: float
    mu: float
    backtracks: int
    flops: int
    sq_error: Optional[float]


@dataclass(frozen=True)
class SolveResult:
    x: np.ndarray
    trace: list[TraceRecord]


def pg_init(a: np.ndarray, b: np.ndarray, lam: float) -> tuple[PgState, np.ndarray, np.ndarray]:
    """First iterate from x_0 = 0 plus the cached products a^T a, a^T b.

    x_1 = shrink(-mu_0 * g_0, mu_0 * lam) with g_0 = -2 a^T b and the
    fixed start step mu_0 = 0.2.  The cached products make every later
    gradient an O(n * nnz) operation.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    if a.ndim != 2 or b.shape != (a.shape[0],):
        raise ValueError(f"dimension mismatch: a {a.shape}, b {b.shape}")
    m, n = a.shape
    flops = FlopCounter()
    ata = a.T @ a
    atb = a.T @ b
    flops.add(n * n * m + n * m)

    x0 = np.zeros(n)
    g0 = -2.0 * atb
    x1 = shrink(x0 - START_STEP * g0, START_STEP * lam)
    support = np.flatnonzero(x1)
    ax1 = a[:, support] @ x1[support] if support.size else np.zeros(m)
    y1 = 1.0 / (float(x1 @ x1) + 1.0)
    resid = ax1 - b
    f1 = y1 * float(resid @ resid)
    flops.add(4 * n + m * int(support.size) + 2 * m)

    state = PgState(x_prev=x0, x=x1, g_prev=g0, mu=START_STEP, y=y1, f=f1, n=1, flops=flops)
    return state, ata, atb


def adaptive_step(dx: np.ndarray, dg: np.ndarray, mu_prev: float) -> float:
    """Hybrid spectral step size; falls back to mu_prev on degeneracy."""
    s = float(dx @ dg)
    gg = float(dg @ dg)
    if s == 0.0 or gg == 0.0:
        return mu_prev
    mu_sd = float(dx @ dx) / s
    mu_mr = s / gg
    if mu_sd == 0.0:
        # |dx|^2 underflowed while dx.dg did not; the ratio is effectively
        # infinite, so take the minimum-residual branch
        mu = mu_mr
    elif mu_mr / mu_sd > 0.5:
        mu = mu_mr
    else:
        mu = mu_sd - 0.5 * mu_mr
    if mu <= 0.0 or not math.isfinite(mu):
        return mu_prev
    return mu


def line_search_ok(f_next: float, f_cur: float, dx: np.ndarray, g: np.ndarray, mu: float) -> bool:
    """Sufficient-decrease test; the inequality is deliberately strict."""
    return f_next < f_cur + float(dx @ g) + float(dx @ dx) / (2.0 * mu)


def pg_step(
    state: PgState,
    ata: np.ndarray,
    atb: np.ndarray,
    a: np.ndarray,
    b: np.ndarray,
    lam: float,
) -> PgState:
    """Advance the state by one accepted iteration (in place).

    The prox output is also accepted when it equals the current iterate
    exactly: threshold fixed points are step-size independent, so the
    strict decrease test can never pass there and halving cannot change
    the outcome.
    """
    m, n = a.shape
    g = gradient(ata, atb, state.x, state.y, state.f, state.flops)
    dx = state.x - state.x_prev
    dg = g - state.g_prev
    state.flops.add(2 * n)
    mu = adaptive_step(dx, dg, state.mu)
    state.flops.add(3 * n)

    backtracks = 0
    while True:
        x_next = shrink(state.x - mu * g, mu * lam)
        support = np.flatnonzero(x_next)
        ax = a[:, support] @ x_next[support] if support.size else np.zeros(m)
        y_next = 1.0 / (float(x_next @ x_next) + 1.0)
        resid = ax - b
        f_next = y_next * float(resid @ resid)
        step = x_next - state.x
        state.flops.add(6 * n + m * int(support.size) + 2 * m)
        if line_search_ok(f_next, state.f, step, g, mu) or not np.any(step):
            break
        mu *= 0.5
        backtracks += 1
        if backtracks > MAX_BACKTRACKS:
            raise BacktrackingError(
                f"line search failed {backtracks} halvings at iteration {state.n} "
                f"(mu={mu:.3e}, f={state.f:.6e}, f_next={f_next:.6e}); "
                "gradient and cost are inconsistent"
            )

    state.x_prev = state.x
    state.g_prev = g
    state.x = x_next
    state.y = y_next
    state.f = f_next
    state.mu = mu
    state.n += 1
    state.backtracks_last = backtracks
    return state


def _record(state: PgState, lam: float, ground_truth: Optional[np.ndarray]) -> TraceRecord:
    cost = state.f + lam * float(np.abs(state.x).sum())
    err = None if ground_truth is None else squared_error(state.x, ground_truth)
    return TraceRecord(
        iteration=state.n,
        cost=cost,
        f=state.f,
        mu=state.mu,
        backtracks=state.backtracks_last,
        flops=state.flops.madds,
        sq_error=err,
    )


def pg_solve(
    a: np.ndarray,
    b: np.ndarray,
    lam: float,
    iterations: int,
    ground_truth: Optional[np.ndarray] = None,
    rel_tol: Optional[float] = None,
) -> SolveResult:
    """Run the solver for a fixed iteration budget.

    The budget counts the initialization step that produces x_1, so the
    trace has exactly `iterations` records (fewer only if rel_tol is set
    and the relative iterate change drops below it; off by default to keep
    fixed schedules comparable).  Backtracking retries do not consume
    budget.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    state, ata, atb = pg_init(a, b, lam)
    trace = [_record(state, lam, ground_truth)]
    for _ in range(iterations - 1):
        pg_step(state, ata, atb, a, b, lam)
        trace.append(_record(state, lam, ground_truth))
        if rel_tol is not None:
            move = state.x - state.x_prev
            if float(np.sqrt(move @ move)) <= rel_tol * max(1.0, float(np.sqrt(state.x @ state.x))):
                break
    return SolveResult(x=state.x.copy(), trace=trace)
