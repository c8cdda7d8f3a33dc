"""Shared math kernel for both solvers.

Cost model: c(x) = f(x) + lam * ||x||_1 with the quotient residual

    f(x) = ||a x - b||^2 / (||x||^2 + 1),

the total-least-squares residual expressed through x alone.  The gradient
uses the cached products a^T a and a^T b, and exact zeros in x are skipped
so the matrix-vector work scales with the support size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class FlopCounter:
    """Running count of multiply-add-equivalent operations in a solve."""

    madds: int = 0

    def add(self, n: int) -> None:
        self.madds += int(n)


@dataclass(frozen=True)
class CostEval:
    f: float        # quotient residual, >= 0
    y: float        # 1 / (||x||^2 + 1), in (0, 1]
    penalty: float  # lam * ||x||_1
    total: float    # f + penalty


def eval_cost(a: np.ndarray, b: np.ndarray, x: np.ndarray, lam: float) -> CostEval:
    """Evaluate the composite cost at x."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    if a.shape[0] != b.shape[0] or a.shape[1] != x.shape[0]:
        raise ValueError(f"dimension mismatch: a {a.shape}, b {b.shape}, x {x.shape}")
    resid = a @ x - b
    y = 1.0 / (float(x @ x) + 1.0)
    f = y * float(resid @ resid)
    penalty = lam * float(np.abs(x).sum())
    return CostEval(f=f, y=y, penalty=penalty, total=f + penalty)


def gradient(
    ata: np.ndarray,
    atb: np.ndarray,
    x: np.ndarray,
    y: float,
    f: float,
    flops: FlopCounter,
) -> np.ndarray:
    """Gradient of the quotient residual: 2 y (a^T a x - a^T b - f x).

    ata and atb must be the cached a^T a and a^T b; y and f must be the
    values of 1/(||x||^2+1) and f(x) at this x.  Columns of ata whose x
    entry is an exact zero are skipped, so the product costs n * nnz(x)
    multiply-adds (n^2 worst case); the remaining terms cost 3 n.
    """
    n = x.shape[0]
    if ata.shape != (n, n) or atb.shape != (n,):
        raise ValueError(f"dimension mismatch: ata {ata.shape}, atb {atb.shape}, x {x.shape}")
    support = np.flatnonzero(x)
    if support.size:
        atax = ata[:, support] @ x[support]
    else:
        atax = np.zeros(n)
    flops.add(n * int(support.size) + 3 * n)
    return (2.0 * y) * (atax - atb - f * x)


def shrink(z: np.ndarray, t: float) -> np.ndarray:
    """Soft-threshold each entry of z by t >= 0.

    z_i - t when z_i > t, z_i + t when z_i < -t, exactly 0 when |z_i| <= t
    (the boundary |z_i| = t maps to 0).  This is the proximity operator of
    t * ||.||_1, and the only place iterates acquire exact zeros.
    """
    return np.sign(z) * np.maximum(np.abs(z) - t, 0.0)
