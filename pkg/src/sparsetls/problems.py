"""Synthetic fully-perturbed sparse recovery instances.

An instance is an underdetermined system a_true @ x_true = b_true whose
matrix and right-hand side are both observed through additive noise:
a = a_true - a_pert, b = b_true - b_pert.  Solvers only see (a, b); the
hidden truth is kept for error metrics.

Perturbation entries are i.i.d. Gaussian with variance xi / m, so columns
of a_true (unit expected norm by construction) and the perturbation share
a common scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from hashlib import sha256
from pathlib import Path

import numpy as np

from .rng import RngStream


class Ensemble(Enum):
    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"


@dataclass
class ScenarioConfig:
    """Dimensions and noise level of a synthetic scenario.

    n: signal length (columns), m: measurement count (rows), k: number of
    nonzeros in the ground truth.  Requires k < m < n.
    """

    n: int
    m: int
    k: int
    ensemble: Ensemble
    xi: float
    seed: int = 0

    def __post_init__(self) -> None:
        if not (0 < self.k < self.m < self.n):
            raise ValueError(f"need 0 < k < m < n, got k={self.k} m={self.m} n={self.n}")
        if self.xi < 0:
            raise ValueError("xi must be non-negative")


# stream-derivation tags; "custom" shares tag 0
SCENARIO_TAGS = {"s1": 1, "s2": 2, "custom": 0}


def scenario_config(name: str, xi: float = 0.01, seed: int = 0) -> ScenarioConfig:
    """The two named benchmark scenarios."""
    if name == "s1":
        return ScenarioConfig(n=40, m=20, k=5, ensemble=Ensemble.GAUSSIAN, xi=xi, seed=seed)
    if name == "s2":
        return ScenarioConfig(n=200, m=80, k=20, ensemble=Ensemble.RADEMACHER, xi=xi, seed=seed)
    raise ValueError(f"unknown scenario {name!r} (expected 's1' or 's2')")


@dataclass
class ProblemInstance:
    """One synthetic instance: hidden truth plus the observed pair.

    a_true @ x_true == b_true; a = a_true - a_pert and b = b_true - b_pert
    hold exactly as generated.
    """

    a_true: np.ndarray   # m x n unperturbed system matrix
    x_true: np.ndarray   # n sparse ground truth, unit l2 norm
    b_true: np.ndarray   # m unperturbed right-hand side
    a_pert: np.ndarray   # m x n matrix perturbation
    b_pert: np.ndarray   # m right-hand-side perturbation
    a: np.ndarray        # observed matrix
    b: np.ndarray        # observed right-hand side


def gaussian_matrix(m: int, n: int, variance: float, rng: RngStream) -> np.ndarray:
    """m x n matrix of i.i.d. zero-mean Gaussians with the given variance."""
    if variance < 0:
        raise ValueError("variance must be non-negative")
    scale = math.sqrt(variance)
    return scale * rng.normal_block(m * n).reshape(m, n)


def rademacher_matrix(m: int, n: int, rng: RngStream) -> np.ndarray:
    """m x n matrix with entries exactly +-1/sqrt(m), fair sign per entry."""
    w = rng.u64_block(m * n)
    mag = 1.0 / math.sqrt(m)
    return np.where((w >> np.uint64(63)) == 0, mag, -mag).reshape(m, n)


def sparse_signal(n: int, k: int, rng: RngStream) -> np.ndarray:
    """Unit-norm vector with a uniformly random k-subset support.

    Support comes from a partial Fisher-Yates shuffle; values are standard
    normal, redrawn on the (measure-zero) event of an exact zero so the
    nonzero count is exactly k, then the vector is scaled to unit l2 norm.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k} n={n}")
    pool = list(range(n))
    for i in range(k):
        j = i + rng.below(n - i)
        pool[i], pool[j] = pool[j], pool[i]
    support = sorted(pool[:k])
    vals = rng.normal_block(k)
    while True:
        dead = vals == 0.0
        if not dead.any():
            break
        vals[dead] = rng.normal_block(int(dead.sum()))
    vals /= math.sqrt(float(vals @ vals))
    x = np.zeros(n)
    x[support] = vals
    return x


def generate_instance(cfg: ScenarioConfig, rng: RngStream) -> ProblemInstance:
    """Draw one instance; consumes the stream in a fixed order.

    Draw order is part of the format: system matrix, signal, matrix
    perturbation, rhs perturbation.  With a shared stream, instances for
    different xi differ only in perturbation scale (common random numbers).
    """
    m, n = cfg.m, cfg.n
    if cfg.ensemble is Ensemble.GAUSSIAN:
        a_true = gaussian_matrix(m, n, 1.0 / m, rng)
    else:
        a_true = rademacher_matrix(m, n, rng)
    x_true = sparse_signal(n, cfg.k, rng)
    b_true = a_true @ x_true
    pert_var = cfg.xi / m
    a_pert = gaussian_matrix(m, n, pert_var, rng)
    b_pert = math.sqrt(pert_var) * rng.normal_block(m)
    return ProblemInstance(
        a_true=a_true,
        x_true=x_true,
        b_true=b_true,
        a_pert=a_pert,
        b_pert=b_pert,
        a=a_true - a_pert,
        b=b_true - b_pert,
    )


def instance_digest(inst: ProblemInstance) -> str:
    """SHA-256 over all instance arrays; equal digests mean equal instances."""
    h = sha256()
    for arr in (inst.a_true, inst.x_true, inst.b_true, inst.a_pert, inst.b_pert, inst.a, inst.b):
        h.update(np.ascontiguousarray(arr).tobytes())
    return h.hexdigest()


@dataclass
class InstanceHeader:
    """Scalar metadata stored on the first line of an instance file."""

    m: int
    n: int
    k: int
    xi: float
    seed: int


def _fmt_row(row: np.ndarray) -> str:
    return " ".join(f"{v:.17g}" for v in row)


def save_instance(inst: ProblemInstance, cfg: ScenarioConfig, path: str | Path) -> None:
    """Write the text dump: header line, then labeled value blocks.

    Values carry 17 significant digits, enough to round-trip float64
    exactly.  Only the independent arrays are stored; the loader rebuilds
    the observed matrix and the clean rhs from the defining identities.
    """
    m, n = cfg.m, cfg.n
    lines = [f"PCS1 {m} {n} {cfg.k} {cfg.xi:.17g} {cfg.seed}"]
    lines.append("A_o")
    lines.extend(_fmt_row(r) for r in inst.a_true)
    lines.append("x_o")
    lines.append(_fmt_row(inst.x_true))
    lines.append("E_o")
    lines.extend(_fmt_row(r) for r in inst.a_pert)
    lines.append("e_o")
    lines.append(_fmt_row(inst.b_pert))
    lines.append("b")
    lines.append(_fmt_row(inst.b))
    Path(path).write_text("\n".join(lines) + "\n")


def load_instance(path: str | Path) -> tuple[ProblemInstance, InstanceHeader]:
    """Read an instance file written by save_instance."""
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith("PCS1 "):
        raise ValueError(f"{path}: not an instance file (missing PCS1 header)")
    fields = lines[0].split()
    if len(fields) != 6:
        raise ValueError(f"{path}: malformed header line")
    header = InstanceHeader(
        m=int(fields[1]), n=int(fields[2]), k=int(fields[3]),
        xi=float(fields[4]), seed=int(fields[5]),
    )
    m, n = header.m, header.n

    pos = 1
    blocks: dict[str, np.ndarray] = {}
    for label, rows in (("A_o", m), ("x_o", 1), ("E_o", m), ("e_o", 1), ("b", 1)):
        if pos >= len(lines) or lines[pos] != label:
            raise ValueError(f"{path}: expected block {label!r} at line {pos + 1}")
        pos += 1
        data = [np.array([float(v) for v in lines[pos + r].split()]) for r in range(rows)]
        pos += rows
        blocks[label] = data[0] if rows == 1 else np.vstack(data)

    a_true, x_true = blocks["A_o"], blocks["x_o"]
    a_pert, b_pert, b = blocks["E_o"], blocks["e_o"], blocks["b"]
    if a_true.shape != (m, n) or x_true.shape != (n,):
        raise ValueError(f"{path}: block shapes disagree with header")
    inst = ProblemInstance(
        a_true=a_true,
        x_true=x_true,
        b_true=b + b_pert,
        a_pert=a_pert,
        b_pert=b_pert,
        a=a_true - a_pert,
        b=b,
    )
    return inst, header
