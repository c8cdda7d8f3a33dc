"""Reconstruction-quality and support-detection measures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class SupportErrors:
    false_negatives: int  # true nonzeros estimated as exact zero
    false_positives: int  # true zeros estimated as nonzero


def squared_error(x_hat: np.ndarray, x_true: np.ndarray) -> float:
    """Squared l2 distance ||x_hat - x_true||^2."""
    if x_hat.shape != x_true.shape:
        raise ValueError(f"length mismatch: {x_hat.shape} vs {x_true.shape}")
    d = x_hat - x_true
    return float(d @ d)


def support_errors(x_hat: np.ndarray, x_true: np.ndarray) -> SupportErrors:
    """Count support misses; zero means exact binary zero, no threshold.

    Both solvers produce zeros only through soft-thresholding, so an
    epsilon-free comparison is well-defined.
    """
    if x_hat.shape != x_true.shape:
        raise ValueError(f"length mismatch: {x_hat.shape} vs {x_true.shape}")
    hat_zero = x_hat == 0.0
    true_zero = x_true == 0.0
    fn = int(np.count_nonzero(~true_zero & hat_zero))
    fp = int(np.count_nonzero(true_zero & ~hat_zero))
    return SupportErrors(false_negatives=fn, false_positives=fp)


@dataclass(frozen=True)
class TrialRecord:
    """Per-trial outcome at one swept parameter value."""

    scenario: str
    algorithm: str
    param: float
    sq_error: float
    fn: int
    fp: int


@dataclass(frozen=True)
class AggregateRow:
    scenario: str
    algorithm: str
    param: float
    mean_sq_error: float
    mean_fn: float
    mean_fp: float
    trials: int


def aggregate(records: Sequence[TrialRecord]) -> AggregateRow:
    """Arithmetic means over trials of one (scenario, algorithm, param) cell."""
    if not records:
        raise ValueError("cannot aggregate zero records")
    keys = {(r.scenario, r.algorithm, r.param) for r in records}
    if len(keys) != 1:
        raise ValueError(f"records mix cells: {sorted(keys)}")
    t = len(records)
    return AggregateRow(
        scenario=records[0].scenario,
        algorithm=records[0].algorithm,
        param=records[0].param,
        mean_sq_error=sum(r.sq_error for r in records) / t,
        mean_fn=sum(r.fn for r in records) / t,
        mean_fp=sum(r.fp for r in records) / t,
        trials=t,
    )
