"""Observer destination controllers.

Four strategies choose where the observers should head next:

* ``kmeans``: destinations are the centroids of a k-means clustering of
  the current target positions, one cluster per observer.
* ``hc``: random-restart hill climbing on the destination vector, adopting
  a perturbed candidate only when it strictly raises the fraction of
  targets covered (candidates are scored as if observers sat at them).
* ``hc-h``: ``hc`` plus a dispersion heuristic; among candidates that tie
  the current coverage, the most spread-out one (greatest mean pairwise
  distance) is adopted if it strictly beats the incumbent's spread.
* ``hc-hp``: ``hc-h`` scored against projected target positions a fixed
  horizon ahead instead of current ones.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .geometry import Point
from .metrics import coverage_fraction, mean_pairwise_observer_distance, observation_matrix
from .world import PlanarGraph, TargetState, predict_target

DEFAULT_PERTURB_MAG = 10.0


class ControllerKind(Enum):
    KMEANS = "kmeans"
    HC = "hc"
    HC_H = "hc-h"
    HC_HP = "hc-hp"

    @classmethod
    def parse(cls, label: str) -> "ControllerKind":
        for kind in cls:
            if kind.value == label:
                return kind
        raise ValueError(f"unknown controller {label!r}; expected one of "
                         f"{', '.join(k.value for k in cls)}")


@dataclass(frozen=True)
class ControlInput:
    """Everything a controller may look at when choosing destinations."""

    observer_points: tuple[Point, ...]
    current_destinations: tuple[Point, ...]
    target_eval_points: tuple[Point, ...]
    sr: float
    arena: tuple[float, float]
    rng: np.random.Generator

    def __post_init__(self):
        if len(self.observer_points) != len(self.current_destinations):
            raise ValueError("one destination per observer is required")
        if len(self.observer_points) == 0:
            raise ValueError("at least one observer is required")
        if self.sr <= 0.0:
            raise ValueError(f"sensor range must be positive, got {self.sr}")


class CandidateScore(NamedTuple):
    """Coverage fraction and observer spread of a destination vector."""

    rho_new: float
    rho_ob: float


def evaluate_candidate(
    candidate_destinations: Sequence[Point], target_eval_points: Sequence[Point], sr: float
) -> CandidateScore:
    """Score a destination vector as if observers already occupied it."""
    rho_new = coverage_fraction(observation_matrix(candidate_destinations, target_eval_points, sr))
    rho_ob = mean_pairwise_observer_distance(candidate_destinations)
    return CandidateScore(rho_new=rho_new, rho_ob=rho_ob)


def perturb(
    destinations: Sequence[Point],
    arena: tuple[float, float],
    rng: np.random.Generator,
    mag: float = DEFAULT_PERTURB_MAG,
) -> list[Point]:
    """One random candidate: each coordinate nudged by U[-mag, mag], then
    clamped to the arena."""
    base = np.asarray(destinations, dtype=float)
    moved = base + rng.uniform(-mag, mag, size=base.shape)
    np.clip(moved, 0.0, np.asarray(arena, dtype=float), out=moved)
    return [Point(float(x), float(y)) for x, y in moved]


def _covered_counts(dest_sets: np.ndarray, targets: np.ndarray, sr: float) -> np.ndarray:
    """Observed-target counts for destination vectors, vectorized.

    ``dest_sets`` is (..., N, 2); the result has the leading shape. Matches
    observation_matrix element for element (same closed-disc comparison).
    """
    dx = dest_sets[..., 0][..., None] - targets[:, 0]
    dy = dest_sets[..., 1][..., None] - targets[:, 1]
    seen = dx * dx + dy * dy <= sr * sr
    return seen.any(axis=-2).sum(axis=-1)


@lru_cache(maxsize=8)
def _pair_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, 1)


def _pairwise_means(dest_sets: np.ndarray) -> np.ndarray:
    """Mean pairwise distance per destination vector in a (C, N, 2) batch."""
    iu, jv = _pair_indices(dest_sets.shape[1])
    dx = dest_sets[:, iu, 0] - dest_sets[:, jv, 0]
    dy = dest_sets[:, iu, 1] - dest_sets[:, jv, 1]
    return np.mean(np.sqrt(dx * dx + dy * dy), axis=1)


def _rows_to_points(rows: np.ndarray) -> list[Point]:
    return [Point(float(x), float(y)) for x, y in rows]


def _hc_family(
    inp: ControlInput, n_candidates: int, mag: float, use_dispersion: bool
) -> list[Point]:
    if n_candidates < 1:
        raise ValueError(f"need at least 1 candidate, got {n_candidates}")
    base = np.asarray(inp.current_destinations, dtype=float)
    targets = np.asarray(inp.target_eval_points, dtype=float).reshape(
        len(inp.target_eval_points), 2
    )
    arena = np.asarray(inp.arena, dtype=float)

    offsets = inp.rng.uniform(-mag, mag, size=(n_candidates,) + base.shape)
    candidates = np.clip(base + offsets, 0.0, arena)

    current_count = int(_covered_counts(base, targets, inp.sr))
    counts = _covered_counts(candidates, targets, inp.sr)
    best = int(np.argmax(counts))
    if int(counts[best]) > current_count:
        return _rows_to_points(candidates[best])

    if not use_dispersion or len(inp.current_destinations) < 2:
        return list(inp.current_destinations)

    tied = counts == current_count
    if not bool(tied.any()):
        return list(inp.current_destinations)
    spreads = np.where(tied, _pairwise_means(candidates), -np.inf)
    pick = _rows_to_points(candidates[int(np.argmax(spreads))])
    # Settle the adoption with the scalar metric so the guarantee is exact.
    if mean_pairwise_observer_distance(pick) > mean_pairwise_observer_distance(
        inp.current_destinations
    ):
        return pick
    return list(inp.current_destinations)


def hc_control(
    inp: ControlInput, n_candidates: int = 100, mag: float = DEFAULT_PERTURB_MAG
) -> list[Point]:
    """Hill climbing on coverage alone; ties and regressions keep the
    current destinations."""
    return _hc_family(inp, n_candidates, mag, use_dispersion=False)


def hc_h_control(
    inp: ControlInput, n_candidates: int = 100, mag: float = DEFAULT_PERTURB_MAG
) -> list[Point]:
    """Hill climbing with the dispersion tie-break: coverage first, then
    observer spread among coverage ties."""
    return _hc_family(inp, n_candidates, mag, use_dispersion=True)


def hc_hp_control(
    inp: ControlInput,
    n_candidates: int,
    horizon: int,
    graph: PlanarGraph,
    target_states: Sequence[TargetState],
    mag: float = DEFAULT_PERTURB_MAG,
) -> list[Point]:
    """hc-h scored against target positions projected ``horizon`` steps ahead.

    With horizon 0 this reduces exactly to hc_h_control on the targets'
    current positions.
    """
    if horizon < 0:
        raise ValueError(f"horizon must be >= 0, got {horizon}")
    predicted = tuple(predict_target(graph, s, horizon) for s in target_states)
    return _hc_family(
        replace(inp, target_eval_points=predicted), n_candidates, mag, use_dispersion=True
    )


def kmeans_control(inp: ControlInput, k: int, max_iters: int = 50, tol: float = 1e-6) -> list[Point]:
    """Destinations from Lloyd's algorithm over current target positions.

    Centroids start at the observers' own positions and each observer is
    sent to its own centroid, so assignments persist across invocations.
    Clusters left empty keep their previous centroid. Iteration stops when
    no centroid moves more than ``tol`` or after ``max_iters`` rounds.
    """
    if k != len(inp.observer_points):
        raise ValueError(f"need one cluster per observer: k={k}, observers={len(inp.observer_points)}")
    if len(inp.target_eval_points) == 0:
        raise ValueError("k-means needs at least one target position")
    pts = np.asarray(inp.target_eval_points, dtype=float)
    centroids = np.asarray(inp.observer_points, dtype=float).copy()
    for _ in range(max_iters):
        d2 = ((pts[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        assign = np.argmin(d2, axis=1)
        sums = np.zeros_like(centroids)
        np.add.at(sums, assign, pts)
        sizes = np.bincount(assign, minlength=k)
        moved = centroids.copy()
        nonempty = sizes > 0
        moved[nonempty] = sums[nonempty] / sizes[nonempty, None]
        shift = float(np.sqrt(((moved - centroids) ** 2).sum(axis=1)).max())
        centroids = moved
        if shift < tol:
            break
    return _rows_to_points(centroids)
