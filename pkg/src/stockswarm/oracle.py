"""Brute-force enumeration baseline for checking swarm results.

At matching radius 0 a position can only ever match the set of records
whose stock vector equals its rounded vector exactly, so every reachable
fitness value is hit by evaluating each record's own vector plus, per
product, one vector that matches nothing.  The minimum over that candidate
set is therefore a true lower bound on anything the swarm can return at
radius 0.  At larger radii the enumeration is still a useful reference
point but no longer an exhaustive bound, since partial overlaps of several
record boxes become reachable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import FitnessEvaluator, PsoConfig, _check_log_domain
from .history import HistoryStore

__all__ = ["OracleResult", "empty_match_candidate", "enumerate_candidates", "oracle_minimum"]


@dataclass(frozen=True)
class OracleResult:
    """Minimum of the enumeration and how it was obtained."""

    best_position: tuple[int, ...]
    best_fitness: float
    evaluations: int
    skipped_products: tuple[int, ...]


def empty_match_candidate(
    store: HistoryStore, product_id: int, config: PsoConfig
) -> tuple[int, ...] | None:
    """A stock vector for ``product_id`` that matches zero records, or None.

    Scans the stock dimensions in order for an integer value farther than
    the matching radius from every recorded level of that product on that
    dimension; one such dimension is enough to defeat the box test.  The
    scan is deterministic: bound edges first, then the lowest qualifying
    inter-record gap.  None means the product's records blanket every
    dimension at this radius (only possible when the radius is large
    relative to the stock range).
    """
    l = store.topology.member_count
    lb, ub = config.bounds.stock_lb, config.bounds.stock_ub
    radius = config.match_radius
    rows = [r for r in store.records if r.product_id == product_id]
    filler = min(max(0, lb), ub)
    if not rows:
        return (product_id,) + (filler,) * l
    matrix = np.array([r.levels for r in rows], dtype=np.int64)
    for dim in range(l):
        values = np.unique(matrix[:, dim])
        chosen: int | None = None
        if values[0] - lb > radius:
            chosen = lb
        else:
            for a, b in zip(values, values[1:]):
                if b - a > 2 * radius + 1:
                    chosen = int(a) + radius + 1
                    break
            if chosen is None and ub - values[-1] > radius:
                chosen = ub
        if chosen is not None:
            levels = [filler] * l
            levels[dim] = chosen
            return (product_id, *levels)
    return None


def enumerate_candidates(
    store: HistoryStore, config: PsoConfig
) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    """All oracle candidates plus products lacking an empty-match vector.

    Candidates are every record's own vector in TID order, then one
    empty-match vector per product id the swarm can round to (the bounded
    integer range united with the products actually on record), ascending.
    """
    candidates = [(r.product_id, *r.levels) for r in store.records]
    product_ids = sorted(
        set(store.products)
        | set(range(config.bounds.product_lb, config.bounds.product_ub + 1))
    )
    skipped = []
    for pid in product_ids:
        candidate = empty_match_candidate(store, pid, config)
        if candidate is None:
            skipped.append(pid)
        else:
            candidates.append(candidate)
    return candidates, tuple(skipped)


def oracle_minimum(store: HistoryStore, config: PsoConfig) -> OracleResult:
    """Evaluate every candidate and return the minimum.

    Ties keep the earliest candidate, so the result is deterministic and
    independent of any seed.
    """
    _check_log_domain(store, config)
    evaluator = FitnessEvaluator(store, config)
    candidates, skipped = enumerate_candidates(store, config)
    best_position = candidates[0]
    best_fitness = evaluator.evaluate(np.asarray(best_position, dtype=np.float64))
    for candidate in candidates[1:]:
        fitness = evaluator.evaluate(np.asarray(candidate, dtype=np.float64))
        if fitness < best_fitness:
            best_position, best_fitness = candidate, fitness
    return OracleResult(
        best_position=tuple(int(v) for v in best_position),
        best_fitness=float(best_fitness),
        evaluations=len(candidates),
        skipped_products=skipped,
    )
