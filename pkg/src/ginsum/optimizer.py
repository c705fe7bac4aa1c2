"""Maximize the achievable sum rate min(t1..t4) over the power-split simplex.

The search is a coarse grid over the product of the two per-transmitter
2-simplices followed by deterministic coordinate refinement with a shrinking
step.  The objective depends only on (a1, g1, a2, g2); the common-message
fractions are the simplex remainders.

A restriction forces the power fractions of excluded messages to zero.  A
transmitter whose messages are all excluded still transmits (fraction sums
are pinned to 1), so it is parked on its common-message slot, which adds no
interference at either receiver, and the objective for that degenerate case
switches to the polytope LP with excluded rates held at zero so the idle
transmitter's mandatory signal earns no rate credit.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels, rates, region_lp
from .model import (
    ALL_MESSAGES,
    ChannelParams,
    EmptyRestrictionError,
    MessageId,
    PowerSplit,
    validate_split,
)

ACTIVE_POWER_EPS = 1e-6
GRID_TIE_TOL = 1e-12
MIN_REFINE_STEP = 1e-13


@dataclass(frozen=True, slots=True)
class OptimizeResult:
    """Best split found, its objective value, the messages carrying power
    (above 1e-6 of a transmitter's budget) and the number of objective
    evaluations spent."""

    best_split: PowerSplit
    best_value: float
    active_messages: frozenset[MessageId]
    evaluations: int


def gamma_merge(split: PowerSplit) -> PowerSplit:
    """Fold each cross-private fraction into the common fraction (g_i -> 0)."""
    return PowerSplit(split.a1, split.b1 + split.g1, 0.0, split.a2, split.b2 + split.g2, 0.0)


def alpha_merge(split: PowerSplit) -> PowerSplit:
    """Fold each direct-private fraction into the common fraction (a_i -> 0)."""
    return PowerSplit(0.0, split.b1 + split.a1, split.g1, 0.0, split.b2 + split.a2, split.g2)


def _allowed_kinds(restrict: frozenset[MessageId] | None, tx: int) -> frozenset[str]:
    if restrict is None:
        return frozenset("UVW")
    return frozenset(m.kind for m in restrict if m.transmitter == tx)


def _tx_grid(step: float, kinds: frozenset[str]) -> list[tuple[float, float]]:
    """(a, g) grid points for one transmitter's simplex under a restriction.

    Integer construction keeps forced-zero and zero-common edges exact.  A
    transmitter with no allowed messages is pinned to the all-common point.
    """
    if not kinds:
        return [(0.0, 0.0)]
    n = max(1, round(1.0 / step))
    step = 1.0 / n
    pts: list[tuple[float, float]] = []
    if "V" in kinds:
        for i in range(n + 1):
            if i > 0 and "U" not in kinds:
                continue
            for j in range(n + 1 - i):
                if j > 0 and "W" not in kinds:
                    continue
                pts.append((i * step if i < n else 1.0, j * step if j < n else 1.0))
    else:
        # Zero common power: the a + g = 1 edge.
        for i in range(n + 1):
            a = i * step if i < n else 1.0
            if a > 0.0 and "U" not in kinds:
                continue
            if a < 1.0 and "W" not in kinds:
                continue
            pts.append((a, 1.0 - a))
    return pts


def _split_from_coords(a1: float, g1: float, a2: float, g2: float) -> PowerSplit:
    return validate_split(a1, 1.0 - a1 - g1, g1, a2, 1.0 - a2 - g2, g2)


def _active_count_vec(a1, g1, a2, g2) -> np.ndarray:
    b1 = 1.0 - a1 - g1
    b2 = 1.0 - a2 - g2
    count = np.zeros(a1.shape, dtype=np.int64)
    for f in (a1, b1, g1, a2, b2, g2):
        count += f > ACTIVE_POWER_EPS
    return count


class _MinTObjective:
    """min(t1..t4) as a function of (a1, g1, a2, g2)."""

    def __init__(self, params: ChannelParams, workers: int):
        self.params = params
        self.workers = max(1, workers)
        self.evaluations = 0

    def batch(self, a1, g1, a2, g2) -> np.ndarray:
        p = self.params
        self.evaluations += a1.shape[0]
        if self.workers == 1 or a1.shape[0] < 4096:
            return kernels.min_t_batch(p.h1, p.h2, p.p1, p.p2, a1, g1, a2, g2)
        chunks = np.array_split(np.arange(a1.shape[0]), self.workers)
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            parts = list(
                pool.map(
                    lambda ix: kernels.min_t_batch(
                        p.h1, p.h2, p.p1, p.p2, a1[ix], g1[ix], a2[ix], g2[ix]
                    ),
                    chunks,
                )
            )
        return np.concatenate(parts)

    def scalar(self, a1: float, g1: float, a2: float, g2: float) -> float:
        p = self.params
        self.evaluations += 1
        return kernels.min_t_scalar(p.h1, p.h2, p.p1, p.p2, a1, g1, a2, g2)

    def final_value(self, split: PowerSplit) -> float:
        return rates.sum_rate_bounds(self.params, split).min_bound


class _RestrictedLpObjective:
    """Polytope LP value with excluded rates forced to zero.

    Only used when a transmitter has no allowed messages; the plain
    min(t1..t4) would credit the idle transmitter's mandatory signal.
    """

    def __init__(self, params: ChannelParams, allowed: frozenset[MessageId]):
        self.params = params
        self.allowed = allowed
        self.evaluations = 0

    def scalar(self, a1: float, g1: float, a2: float, g2: float) -> float:
        self.evaluations += 1
        split = _split_from_coords(a1, g1, a2, g2)
        constraints = rates.region_constraints(self.params, split)
        value, _ = region_lp.max_sum_rate_lp(constraints, objective_mask=self.allowed)
        return value

    def batch(self, a1, g1, a2, g2) -> np.ndarray:
        return np.array(
            [self.scalar(a1[i], g1[i], a2[i], g2[i]) for i in range(a1.shape[0])]
        )

    def final_value(self, split: PowerSplit) -> float:
        return self.scalar(split.a1, split.g1, split.a2, split.g2)


def _probe_moves(
    a: float, g: float, step: float, kinds: frozenset[str]
) -> list[tuple[float, float]]:
    """Clamped neighbor points of one transmitter's (a, g) at the given step."""
    if not kinds:
        return []
    u_ok = "U" in kinds
    w_ok = "W" in kinds
    v_ok = "V" in kinds
    if v_ok:
        deltas = []
        if u_ok:
            deltas += [(step, 0.0), (-step, 0.0)]
        if w_ok:
            deltas += [(0.0, step), (0.0, -step)]
        if u_ok and w_ok:
            deltas += [(step, -step), (-step, step)]
    else:
        deltas = [(step, -step), (-step, step)] if (u_ok and w_ok) else []
    out = []
    for da, dg in deltas:
        na = min(1.0, max(0.0, a + da))
        ng = min(1.0, max(0.0, g + dg))
        if not u_ok:
            na = 0.0
        if not w_ok:
            ng = 0.0
        if v_ok:
            ng = min(ng, 1.0 - na)
        else:
            ng = 1.0 - na
        if (na, ng) != (a, g):
            out.append((na, ng))
    return out


def _refine(objective, coords, step, kinds1, kinds2, iters):
    """Pattern search over the product of the per-transmitter simplex moves.

    Joint moves matter: the min-of-terms objective has diagonal ridges along
    which each single-transmitter move loses while a simultaneous move of
    both transmitters gains.
    """
    a1, g1, a2, g2 = coords
    value = objective.scalar(a1, g1, a2, g2)
    for _ in range(iters):
        moves1 = _probe_moves(a1, g1, step, kinds1) + [(a1, g1)]
        moves2 = _probe_moves(a2, g2, step, kinds2) + [(a2, g2)]
        best_move = None
        best_val = value
        for m1 in moves1:
            for m2 in moves2:
                if m1 == (a1, g1) and m2 == (a2, g2):
                    continue
                v = objective.scalar(m1[0], m1[1], m2[0], m2[1])
                if v > best_val:
                    best_val = v
                    best_move = (m1[0], m1[1], m2[0], m2[1])
        if best_move is None:
            step *= 0.5
            if step < MIN_REFINE_STEP:
                break
        else:
            a1, g1, a2, g2 = best_move
            value = best_val
    return (a1, g1, a2, g2), value


def maximize_sum_rate(
    params: ChannelParams,
    restrict: set[MessageId] | frozenset[MessageId] | None = None,
    grid_step: float = 0.05,
    refine_iters: int = 200,
    workers: int | None = 1,
) -> OptimizeResult:
    """Deterministic search for the split maximizing the achievable sum rate.

    ``restrict`` keeps only the listed messages (excluded fractions forced
    to zero); it may silence one transmitter entirely but not both.  Ties in
    the objective resolve to fewer active messages, then to the
    lexicographically smallest split vector, so minimal sufficient message
    sets surface when they exist.  ``workers`` spreads the grid evaluation
    over threads; the result is identical for any worker count.
    """
    if restrict is not None:
        restrict = frozenset(restrict)
        if not restrict & ALL_MESSAGES:
            raise EmptyRestrictionError("restriction excludes every message")
    if workers is None:
        workers = os.cpu_count() or 1
    if not 0.0 < grid_step <= 1.0:
        raise ValueError(f"grid_step must be in (0, 1], got {grid_step}")

    kinds1 = _allowed_kinds(restrict, 1)
    kinds2 = _allowed_kinds(restrict, 2)
    allowed = ALL_MESSAGES if restrict is None else restrict
    degenerate = not kinds1 or not kinds2
    objective = (
        _RestrictedLpObjective(params, allowed)
        if degenerate
        else _MinTObjective(params, workers)
    )

    pts1 = _tx_grid(grid_step, kinds1)
    pts2 = _tx_grid(grid_step, kinds2)
    p1 = np.array(pts1, dtype=np.float64)
    p2 = np.array(pts2, dtype=np.float64)
    n1, n2 = len(pts1), len(pts2)
    a1 = np.repeat(p1[:, 0], n2)
    g1 = np.repeat(p1[:, 1], n2)
    a2 = np.tile(p2[:, 0], n1)
    g2 = np.tile(p2[:, 1], n1)

    vals = objective.batch(a1, g1, a2, g2)
    best = float(vals.max())
    tied = np.flatnonzero(vals >= best - GRID_TIE_TOL)
    ta1, tg1, ta2, tg2 = a1[tied], g1[tied], a2[tied], g2[tied]
    order = np.lexsort(
        (tg2, 1.0 - ta2 - tg2, ta2, tg1, 1.0 - ta1 - tg1, ta1,
         _active_count_vec(ta1, tg1, ta2, tg2))
    )
    k = tied[order[0]]
    start = (float(a1[k]), float(g1[k]), float(a2[k]), float(g2[k]))

    # Refine from the best grid point, from the best points of the
    # zero-cross-power and zero-direct-power grid faces (free: same grid
    # values), and from the private-to-common merges of the best point.
    # The face starts keep the unrestricted search at least as strong as a
    # face-restricted one; the merges steer ties onto minimal-message faces.
    starts = [start]

    def add_face_start(mask) -> None:
        if mask.any():
            idx = np.flatnonzero(mask)
            k = idx[int(np.argmax(vals[idx]))]
            cand = (float(a1[k]), float(g1[k]), float(a2[k]), float(g2[k]))
            if cand not in starts:
                starts.append(cand)

    add_face_start((g1 == 0.0) & (g2 == 0.0))
    add_face_start((a1 == 0.0) & (a2 == 0.0))
    sa1, sg1, sa2, sg2 = start
    if ("V" in kinds1 or sg1 == 0.0) and ("V" in kinds2 or sg2 == 0.0):
        gm = (sa1, 0.0, sa2, 0.0)
        if gm not in starts:
            starts.append(gm)
    if ("V" in kinds1 or sa1 == 0.0) and ("V" in kinds2 or sa2 == 0.0):
        am = (0.0, sg1, 0.0, sg2)
        if am not in starts:
            starts.append(am)

    finals = []
    for s in starts:
        coords, value = _refine(objective, s, grid_step, kinds1, kinds2, refine_iters)
        finals.append((value, coords))

    vmax = max(v for v, _ in finals)
    contenders = [e for e in finals if e[0] >= vmax - GRID_TIE_TOL]

    def tie_key(entry):
        _, (ca1, cg1, ca2, cg2) = entry
        split6 = (ca1, 1.0 - ca1 - cg1, cg1, ca2, 1.0 - ca2 - cg2, cg2)
        actives = sum(1 for f in split6 if f > ACTIVE_POWER_EPS)
        return (actives, split6)

    _, (fa1, fg1, fa2, fg2) = min(contenders, key=tie_key)
    best_split = _split_from_coords(fa1, fg1, fa2, fg2)
    best_value = objective.final_value(best_split)
    active = frozenset(
        m for m in allowed if best_split.fraction_of(m) > ACTIVE_POWER_EPS
    )
    return OptimizeResult(
        best_split=best_split,
        best_value=best_value,
        active_messages=active,
        evaluations=objective.evaluations,
    )
