"""Independent sum-rate oracles over the 30-constraint rate polytope.

Two routes to the maximum sum rate, both independent of the closed-form
bound terms in :mod:`ginsum.rates`:

* a small dense simplex solver maximizing the rate sum over the polytope
  (origin-feasible, so a single phase suffices), and
* an enumerator over constraint pairs, one per receiver, whose subsets
  jointly cover all six messages; each covering pair upper-bounds the sum
  rate by rhs1 + rhs2 because rates are nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    ALL_MESSAGES,
    GinsumError,
    MessageId,
    RateConstraint,
    RateTuple,
    VAR_ORDER,
)

N_VARS = 6
PIVOT_TOL = 1e-11
FEAS_TOL = 1e-9
MAX_ITER = 10_000


class NumericalInstabilityError(GinsumError, RuntimeError):
    """Simplex failed to terminate within the iteration cap."""


@dataclass(frozen=True)
class LinearProgram:
    """max objective . x  s.t.  A x <= b, x >= 0, with A entries in {0,1}."""

    objective: tuple[float, ...]
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        if self.a.shape != (len(self.b), N_VARS):
            raise ValueError("constraint matrix shape mismatch")
        if np.any(self.b < 0.0):
            raise ValueError("rhs must be nonnegative (origin-feasible)")
        # Boundedness: every variable capped by some finite constraint.
        if not np.all(self.a.any(axis=0)):
            raise ValueError("every variable must appear in at least one constraint")


@dataclass(frozen=True)
class PairingBound:
    """A covering constraint pair and the sum-rate bound it implies."""

    rx1_subset: frozenset[MessageId]
    rx2_subset: frozenset[MessageId]
    value: float

    def __post_init__(self) -> None:
        if self.rx1_subset | self.rx2_subset != ALL_MESSAGES:
            raise ValueError("pairing subsets must jointly cover all six messages")


def build_lp(constraints: list[RateConstraint]) -> LinearProgram:
    """Encode the 30 region constraints with the sum-rate objective."""
    a = np.zeros((len(constraints), N_VARS), dtype=np.float64)
    b = np.empty(len(constraints), dtype=np.float64)
    for i, c in enumerate(constraints):
        mask = c.var_mask()
        for j in range(N_VARS):
            if mask >> j & 1:
                a[i, j] = 1.0
        b[i] = c.rhs
    return LinearProgram(objective=(1.0,) * N_VARS, a=a, b=b)


def _simplex_max(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> tuple[float, np.ndarray]:
    """Primal simplex with Bland's rule on max c.x s.t. a x <= b, x >= 0, b >= 0.

    Bland's rule (lowest-index entering column, lowest-index basic variable
    on ratio ties) guarantees termination on the heavily degenerate tableaus
    that zero-power splits produce.
    """
    m, n = a.shape
    # Tableau: [A | I | b] with objective row [-c | 0 | 0] appended.
    t = np.zeros((m + 1, n + m + 1), dtype=np.float64)
    t[:m, :n] = a
    t[:m, n : n + m] = np.eye(m)
    t[:m, -1] = b
    t[m, :n] = -c
    basis = list(range(n, n + m))

    for _ in range(MAX_ITER):
        row = t[m, : n + m]
        # Bland: first column with a negative reduced cost.
        enter = -1
        for j in range(n + m):
            if row[j] < -PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            x = np.zeros(n + m, dtype=np.float64)
            for i, bv in enumerate(basis):
                x[bv] = t[i, -1]
            return float(t[m, -1]), x[:n]
        col = t[:m, enter]
        ratios = [
            (t[i, -1] / col[i], basis[i], i) for i in range(m) if col[i] > PIVOT_TOL
        ]
        if not ratios:
            raise NumericalInstabilityError("unbounded direction in bounded polytope")
        _, _, leave = min(ratios, key=lambda r: (r[0], r[1]))
        piv = t[leave, enter]
        t[leave, :] /= piv
        factor = t[:, enter].copy()
        factor[leave] = 0.0
        t -= np.outer(factor, t[leave, :])
        basis[leave] = enter
    raise NumericalInstabilityError(f"simplex exceeded {MAX_ITER} pivots")


def max_sum_rate_lp(
    constraints: list[RateConstraint],
    objective_mask: frozenset[MessageId] | None = None,
) -> tuple[float, RateTuple]:
    """Maximum rate sum over the polytope and one optimal vertex.

    ``objective_mask`` limits the objective to a message subset (the other
    rates may sit anywhere feasible but contribute nothing; with all-or-
    nothing 0/1 constraint rows they contribute nothing at the optimum
    either).  Default is the full six-message sum.
    """
    lp = build_lp(constraints)
    c = np.array(lp.objective, dtype=np.float64)
    if objective_mask is not None:
        for j, mvar in enumerate(VAR_ORDER):
            if mvar not in objective_mask:
                c[j] = 0.0
    value, x = _simplex_max(lp.a, lp.b, c)
    x = np.where(np.abs(x) < FEAS_TOL, np.maximum(x, 0.0), x)
    if np.any(x < -FEAS_TOL) or np.any(lp.a @ x > lp.b + FEAS_TOL):
        raise NumericalInstabilityError("simplex returned an infeasible vertex")
    x = np.clip(x, 0.0, None)
    return value, RateTuple(*(float(v) for v in x))


def covering_pairs(constraints: list[RateConstraint]) -> list[tuple[int, int]]:
    """Index pairs (one constraint per receiver) that jointly cover all
    six messages, enumerated over all 15 x 15 combinations in canonical
    order."""
    rx1 = [(i, c) for i, c in enumerate(constraints) if c.receiver == 1]
    rx2 = [(i, c) for i, c in enumerate(constraints) if c.receiver == 2]
    full = (1 << N_VARS) - 1
    pairs = []
    for i, c1 in rx1:
        m1 = c1.var_mask()
        for j, c2 in rx2:
            if m1 | c2.var_mask() == full:
                pairs.append((i, j))
    return pairs


def pairing_oracle(constraints: list[RateConstraint]) -> tuple[float, PairingBound]:
    """Tightest covering-pair bound on the sum rate.

    Scans every covering pair and returns the minimum of rhs1 + rhs2 with
    the minimizing pair; ties resolve to the first pair in enumeration
    order.
    """
    best_value = float("inf")
    best: tuple[RateConstraint, RateConstraint] | None = None
    for i, j in covering_pairs(constraints):
        v = constraints[i].rhs + constraints[j].rhs
        if v < best_value:
            best_value = v
            best = (constraints[i], constraints[j])
    assert best is not None  # the full-set pair always covers
    return best_value, PairingBound(best[0].subset, best[1].subset, best_value)
