"""Closed-form Gaussian rate expressions.

Everything a receiver can be told about the network reduces to a handful of
quantities: the received power of each decodable message, the effective
noise covering the undecodable rest, the 30 subset rate constraints, the
four constraint-pairing sum-rate bounds t1..t4, MAC sum capacities and the
treat-interference-as-noise sum rate.

Constraint ordering is canonical and shared with the LP and CLI modules:
receiver 1 first, subsets enumerated by bitmask 1..15 over the fixed message
order (U1, V1, V2, W2) with bit k selecting the k-th message, then receiver
2 over (U2, V1, V2, W1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .model import (
    ChannelParams,
    GinsumError,
    MessageId,
    PowerSplit,
    RateConstraint,
    RX1_MASK_ORDER,
    RX2_MASK_ORDER,
)


class NegativeArgumentError(GinsumError, ValueError):
    """cap() requires a nonnegative argument."""


def cap(x: float) -> float:
    """Gaussian capacity function 0.5*log2(1+x) in bits per channel use."""
    if not math.isfinite(x):
        raise NegativeArgumentError(f"cap() requires a finite argument, got {x}")
    if x < 0.0:
        raise NegativeArgumentError(f"cap() requires x >= 0, got {x}")
    return 0.5 * math.log2(1.0 + x)


@dataclass(frozen=True, slots=True)
class EffectiveNoise:
    """Noise-plus-undecoded-interference power at each receiver, both >= 1."""

    i1: float
    i2: float


@dataclass(frozen=True, slots=True)
class SumRateBounds:
    """The four pairing bounds on the sum rate and their minimum."""

    t1: float
    t2: float
    t3: float
    t4: float
    min_bound: float

    @classmethod
    def from_terms(cls, t1: float, t2: float, t3: float, t4: float) -> "SumRateBounds":
        return cls(t1, t2, t3, t4, min(t1, t2, t3, t4))


def received_powers(
    params: ChannelParams, split: PowerSplit, receiver: int
) -> dict[MessageId, float]:
    """Received power of each decodable message at the given receiver.

    Cross-link messages arrive scaled by the square of the cross gain: at
    receiver 1 the powers are {U1: a1*p1, V1: b1*p1, V2: h2^2*b2*p2,
    W2: h2^2*g2*p2}; receiver 2 mirrors with h1^2 scaling.
    """
    if receiver == 1:
        c = params.h2 * params.h2
        return {
            MessageId.U1: split.a1 * params.p1,
            MessageId.V1: split.b1 * params.p1,
            MessageId.V2: c * split.b2 * params.p2,
            MessageId.W2: c * split.g2 * params.p2,
        }
    if receiver == 2:
        c = params.h1 * params.h1
        return {
            MessageId.U2: split.a2 * params.p2,
            MessageId.V1: c * split.b1 * params.p1,
            MessageId.V2: split.b2 * params.p2,
            MessageId.W1: c * split.g1 * params.p1,
        }
    raise ValueError(f"receiver must be 1 or 2, got {receiver!r}")


def effective_noise(params: ChannelParams, split: PowerSplit) -> EffectiveNoise:
    """i1 = 1 + h2^2*a2*p2 + g1*p1 and i2 = 1 + h1^2*a1*p1 + g2*p2.

    Each receiver treats the other transmitter's direct-private message and
    its own transmitter's cross-private leakage as noise.
    """
    i1 = 1.0 + params.h2 * params.h2 * split.a2 * params.p2 + split.g1 * params.p1
    i2 = 1.0 + params.h1 * params.h1 * split.a1 * params.p1 + split.g2 * params.p2
    return EffectiveNoise(i1, i2)


def subset_from_mask(receiver: int, mask: int) -> frozenset[MessageId]:
    """Decode-set subset selected by a bitmask in the canonical order."""
    order = RX1_MASK_ORDER if receiver == 1 else RX2_MASK_ORDER
    if not 1 <= mask <= 15:
        raise ValueError(f"mask must be in 1..15, got {mask}")
    return frozenset(order[k] for k in range(4) if mask >> k & 1)


def region_constraints(params: ChannelParams, split: PowerSplit) -> list[RateConstraint]:
    """The 30 region inequalities in canonical order.

    For each receiver and each non-empty subset S of its decode set,
    the rate sum over S is bounded by cap(received power of S / effective
    noise at that receiver).
    """
    noise = effective_noise(params, split)
    out: list[RateConstraint] = []
    for receiver, order, inoise in (
        (1, RX1_MASK_ORDER, noise.i1),
        (2, RX2_MASK_ORDER, noise.i2),
    ):
        powers = received_powers(params, split, receiver)
        for mask in range(1, 16):
            total = 0.0
            members = []
            for k in range(4):
                if mask >> k & 1:
                    m = order[k]
                    members.append(m)
                    total += powers[m]
            out.append(RateConstraint(receiver, frozenset(members), cap(total / inoise)))
    return out


def constraint_index(receiver: int, subset: frozenset[MessageId]) -> int:
    """Position of a constraint in the canonical 30-element list."""
    order = RX1_MASK_ORDER if receiver == 1 else RX2_MASK_ORDER
    mask = 0
    for k, m in enumerate(order):
        if m in subset:
            mask |= 1 << k
    if mask == 0 or len(subset) != bin(mask).count("1"):
        raise ValueError(f"subset is not a subset of Rx{receiver}'s decode set")
    return (0 if receiver == 1 else 15) + mask - 1


# The four constraint pairings whose rhs sums equal t1..t4: one subset per
# receiver, jointly covering all six messages with no common message counted
# twice.
THEOREM_PAIRINGS: tuple[tuple[frozenset[MessageId], frozenset[MessageId]], ...] = (
    (
        frozenset({MessageId.U1, MessageId.W2}),
        frozenset({MessageId.U2, MessageId.V1, MessageId.V2, MessageId.W1}),
    ),
    (
        frozenset({MessageId.U1, MessageId.V1, MessageId.V2, MessageId.W2}),
        frozenset({MessageId.U2, MessageId.W1}),
    ),
    (
        frozenset({MessageId.U1, MessageId.V2, MessageId.W2}),
        frozenset({MessageId.U2, MessageId.V1, MessageId.W1}),
    ),
    (
        frozenset({MessageId.U1, MessageId.V1, MessageId.W2}),
        frozenset({MessageId.U2, MessageId.V2, MessageId.W1}),
    ),
)


def sum_rate_bounds(params: ChannelParams, split: PowerSplit) -> SumRateBounds:
    """The four closed-form sum-rate bound terms and their minimum.

    Evaluated directly from the closed forms (see the kernels module), not
    recomposed from region_constraints; the tests keep the two paths honest
    against each other.
    """
    t1, t2, t3, t4 = kernels.t_bounds_scalar(
        params.h1,
        params.h2,
        params.p1,
        params.p2,
        split.a1,
        split.g1,
        split.a2,
        split.g2,
    )
    return SumRateBounds.from_terms(t1, t2, t3, t4)


def mac_sum_capacity(params: ChannelParams, receiver: int) -> float:
    """Sum capacity of the multiple-access channel at one receiver.

    Receiver 2 hears X2 at unit gain and X1 scaled by h1, so its MAC sum
    capacity is cap(h1^2*p1 + p2); receiver 1 mirrors.
    """
    if receiver == 2:
        return cap(params.h1 * params.h1 * params.p1 + params.p2)
    if receiver == 1:
        return cap(params.h2 * params.h2 * params.p2 + params.p1)
    raise ValueError(f"receiver must be 1 or 2, got {receiver!r}")


def tin_sum_rate(params: ChannelParams) -> float:
    """Sum rate of the two direct messages with interference treated as noise."""
    r1 = cap(params.p1 / (1.0 + params.h2 * params.h2 * params.p2))
    r2 = cap(params.p2 / (1.0 + params.h1 * params.h1 * params.p1))
    return r1 + r2
