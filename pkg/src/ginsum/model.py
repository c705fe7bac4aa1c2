"""Domain types for the 2x2 Gaussian interference network.

The network has two transmitters and two receivers in standard form

    Y1 = X1 + h2*X2 + Z1,    Y2 = X2 + h1*X1 + Z2,

with unit-variance noise (the constant 1 in every rate formula) and six
messages: a direct private message U_i from transmitter i to receiver i, a
common message V_i decoded by both receivers, and a cross private message
W_i to the opposite receiver.  Receiver 1 decodes {U1, V1, V2, W2},
receiver 2 decodes {U2, V1, V2, W1}.

Every type here is an immutable value object; validation lives in
``__post_init__`` so an instance that exists is an instance that holds its
invariants.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------


class GinsumError(Exception):
    """Base class for all errors raised by this package."""


class NonFiniteInputError(GinsumError, ValueError):
    """An input was NaN or infinite."""


class NegativeGainError(GinsumError, ValueError):
    """A channel gain was negative."""


class NonPositivePowerError(GinsumError, ValueError):
    """A power constraint was zero or negative."""


class RangeViolationError(GinsumError, ValueError):
    """A power fraction fell outside [0, 1] beyond tolerance."""


class SimplexViolationError(GinsumError, ValueError):
    """A transmitter's power fractions do not sum to 1 beyond tolerance."""


class ZeroGainError(GinsumError, ValueError):
    """An operation requiring strictly positive cross gains got a zero gain."""


class EmptyRestrictionError(GinsumError, ValueError):
    """A message restriction excluded every message of both transmitters."""


# Tolerances for power-split validation: inputs whose fraction sum is within
# RENORM_TOL of 1 are renormalized exactly; beyond REJECT_TOL they are
# rejected.  Grid-generated splits accumulate rounding, hence the gap.
SIMPLEX_RENORM_TOL = 1e-12
SIMPLEX_REJECT_TOL = 1e-9


# ---------------------------------------------------------------------------
# Messages
# ---------------------------------------------------------------------------


class MessageId(enum.Enum):
    """The six messages of the 2x2 interference network."""

    U1 = "U1"
    V1 = "V1"
    W1 = "W1"
    U2 = "U2"
    V2 = "V2"
    W2 = "W2"

    @property
    def transmitter(self) -> int:
        return 1 if self.value.endswith("1") else 2

    @property
    def kind(self) -> str:
        """'U' direct private, 'V' common, 'W' cross private."""
        return self.value[0]

    def __repr__(self) -> str:  # compact in test output
        return self.value


# Canonical variable order shared by RateTuple fields and LP columns.
VAR_ORDER: tuple[MessageId, ...] = (
    MessageId.U1,
    MessageId.V1,
    MessageId.W1,
    MessageId.U2,
    MessageId.V2,
    MessageId.W2,
)
VAR_INDEX: dict[MessageId, int] = {m: i for i, m in enumerate(VAR_ORDER)}

# Decode sets and the fixed orders used for subset bitmask enumeration.
RX1_MASK_ORDER: tuple[MessageId, ...] = (
    MessageId.U1,
    MessageId.V1,
    MessageId.V2,
    MessageId.W2,
)
RX2_MASK_ORDER: tuple[MessageId, ...] = (
    MessageId.U2,
    MessageId.V1,
    MessageId.V2,
    MessageId.W1,
)
RX1_DECODE: frozenset[MessageId] = frozenset(RX1_MASK_ORDER)
RX2_DECODE: frozenset[MessageId] = frozenset(RX2_MASK_ORDER)
ALL_MESSAGES: frozenset[MessageId] = frozenset(VAR_ORDER)


def decode_set(receiver: int) -> frozenset[MessageId]:
    """Messages decoded by the given receiver (1 or 2)."""
    if receiver == 1:
        return RX1_DECODE
    if receiver == 2:
        return RX2_DECODE
    raise ValueError(f"receiver must be 1 or 2, got {receiver!r}")


# ---------------------------------------------------------------------------
# Channel parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ChannelParams:
    """Standard-form network parameters.

    h1 is the cross gain from Tx1 into Rx2, h2 from Tx2 into Rx1; p1 and p2
    are the transmit power constraints in linear units.  Noise variances are
    normalized to 1 and carried implicitly.
    """

    h1: float
    h2: float
    p1: float
    p2: float

    def __post_init__(self) -> None:
        for name in ("h1", "h2", "p1", "p2"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise NonFiniteInputError(f"{name} must be a real number, got {v!r}")
            if not math.isfinite(v):
                raise NonFiniteInputError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, float(v))
        if self.h1 < 0 or self.h2 < 0:
            raise NegativeGainError(f"gains must be >= 0, got h1={self.h1}, h2={self.h2}")
        if self.p1 <= 0 or self.p2 <= 0:
            raise NonPositivePowerError(f"powers must be > 0, got p1={self.p1}, p2={self.p2}")


def validate_params(h1: float, h2: float, p1: float, p2: float) -> ChannelParams:
    """Validate four raw reals into ChannelParams.

    Raises NonFiniteInputError, NegativeGainError or NonPositivePowerError.
    """
    return ChannelParams(h1, h2, p1, p2)


# ---------------------------------------------------------------------------
# Power splits
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PowerSplit:
    """Power fractions (a_i, b_i, g_i) for messages (U_i, V_i, W_i), i=1,2.

    Each transmitter's three fractions lie in [0, 1] and sum to 1 within
    1e-12.  Construct slightly-off values through :func:`validate_split`,
    which clips and renormalizes; direct construction is strict.
    """

    a1: float
    b1: float
    g1: float
    a2: float
    b2: float
    g2: float

    def __post_init__(self) -> None:
        for name in ("a1", "b1", "g1", "a2", "b2", "g2"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise NonFiniteInputError(f"{name} must be finite, got {v}")
            if v < 0.0 or v > 1.0:
                raise RangeViolationError(f"{name} must be in [0, 1], got {v}")
            object.__setattr__(self, name, float(v))
        s1 = self.a1 + self.b1 + self.g1
        s2 = self.a2 + self.b2 + self.g2
        if abs(s1 - 1.0) > SIMPLEX_RENORM_TOL or abs(s2 - 1.0) > SIMPLEX_RENORM_TOL:
            raise SimplexViolationError(
                f"fractions must sum to 1 per transmitter, got {s1!r} and {s2!r}"
            )

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.a1, self.b1, self.g1, self.a2, self.b2, self.g2)

    def fraction_of(self, m: MessageId) -> float:
        return {
            MessageId.U1: self.a1,
            MessageId.V1: self.b1,
            MessageId.W1: self.g1,
            MessageId.U2: self.a2,
            MessageId.V2: self.b2,
            MessageId.W2: self.g2,
        }[m]


def validate_split(
    a1: float, b1: float, g1: float, a2: float, b2: float, g2: float
) -> PowerSplit:
    """Validate six raw fractions into a PowerSplit.

    Components within 1e-9 of the [0, 1] boundary are clipped; fraction sums
    within 1e-9 of 1 are renormalized exactly.  Larger violations raise
    RangeViolationError / SimplexViolationError.
    """
    raw = [a1, b1, g1, a2, b2, g2]
    clipped: list[float] = []
    for name, v in zip(("a1", "b1", "g1", "a2", "b2", "g2"), raw):
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise NonFiniteInputError(f"{name} must be a finite real, got {v!r}")
        v = float(v)
        if v < -SIMPLEX_REJECT_TOL or v > 1.0 + SIMPLEX_REJECT_TOL:
            raise RangeViolationError(f"{name} must be in [0, 1], got {v}")
        clipped.append(min(1.0, max(0.0, v)))
    out: list[float] = []
    for k in (0, 3):
        s = clipped[k] + clipped[k + 1] + clipped[k + 2]
        if abs(s - 1.0) > SIMPLEX_REJECT_TOL:
            raise SimplexViolationError(
                f"transmitter {1 if k == 0 else 2} fractions sum to {s!r}, not 1"
            )
        out.extend(v / s for v in clipped[k : k + 3])
    return PowerSplit(*out)


# ---------------------------------------------------------------------------
# Rates and constraints
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class RateTuple:
    """Per-message rates in bits per channel use, all >= 0."""

    ru1: float
    rv1: float
    rw1: float
    ru2: float
    rv2: float
    rw2: float

    def __post_init__(self) -> None:
        for name in ("ru1", "rv1", "rw1", "ru2", "rv2", "rw2"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise NonFiniteInputError(f"{name} must be finite and >= 0, got {v}")

    @property
    def total(self) -> float:
        """The sum rate: total of the six message rates."""
        return self.ru1 + self.rv1 + self.rw1 + self.ru2 + self.rv2 + self.rw2

    def as_tuple(self) -> tuple[float, ...]:
        return (self.ru1, self.rv1, self.rw1, self.ru2, self.rv2, self.rw2)


@dataclass(frozen=True, slots=True)
class RateConstraint:
    """One region inequality: sum of rates over ``subset`` at ``receiver`` <= rhs."""

    receiver: int
    subset: frozenset[MessageId]
    rhs: float

    def __post_init__(self) -> None:
        if self.receiver not in (1, 2):
            raise ValueError(f"receiver must be 1 or 2, got {self.receiver!r}")
        subset = frozenset(self.subset)
        object.__setattr__(self, "subset", subset)
        if not subset:
            raise ValueError("constraint subset must be non-empty")
        if not subset <= decode_set(self.receiver):
            raise ValueError(
                f"subset {sorted(m.value for m in subset)} not decodable at Rx{self.receiver}"
            )
        if not math.isfinite(self.rhs) or self.rhs < 0.0:
            raise ValueError(f"rhs must be finite and >= 0, got {self.rhs}")

    def var_mask(self) -> int:
        """Bitmask of the subset over the canonical six-variable order."""
        mask = 0
        for m in self.subset:
            mask |= 1 << VAR_INDEX[m]
        return mask


# ---------------------------------------------------------------------------
# Regimes
# ---------------------------------------------------------------------------


class Regime(enum.Enum):
    """Interference regime of a channel instance.

    MIXED_CASE1 is the case with h1 >= 1 and h2 <= 1 (strong cross link out
    of Tx1); MIXED_CASE2 is the index-swapped mirror.
    """

    LOW = "LI"
    MIXED_CASE1 = "MI1"
    MIXED_CASE2 = "MI2"
    STRONG = "SI"
    VERY_STRONG = "VSI"


@dataclass(frozen=True, slots=True)
class SubregionFlags:
    """Sub-region predicates evaluated on a channel instance.

    li_tin_optimal:   h1*(1+h2^2*p2) + h2*(1+h1^2*p1) <= 1  (treat-as-noise
                      optimal inside low interference)
    vsi_two_message:  (1+p2)/h1 + (1+p1)/h2 <= 1  (two cross messages
                      suffice inside very strong interference)
    mi_h1h2_unity:    |h1*h2 - 1| <= 1e-12 inside a mixed-interference case
    mi_very_high_direct: h1^2 >= 1+p2 inside mixed case 1 (and _mirror for
                      h2^2 >= 1+p1 inside mixed case 2)
    mi_weak_cross:    h2^2 <= 1/(1+h1^2*p1) inside mixed case 1 (and _mirror
                      for h1^2 <= 1/(1+h2^2*p2) inside mixed case 2)
    """

    li_tin_optimal: bool = False
    vsi_two_message: bool = False
    mi_h1h2_unity: bool = False
    mi_very_high_direct: bool = False
    mi_weak_cross: bool = False
    mi_very_high_direct_mirror: bool = False
    mi_weak_cross_mirror: bool = False

    def as_dict(self) -> dict[str, bool]:
        return {
            "li_tin_optimal": self.li_tin_optimal,
            "vsi_two_message": self.vsi_two_message,
            "mi_h1h2_unity": self.mi_h1h2_unity,
            "mi_very_high_direct": self.mi_very_high_direct,
            "mi_weak_cross": self.mi_weak_cross,
            "mi_very_high_direct_mirror": self.mi_very_high_direct_mirror,
            "mi_weak_cross_mirror": self.mi_weak_cross_mirror,
        }

    def any_mixed(self) -> bool:
        return (
            self.mi_h1h2_unity
            or self.mi_very_high_direct
            or self.mi_weak_cross
            or self.mi_very_high_direct_mirror
            or self.mi_weak_cross_mirror
        )


@dataclass(frozen=True, slots=True)
class RegimeReport:
    """Regime label, sub-region flags, sufficient message set and, when a
    mixed-interference certificate applies, the exact sum capacity."""

    regime: Regime
    flags: SubregionFlags
    sufficient_messages: frozenset[MessageId]
    sum_capacity: float | None = None
    certificate_labels: tuple[str, ...] = ()
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.sum_capacity is not None and not self.flags.any_mixed():
            raise ValueError(
                "sum_capacity requires at least one mixed-interference sub-region flag"
            )
