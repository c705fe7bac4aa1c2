"""Interference-regime classification, sub-region predicates, sufficient
message sets and mixed-interference sum-capacity certificates.

The regime boxes overlap on their boundaries (the defining inequalities are
all closed), so classification fixes deterministic tie-breaks:

* a gain exactly 1 resolves away from strong interference (toward low, then
  mixed), and
* a squared gain exactly at power+1 resolves toward very strong.

The asymmetric case where both gains exceed 1 but only one clears its
very-strong threshold has no label of its own; it is classified strong and
the report carries a note.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    ChannelParams,
    MessageId,
    Regime,
    RegimeReport,
    SubregionFlags,
    ZeroGainError,
)
from .rates import cap

H1H2_UNITY_TOL = 1e-12

_M = MessageId
SUFFICIENT_MESSAGES: dict[str, frozenset[MessageId]] = {
    "LI": frozenset({_M.U1, _M.V1, _M.U2, _M.V2}),
    "LI_TIN": frozenset({_M.U1, _M.U2}),
    "MI1": frozenset({_M.U2, _M.W1}),
    "MI2": frozenset({_M.U1, _M.W2}),
    "SI": frozenset({_M.W1, _M.V1, _M.W2, _M.V2}),
    "VSI": frozenset({_M.W1, _M.V1, _M.W2, _M.V2}),
    "VSI_TWO_MESSAGE": frozenset({_M.W1, _M.W2}),
}


@dataclass(frozen=True, slots=True)
class TransformedNetwork:
    """Equivalent network with inverted cross gains and scaled powers.

    Scaling each transmit signal by its cross gain and swapping the receiver
    labels turns a strong-interference instance into a low-interference one;
    direct-private and cross-private message roles interchange
    (``role_swap``).  The transform is an involution.
    """

    params: ChannelParams
    role_swap: bool


def classify(params: ChannelParams) -> Regime:
    """Total, deterministic regime classification (tie-breaks in the module
    docstring)."""
    h1, h2 = params.h1, params.h2
    if h1 <= 1.0 and h2 <= 1.0:
        return Regime.LOW
    if h2 <= 1.0:
        return Regime.MIXED_CASE1
    if h1 <= 1.0:
        return Regime.MIXED_CASE2
    if h1 * h1 >= params.p2 + 1.0 and h2 * h2 >= params.p1 + 1.0:
        return Regime.VERY_STRONG
    return Regime.STRONG


def li_tin_condition(params: ChannelParams) -> bool:
    """Whether treating interference as noise with the two direct messages
    is sum-capacity optimal: h1*(1+h2^2*p2) + h2*(1+h1^2*p1) <= 1."""
    margin = li_tin_margin(params)
    return margin <= 1.0


def li_tin_margin(params: ChannelParams) -> float:
    h1, h2, p1, p2 = params.h1, params.h2, params.p1, params.p2
    return h1 * (1.0 + h2 * h2 * p2) + h2 * (1.0 + h1 * h1 * p1)


def vsi_two_message_condition(params: ChannelParams) -> bool:
    """Whether the two cross messages suffice in very strong interference:
    (1+p2)/h1 + (1+p1)/h2 <= 1.  Requires positive gains."""
    return vsi_two_message_margin(params) <= 1.0


def vsi_two_message_margin(params: ChannelParams) -> float:
    if params.h1 <= 0.0 or params.h2 <= 0.0:
        raise ZeroGainError("condition requires h1 > 0 and h2 > 0")
    return (1.0 + params.p2) / params.h1 + (1.0 + params.p1) / params.h2


def transform(params: ChannelParams) -> TransformedNetwork:
    """Map to the equivalent network (1/h1, 1/h2, h1^2*p1, h2^2*p2)."""
    if params.h1 <= 0.0 or params.h2 <= 0.0:
        raise ZeroGainError("transform requires h1 > 0 and h2 > 0")
    return TransformedNetwork(
        params=ChannelParams(
            1.0 / params.h1,
            1.0 / params.h2,
            params.h1 * params.h1 * params.p1,
            params.h2 * params.h2 * params.p2,
        ),
        role_swap=True,
    )


def _mixed_flags(params: ChannelParams, regime: Regime) -> SubregionFlags:
    h1, h2, p1, p2 = params.h1, params.h2, params.p1, params.p2
    unity = abs(h1 * h2 - 1.0) <= H1H2_UNITY_TOL
    flags = {}
    if regime is Regime.MIXED_CASE1:
        flags = {
            "mi_h1h2_unity": unity,
            "mi_very_high_direct": h1 * h1 >= 1.0 + p2,
            "mi_weak_cross": h2 * h2 <= 1.0 / (1.0 + h1 * h1 * p1),
        }
    elif regime is Regime.MIXED_CASE2:
        flags = {
            "mi_h1h2_unity": unity,
            "mi_very_high_direct_mirror": h2 * h2 >= 1.0 + p1,
            "mi_weak_cross_mirror": h1 * h1 <= 1.0 / (1.0 + h2 * h2 * p2),
        }
    li_tin = li_tin_condition(params)
    vsi_two = (
        params.h1 > 0.0 and params.h2 > 0.0 and vsi_two_message_condition(params)
    )
    return SubregionFlags(li_tin_optimal=li_tin, vsi_two_message=vsi_two, **flags)


_CERT_LABELS = {
    "mi_h1h2_unity": "h1h2_unity",
    "mi_very_high_direct": "very_high_direct",
    "mi_weak_cross": "weak_cross",
    "mi_very_high_direct_mirror": "very_high_direct",
    "mi_weak_cross_mirror": "weak_cross",
}


def mixed_capacity_certificate(
    params: ChannelParams,
) -> tuple[float, tuple[str, ...]] | None:
    """Exact sum capacity for the three mixed-interference sub-regions.

    Returns (capacity, satisfied sub-region labels) when the instance is
    mixed and any of the unity / very-high-direct / weak-cross conditions
    holds; all satisfied labels are reported since the conditions overlap.
    """
    regime = classify(params)
    if regime not in (Regime.MIXED_CASE1, Regime.MIXED_CASE2):
        return None
    flags = _mixed_flags(params, regime)
    labels = tuple(
        _CERT_LABELS[name]
        for name in (
            "mi_h1h2_unity",
            "mi_very_high_direct",
            "mi_weak_cross",
            "mi_very_high_direct_mirror",
            "mi_weak_cross_mirror",
        )
        if flags.as_dict()[name]
    )
    if not labels:
        return None
    receiver = 2 if regime is Regime.MIXED_CASE1 else 1
    h_cross = params.h1 if receiver == 2 else params.h2
    p_cross = params.p1 if receiver == 2 else params.p2
    p_direct = params.p2 if receiver == 2 else params.p1
    return cap(h_cross * h_cross * p_cross + p_direct), labels


def _notes(params: ChannelParams, regime: Regime) -> tuple[str, ...]:
    notes: list[str] = []
    if regime is Regime.STRONG:
        vs1 = params.h1 * params.h1 >= params.p2 + 1.0
        vs2 = params.h2 * params.h2 >= params.p1 + 1.0
        if vs1 != vs2:
            notes.append(
                "asymmetric case: one gain clears its very-strong threshold;"
                " labeled SI by convention"
            )
    return tuple(notes)


def regime_report(params: ChannelParams) -> RegimeReport:
    """Regime label, all sub-region flags, the sufficient message set and
    the sum capacity when a mixed-interference certificate applies."""
    regime = classify(params)
    flags = _mixed_flags(params, regime)

    if regime is Regime.LOW:
        key = "LI_TIN" if flags.li_tin_optimal else "LI"
    elif regime is Regime.MIXED_CASE1:
        key = "MI1"
    elif regime is Regime.MIXED_CASE2:
        key = "MI2"
    elif regime is Regime.STRONG:
        key = "SI"
    else:
        key = "VSI_TWO_MESSAGE" if flags.vsi_two_message else "VSI"

    cert = mixed_capacity_certificate(params)
    sum_capacity, labels = (cert if cert is not None else (None, ()))
    return RegimeReport(
        regime=regime,
        flags=flags,
        sufficient_messages=SUFFICIENT_MESSAGES[key],
        sum_capacity=sum_capacity,
        certificate_labels=labels,
        notes=_notes(params, regime),
    )
