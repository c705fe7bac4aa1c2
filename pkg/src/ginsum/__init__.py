"""Sum rates of the 2x2 Gaussian interference network with six messages.

The package evaluates the 30-constraint achievable rate region of the
two-transmitter, two-receiver Gaussian network under Han-Kobayashi style
superposition (direct-private, common and cross-private message per
transmitter), maximizes the achievable sum rate over power splits,
classifies interference regimes with their sub-regions and sufficient
message sets, certifies sum capacity in the mixed-interference sub-regions,
and ships a randomized verifier for all of the above.
"""

from .kernels import BACKEND
from .model import (
    ChannelParams,
    GinsumError,
    MessageId,
    PowerSplit,
    RateConstraint,
    RateTuple,
    Regime,
    RegimeReport,
    SubregionFlags,
    validate_params,
    validate_split,
)
from .optimizer import OptimizeResult, alpha_merge, gamma_merge, maximize_sum_rate
from .rates import (
    EffectiveNoise,
    SumRateBounds,
    cap,
    effective_noise,
    mac_sum_capacity,
    received_powers,
    region_constraints,
    sum_rate_bounds,
    tin_sum_rate,
)
from .region_lp import PairingBound, max_sum_rate_lp, pairing_oracle
from .regimes import (
    TransformedNetwork,
    classify,
    li_tin_condition,
    mixed_capacity_certificate,
    regime_report,
    transform,
    vsi_two_message_condition,
)
from .verifier import PropertyReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ChannelParams",
    "EffectiveNoise",
    "GinsumError",
    "MessageId",
    "OptimizeResult",
    "PairingBound",
    "PowerSplit",
    "PropertyReport",
    "RateConstraint",
    "RateTuple",
    "Regime",
    "RegimeReport",
    "SubregionFlags",
    "SumRateBounds",
    "TransformedNetwork",
    "alpha_merge",
    "cap",
    "classify",
    "effective_noise",
    "gamma_merge",
    "li_tin_condition",
    "mac_sum_capacity",
    "max_sum_rate_lp",
    "maximize_sum_rate",
    "mixed_capacity_certificate",
    "pairing_oracle",
    "received_powers",
    "regime_report",
    "region_constraints",
    "run_suite",
    "sum_rate_bounds",
    "tin_sum_rate",
    "transform",
    "validate_params",
    "validate_split",
    "vsi_two_message_condition",
]
