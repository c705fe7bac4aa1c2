import pytest

from ginsum import verifier
from ginsum.model import MessageId, Regime, ZeroGainError, validate_params
from ginsum.rates import cap
from ginsum.regimes import (
    classify,
    li_tin_condition,
    li_tin_margin,
    mixed_capacity_certificate,
    regime_report,
    transform,
    vsi_two_message_condition,
    vsi_two_message_margin,
)

M = MessageId


class TestClassify:
    @pytest.mark.parametrize(
        "h1,h2,p1,p2,expected",
        [
            (0.5, 0.5, 1, 1, Regime.LOW),
            (2, 0.5, 1, 1, Regime.MIXED_CASE1),
            (0.5, 2, 1, 1, Regime.MIXED_CASE2),
            (2, 2, 10, 10, Regime.STRONG),
            (4, 4, 10, 10, Regime.VERY_STRONG),
        ],
    )
    def test_examples(self, h1, h2, p1, p2, expected):
        assert classify(validate_params(h1, h2, p1, p2)) is expected

    def test_boundary_gain_one_prefers_low(self):
        assert classify(validate_params(1, 1, 1, 1)) is Regime.LOW
        assert classify(validate_params(1, 0.5, 1, 1)) is Regime.LOW
        assert classify(validate_params(1, 2, 5, 5)) is Regime.MIXED_CASE2

    def test_boundary_vsi_threshold_prefers_very_strong(self):
        # h^2 = p + 1 exactly on both links
        p = validate_params(2, 2, 3, 3)
        assert classify(p) is Regime.VERY_STRONG

    def test_asymmetric_strong(self):
        # One gain clears its very-strong threshold, the other does not.
        p = validate_params(10, 1.5, 10, 10)
        assert classify(p) is Regime.STRONG
        assert any("asymmetric" in n for n in regime_report(p).notes)

    def test_partition_total(self, rng):
        for _ in range(300):
            params = verifier.sample_params(rng)
            assert classify(params) in Regime


class TestConditions:
    def test_li_tin_examples(self):
        assert li_tin_condition(validate_params(0.1, 0.1, 1, 1))  # 0.202
        assert not li_tin_condition(validate_params(0.5, 0.5, 1, 1))  # 1.25
        assert li_tin_condition(validate_params(0, 0, 7, 13))

    def test_vsi_two_message_examples(self):
        assert vsi_two_message_condition(validate_params(10, 10, 1, 1))  # 0.4
        assert not vsi_two_message_condition(validate_params(2, 2, 1, 1))  # 2.0

    def test_vsi_condition_zero_gain(self):
        with pytest.raises(ZeroGainError):
            vsi_two_message_condition(validate_params(0, 1, 1, 1))

    def test_condition_duality_identity(self, rng):
        # The very-strong two-message condition is the treat-as-noise
        # condition of the transformed network, algebraically.
        for _ in range(500):
            p1, p2 = rng.uniform(0.001, 20, 2)
            h1, h2 = rng.uniform(0.5, 10, 2)
            params = validate_params(h1, h2, p1, p2)
            m_direct = vsi_two_message_margin(params)
            m_mapped = li_tin_margin(transform(params).params)
            assert abs(m_direct - m_mapped) <= 1e-12
            assert vsi_two_message_condition(params) == li_tin_condition(
                transform(params).params
            )


class TestTransform:
    def test_mapping(self):
        t = transform(validate_params(2, 2, 1, 1))
        assert (t.params.h1, t.params.h2, t.params.p1, t.params.p2) == (0.5, 0.5, 4.0, 4.0)
        assert t.role_swap
        assert classify(t.params) is Regime.LOW

    def test_fixed_point(self):
        t = transform(validate_params(1, 1, 3, 5))
        assert (t.params.h1, t.params.h2, t.params.p1, t.params.p2) == (1.0, 1.0, 3.0, 5.0)

    def test_involution(self, rng):
        for _ in range(200):
            p1, p2 = rng.uniform(0.001, 20, 2)
            h1, h2 = rng.uniform(0.01, 10, 2)
            params = validate_params(h1, h2, p1, p2)
            back = transform(transform(params).params).params
            assert back.h1 == pytest.approx(params.h1, rel=1e-12)
            assert back.h2 == pytest.approx(params.h2, rel=1e-12)
            assert back.p1 == pytest.approx(params.p1, rel=1e-12)
            assert back.p2 == pytest.approx(params.p2, rel=1e-12)

    def test_zero_gain_rejected(self):
        with pytest.raises(ZeroGainError):
            transform(validate_params(0, 1, 1, 1))

    def test_strong_maps_to_low(self, rng):
        for _ in range(100):
            params = verifier.sample_si(rng)
            assert classify(params) is Regime.STRONG
            assert classify(transform(params).params) is Regime.LOW


class TestCertificate:
    def test_unity_and_very_high_direct(self):
        cert = mixed_capacity_certificate(validate_params(2, 0.5, 1, 1))
        assert cert is not None
        value, labels = cert
        assert value == pytest.approx(cap(5), abs=1e-15)
        assert set(labels) == {"h1h2_unity", "very_high_direct"}

    def test_weak_cross(self):
        # (2, 0.4): 0.16 <= 1/(1+4) holds, and so does 4 >= 1+p2; all
        # satisfied labels are reported.
        cert = mixed_capacity_certificate(validate_params(2, 0.4, 1, 1))
        assert cert is not None
        value, labels = cert
        assert value == pytest.approx(cap(5), abs=1e-15)
        assert set(labels) == {"very_high_direct", "weak_cross"}

    def test_weak_cross_only(self):
        # h1^2 = 1.44 < 1+p2 and h2^2 = 0.09 <= 1/(1+1.44)
        cert = mixed_capacity_certificate(validate_params(1.2, 0.3, 1, 1))
        assert cert is not None
        value, labels = cert
        assert value == pytest.approx(cap(1.44 + 1), abs=1e-15)
        assert labels == ("weak_cross",)

    def test_low_interference_none(self):
        assert mixed_capacity_certificate(validate_params(0.5, 0.5, 1, 1)) is None

    def test_mixed_without_subregion_none(self):
        # MI1 but none of the three conditions: h1=1.5, h2=0.9, p2=3
        params = validate_params(1.5, 0.9, 1, 3)
        assert abs(params.h1 * params.h2 - 1) > 1e-12
        assert params.h1 ** 2 < 1 + params.p2
        assert params.h2 ** 2 > 1 / (1 + params.h1 ** 2 * params.p1)
        assert mixed_capacity_certificate(params) is None

    def test_mirror_case(self):
        cert = mixed_capacity_certificate(validate_params(0.5, 2, 1, 1))
        assert cert is not None
        value, labels = cert
        assert value == pytest.approx(cap(5), abs=1e-15)
        assert "very_high_direct" in labels


class TestRegimeReport:
    def test_li_tin_report(self):
        report = regime_report(validate_params(0.1, 0.1, 1, 1))
        assert report.regime is Regime.LOW
        assert report.flags.li_tin_optimal
        assert report.sufficient_messages == {M.U1, M.U2}
        assert report.sum_capacity is None

    def test_mi_report(self):
        report = regime_report(validate_params(2, 0.5, 1, 1))
        assert report.regime is Regime.MIXED_CASE1
        assert report.sufficient_messages == {M.U2, M.W1}
        assert report.sum_capacity == pytest.approx(cap(5), abs=1e-15)

    def test_vsi_two_message_report(self):
        report = regime_report(validate_params(10, 10, 1, 1))
        assert report.regime is Regime.VERY_STRONG
        assert report.flags.vsi_two_message
        assert report.sufficient_messages == {M.W1, M.W2}

    def test_plain_regions(self):
        assert regime_report(validate_params(0.9, 0.9, 20, 20)).sufficient_messages == {
            M.U1, M.V1, M.U2, M.V2,
        }
        assert regime_report(validate_params(2, 2, 10, 10)).sufficient_messages == {
            M.W1, M.V1, M.W2, M.V2,
        }
        assert regime_report(validate_params(4, 4, 10, 10)).sufficient_messages == {
            M.W1, M.V1, M.W2, M.V2,
        }
