import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from j2ctrl.errors import DomainError
from j2ctrl.model import (
    ALL_CONFIGS,
    CONFIG_NAMES,
    P_PAPER,
    P_UNIT,
    PhysicalParams,
    PhysicalState,
    ThrusterConfig,
    control_to_full,
    from_deviation,
    input_matrix,
    load_params,
    params_for_mode,
    params_from_dict,
    to_deviation,
)


def e(i):
    v = np.zeros(6)
    v[i - 1] = 1.0
    return v


class TestParams:
    def test_paper_values(self):
        assert (P_PAPER.mu, P_PAPER.R, P_PAPER.J2, P_PAPER.sigma, P_PAPER.omega) == (
            398600.4418, 6378.137, 1.08262668e-3, 6800.0, 1.0
        )

    @pytest.mark.parametrize(
        "kw",
        [
            dict(mu=0.0),
            dict(mu=-1.0),
            dict(R=0.0),
            dict(J2=-1e-3),
            dict(omega=0.0),
            dict(sigma=6000.0),  # inside the body with J2 > 0
            dict(sigma=float("nan")),
            dict(mu=float("inf")),
        ],
    )
    def test_invalid(self, kw):
        base = P_PAPER.to_dict()
        base.update(kw)
        with pytest.raises(DomainError):
            PhysicalParams(**base)

    def test_unit_set_allowed_without_j2(self):
        assert P_UNIT.sigma == P_UNIT.R == 1.0
        with pytest.raises(DomainError):
            PhysicalParams(mu=1, R=1, J2=1e-3, sigma=1, omega=1)

    def test_physical_rate(self):
        w = P_PAPER.physical().omega
        # 40-digit reference for sqrt(mu/sigma^3 + 1.5 mu R^2 J2 / sigma^5)
        assert w == pytest.approx(0.001126718784317107905589760114187390898511, rel=1e-14)
        assert P_UNIT.physical().omega == 1.0

    def test_modes(self):
        assert params_for_mode("paper") is P_PAPER
        assert params_for_mode("unit") is P_UNIT
        assert params_for_mode("physical") == P_PAPER.physical()
        with pytest.raises(DomainError):
            params_for_mode("bogus")

    def test_json_defaults(self, tmp_path):
        f = tmp_path / "p.json"
        f.write_text(json.dumps({"sigma": 7000.0, "omega": 0.5}))
        p = load_params(f)
        assert p.sigma == 7000.0 and p.omega == 0.5
        assert p.mu == P_PAPER.mu and p.J2 == P_PAPER.J2

    def test_json_errors(self, tmp_path):
        with pytest.raises(DomainError):
            load_params(tmp_path / "missing.json")
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(DomainError):
            load_params(bad)
        with pytest.raises(DomainError):
            params_from_dict({"G": 1.0})
        with pytest.raises(DomainError):
            params_from_dict([1, 2])
        with pytest.raises(DomainError):
            params_from_dict({"mu": "big"})


class TestThrusterConfig:
    def test_seven_cases_in_order(self):
        assert CONFIG_NAMES == ("r", "theta", "z", "r-theta", "r-z", "theta-z", "r-theta-z")
        assert len(set(ALL_CONFIGS)) == 7

    def test_canonical_order(self):
        assert ThrusterConfig(("z", "theta")).active == ("theta", "z")
        assert ThrusterConfig.parse("z-r") == ThrusterConfig.parse("r-z")

    @pytest.mark.parametrize("bad", [(), ("x",), ("r", "r")])
    def test_invalid(self, bad):
        with pytest.raises(DomainError):
            ThrusterConfig(bad)

    def test_control_scatter(self):
        c = ThrusterConfig.parse("r-z")
        np.testing.assert_array_equal(control_to_full([2.0, 3.0], c), [2.0, 0.0, 3.0])
        with pytest.raises(DomainError):
            control_to_full([1.0], c)


class TestInputMatrix:
    def test_r(self):
        np.testing.assert_array_equal(input_matrix(ThrusterConfig.parse("r")), e(2)[:, None])

    def test_theta_z(self):
        B = input_matrix(ThrusterConfig.parse("theta-z"))
        np.testing.assert_array_equal(B, np.column_stack([e(4), e(6)]))

    def test_all(self):
        B = input_matrix(ThrusterConfig.parse("r-theta-z"))
        np.testing.assert_array_equal(B, np.column_stack([e(2), e(4), e(6)]))

    @pytest.mark.parametrize("c", ALL_CONFIGS, ids=CONFIG_NAMES)
    def test_columns_distinct_unit(self, c):
        B = input_matrix(c)
        assert np.linalg.matrix_rank(B) == c.m
        for col in B.T:
            assert np.count_nonzero(col) == 1 and col.sum() == 1.0
            assert np.flatnonzero(col)[0] in (1, 3, 5)


class TestDeviation:
    def test_reference_orbit_is_origin(self):
        p, t = P_PAPER, 3.7
        s = PhysicalState(p.sigma, p.omega * t, 0.0, 0.0, p.omega, 0.0)
        np.testing.assert_array_equal(to_deviation(s, t, p), np.zeros(6))

    @pytest.mark.parametrize("t", [0.0, 2.5, 100.0])
    def test_componentwise(self, t):
        p = P_PAPER
        s = PhysicalState(p.sigma + 1, p.omega * t, 5.0, 0.0, p.omega, 0.0)
        np.testing.assert_allclose(to_deviation(s, t, p), [1, 0, 0, 0, 5, 0], atol=1e-9)

    def test_inverse_examples(self):
        p = P_PAPER
        assert from_deviation(np.zeros(6), 0.0, p) == PhysicalState(p.sigma, 0, 0, 0, p.omega, 0)
        assert from_deviation([1, 0, 0, 0, 5, 0], 0.0, p) == PhysicalState(
            p.sigma + 1, 0, 5, 0, p.omega, 0
        )

    def test_singularity(self):
        with pytest.raises(DomainError):
            from_deviation([-P_PAPER.sigma, 0, 0, 0, 0, 0], 0.0, P_PAPER)
        with pytest.raises(DomainError):
            PhysicalState(0.0, 0, 0, 0, 0, 0)

    def test_round_trip_random(self, rng):
        p = P_PAPER
        for _ in range(100):
            x = rng.normal(size=6) * [100, 1, 100, 1, 100, 1]
            t = rng.uniform(0, 1e4)
            back = to_deviation(from_deviation(x, t, p), t, p)
            # x3 goes through theta = x3/sigma + omega t, which rounds at eps * omega t
            atol = 4 * np.finfo(float).eps * p.sigma * (1 + p.omega * t)
            np.testing.assert_allclose(back, x, rtol=1e-12, atol=atol)

    @given(
        r=st.floats(1.0, 1e5),
        theta=st.floats(-10, 10),
        z=st.floats(-1e4, 1e4),
        v=st.lists(st.floats(-10, 10), min_size=3, max_size=3),
        t=st.floats(0, 100),
    )
    def test_round_trip_property(self, r, theta, z, v, t):
        p = P_PAPER
        s = PhysicalState(r, theta, z, *v)
        back = from_deviation(to_deviation(s, t, p), t, p)
        for a, b in zip(back.as_array(), s.as_array()):
            assert math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-9)
