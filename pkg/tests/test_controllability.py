import itertools
import json

import numpy as np
import pytest

from j2ctrl.controllability import (
    gramian,
    gramian_quadrature,
    kalman_matrix,
    normalized_jacobian,
    normalized_model,
    rank_table,
    rank_verdict,
)
from j2ctrl.errors import ArgumentError
from j2ctrl.linearize import LinearModel, build_model
from j2ctrl.model import ALL_CONFIGS, CONFIG_NAMES, P_PAPER, P_UNIT, ThrusterConfig
from j2ctrl.numkit import numerical_rank, spd_solve
from reference_q import REFERENCE_Q, REFERENCE_RANKS

EXPECTED_RANKS = (3, 4, 2, 4, 5, 6, 6)
PARAM_SETS = {"paper": P_PAPER, "unit": P_UNIT, "physical": P_PAPER.physical()}


def e(i):
    return np.eye(6)[:, i - 1]


class TestKalman:
    @pytest.mark.parametrize("name", CONFIG_NAMES)
    def test_reference_q_exact(self, name):
        Q = kalman_matrix(normalized_model(ThrusterConfig.parse(name))).Q
        np.testing.assert_array_equal(Q, REFERENCE_Q[name])
        assert numerical_rank(Q) == REFERENCE_RANKS[name]

    def test_zero_dynamics(self):
        Q = kalman_matrix(LinearModel(np.zeros((6, 6)), e(1))).Q
        np.testing.assert_array_equal(Q, np.column_stack([e(1)] + [np.zeros(6)] * 5))

    def test_z_only_normalized(self):
        Q = kalman_matrix(LinearModel(normalized_jacobian(), e(6))).Q
        np.testing.assert_array_equal(Q, np.column_stack([e(6), e(5)] + [np.zeros(6)] * 4))

    @pytest.mark.parametrize("c", ALL_CONFIGS, ids=CONFIG_NAMES)
    def test_block_recursion(self, c):
        m = build_model(P_PAPER, c)
        K = kalman_matrix(m)
        assert K.Q.shape == (6, 6 * c.m)
        np.testing.assert_array_equal(K.block(0), m.B)
        for k in range(1, 6):
            np.testing.assert_array_equal(K.block(k), m.A @ K.block(k - 1))

    @pytest.mark.parametrize("mode", PARAM_SETS)
    def test_z_only_range(self, mode):
        Q = kalman_matrix(build_model(PARAM_SETS[mode], ThrusterConfig.parse("z"))).Q
        assert np.all(Q[:4] == 0.0)


class TestRanks:
    def test_paper_examples(self):
        assert rank_verdict(build_model(P_PAPER, ThrusterConfig.parse("theta-z"))) == (6, True)
        assert rank_verdict(build_model(P_PAPER, ThrusterConfig.parse("z"))) == (2, False)
        assert rank_verdict(build_model(P_PAPER, ThrusterConfig.parse("r-z"))) == (5, False)

    @pytest.mark.parametrize("mode", PARAM_SETS)
    def test_table(self, mode):
        report = rank_table(PARAM_SETS[mode])
        assert report.ranks == EXPECTED_RANKS
        assert [e.config.name for e in report.entries] == list(CONFIG_NAMES)
        for entry in report.entries:
            assert entry.controllable == (entry.rank == 6)

    @pytest.mark.parametrize("mode", PARAM_SETS)
    def test_monotone_in_thrusters(self, mode):
        p = PARAM_SETS[mode]
        rank = {c: rank_verdict(build_model(p, c))[0] for c in ALL_CONFIGS}
        for a, b in itertools.permutations(ALL_CONFIGS, 2):
            if set(a.active) <= set(b.active):
                assert rank[a] <= rank[b]

    def test_report_serialization(self):
        report = rank_table(P_PAPER)
        doc = json.loads(report.to_json())
        assert [e["rank"] for e in doc["entries"]] == list(EXPECTED_RANKS)
        assert doc["params"]["sigma"] == 6800.0
        table = report.to_table().splitlines()
        assert table[0].split() == ["config", "rank", "controllable", "min-sv(W)", "cond(W)"]
        assert len(table) == 8
        assert [row.split()[2] for row in table[1:]] == ["no"] * 5 + ["yes"] * 2


class TestGramian:
    def test_constant_integrand(self):
        m = LinearModel(np.zeros((6, 6)), e(1))
        np.testing.assert_allclose(gramian(m, 0.0, 3.0).W, 3.0 * np.outer(e(1), e(1)), atol=1e-15)

    def test_quadrature_identity(self):
        m = LinearModel(np.zeros((6, 6)), np.eye(6))
        np.testing.assert_allclose(gramian_quadrature(m, 1.0, 3.5, 2).W, 2.5 * np.eye(6), rtol=1e-15)

    def test_unit_theta_z_against_quadrature(self):
        m = build_model(P_UNIT, ThrusterConfig.parse("theta-z"))
        W = gramian(m, 0.0, 10.0).W
        S = gramian_quadrature(m, 0.0, 10.0, 256).W
        assert np.linalg.norm(W - S) / np.linalg.norm(W) < 1e-8

    def test_unit_z_closed_form(self):
        # the out-of-plane block is a unit oscillator: e^{As} e6 = (sin s, cos s)
        m = build_model(P_UNIT, ThrusterConfig.parse("z"))
        T = 10.0
        W = gramian(m, 0.0, T).W
        exact = np.array(
            [[T / 2 - np.sin(2 * T) / 4, np.sin(T) ** 2 / 2], [np.sin(T) ** 2 / 2, T / 2 + np.sin(2 * T) / 4]]
        )
        np.testing.assert_allclose(W[4:, 4:], exact, rtol=1e-14)
        assert np.all(W[:4] == 0) and np.all(W[:, :4] == 0)
        assert numerical_rank(W) == 2
        assert np.linalg.svd(W[4:, 4:], compute_uv=False).min() > 0

    @pytest.mark.parametrize("c", ALL_CONFIGS, ids=CONFIG_NAMES)
    def test_quadrature_fourth_order(self, c):
        m = build_model(P_PAPER, c)
        W = gramian(m, 0.0, 10.0).W
        errs = [np.linalg.norm(gramian_quadrature(m, 0.0, 10.0, n).W - W) for n in (64, 128, 256)]
        if errs[1] < 1e-12 * np.linalg.norm(W):
            return  # already at rounding level
        assert np.log2(errs[0] / errs[1]) > 3.8
        assert np.log2(errs[1] / errs[2]) > 3.8

    def test_quadrature_symmetric(self):
        S = gramian_quadrature(build_model(P_PAPER, ThrusterConfig.parse("r-theta-z")), 0, 10, 64).W
        assert np.max(np.abs(S - S.T)) <= 1e-12 * np.max(np.abs(S))

    @pytest.mark.parametrize("mode", ["paper", "unit"])
    @pytest.mark.parametrize("c", ALL_CONFIGS, ids=CONFIG_NAMES)
    @pytest.mark.parametrize("T", [1.0, 10.0])
    def test_rank_matches_kalman(self, mode, c, T):
        m = build_model(PARAM_SETS[mode], c)
        assert numerical_rank(gramian(m, 0.0, T).W) == rank_verdict(m)[0]

    @pytest.mark.parametrize("c", ALL_CONFIGS, ids=CONFIG_NAMES)
    def test_symmetric_psd(self, c, rng):
        W = gramian(build_model(P_PAPER, c), 0.0, 10.0).W
        scale = np.max(np.abs(W))
        assert np.max(np.abs(W - W.T)) <= 1e-10 * scale
        for _ in range(50):
            v = rng.normal(size=6)
            assert v @ W @ v >= -1e-10 * np.linalg.norm(W, 2) * (v @ v)

    @pytest.mark.parametrize("mode", ["paper", "unit"])
    @pytest.mark.parametrize("c", ALL_CONFIGS, ids=CONFIG_NAMES)
    def test_monotone_in_horizon(self, mode, c):
        m = build_model(PARAM_SETS[mode], c)
        W1, W2 = gramian(m, 0.0, 4.0).W, gramian(m, 0.0, 9.0).W
        ev = np.linalg.eigvalsh(W2 - W1)
        assert ev.min() >= -1e-10 * np.abs(ev).max()

    @pytest.mark.parametrize("mode", ["paper", "unit"])
    @pytest.mark.parametrize("name", ["theta-z", "r-theta-z"])
    def test_controllable_spd(self, mode, name, rng):
        W = gramian(build_model(PARAM_SETS[mode], ThrusterConfig.parse(name)), 0.0, 10.0)
        assert W.singular_values.min() > 0
        y = rng.normal(size=6)
        x = spd_solve(W.W, y)
        assert np.linalg.norm(W.W @ x - y) <= 1e-10 * np.linalg.norm(y)

    def test_time_shift_invariance(self):
        m = build_model(P_UNIT, ThrusterConfig.parse("theta-z"))
        np.testing.assert_allclose(gramian(m, 5.0, 8.0).W, gramian(m, 0.0, 3.0).W, rtol=1e-13, atol=1e-15)

    @pytest.mark.parametrize("t1", [0.0, -1.0])
    def test_bad_horizon(self, t1):
        m = build_model(P_UNIT, ThrusterConfig.parse("z"))
        with pytest.raises(ArgumentError):
            gramian(m, 0.0, t1)
        with pytest.raises(ArgumentError):
            gramian_quadrature(m, 0.0, t1, 4)
