"""Envelope exploration: analytic bounds, exhaustive scans, seeded sampling."""

import math
from itertools import product

import numpy as np
import pytest

from qlbn.errors import InferenceError
from qlbn.network import Query, enumerate_terms
from qlbn.quantum import term_amplitude
from qlbn.sweep import (
    SweepConfig,
    analytic_bounds,
    envelope_contains,
    envelope_rows,
    evaluate_phases,
    sweep,
)


class TestAnalyticBounds:
    def test_two_phasors(self):
        assert analytic_bounds([0.6, 0.8]) == (pytest.approx(0.04), pytest.approx(1.96))

    def test_single_phasor(self):
        assert analytic_bounds([1.0]) == (1.0, 1.0)

    def test_dominated_minimum_is_zero(self):
        low, high = analytic_bounds([0.5, 0.3, 0.2])
        assert low == 0.0
        assert high == pytest.approx(1.0)

    def test_zero_minimum_attainable_by_numeric_search(self):
        """Grid search finds a phase choice that cancels [0.5, 0.3, 0.2]."""
        mags = np.array([0.5, 0.3, 0.2])
        grid = np.linspace(0.0, 2 * math.pi, 256, endpoint=False)
        best = math.inf
        for p2 in grid:
            z = mags[0] + mags[1] * np.exp(1j * p2) + mags[2] * np.exp(1j * grid)
            best = min(best, float(np.min(np.abs(z) ** 2)))
        assert best < 1e-6

    def test_empty(self):
        assert analytic_bounds([]) == (0.0, 0.0)


class TestSweepConfig:
    def test_defaults(self):
        config = SweepConfig()
        assert config.lattice == 8

    def test_step_must_divide_full_turn(self):
        with pytest.raises(ValueError, match="does not divide"):
            SweepConfig(step=1.0)

    def test_sample_count_positive(self):
        with pytest.raises(ValueError, match="positive"):
            SweepConfig(samples=0)


def joint_lattice_oracle(network, query, lattice: int, step: float):
    """Min/max normalized value per state by scanning the FULL joint lattice.

    Brute force in pure Python with complex arithmetic; independent of the
    kernel decomposition it checks. Only usable for tiny term counts.
    """
    states = network.variable(query.target).states
    mags = {
        s: [term_amplitude(network, t) for t in enumerate_terms(network, query, s)]
        for s in states
    }
    sizes = [len(mags[s]) for s in states]
    lo = {s: math.inf for s in states}
    hi = {s: -math.inf for s in states}
    for digits in product(range(lattice), repeat=sum(sizes)):
        scores = []
        offset = 0
        for s in states:
            z = 0j
            for m, d in zip(mags[s], digits[offset : offset + len(mags[s])]):
                z += m * complex(math.cos(d * step), math.sin(d * step))
            scores.append(abs(z) ** 2)
            offset += len(mags[s])
        total = sum(scores)
        if total <= 0.0:
            continue
        for s, score in zip(states, scores):
            lo[s] = min(lo[s], score / total)
            hi[s] = max(hi[s], score / total)
    return lo, hi


class TestExhaustiveSweep:
    def test_empty_unobserved_set_is_degenerate(self, single_var_net):
        env = sweep(single_var_net, Query("X", {}))
        assert env.mode == "exhaustive"
        for state, expected in (("t", 0.3), ("f", 0.7)):
            se = env.state(state)
            assert se.minimum == se.maximum == pytest.approx(expected, abs=1e-12)

    def test_symmetric_toy_spans_interval_containing_half(self, symmetric_toy_net):
        env = sweep(symmetric_toy_net, Query("X", {}))
        assert env.mode == "exhaustive"
        se = env.state("t")
        assert se.minimum < 0.5 < se.maximum
        assert se.minimum == pytest.approx(0.0, abs=1e-12)
        assert se.maximum == pytest.approx(1.0, abs=1e-12)

    def test_matches_full_joint_lattice_oracle(self, symmetric_toy_net, chain_net):
        """The per-block decomposition equals a brute-force joint scan."""
        for net, target in ((symmetric_toy_net, "X"), (chain_net, "B")):
            query = Query(target, {})
            env = sweep(net, query)
            lo, hi = joint_lattice_oracle(net, query, lattice=8, step=math.pi / 4)
            for state in net.variable(target).states:
                se = env.state(state)
                assert se.minimum == pytest.approx(lo[state], abs=1e-12)
                assert se.maximum == pytest.approx(hi[state], abs=1e-12)

    def test_witnesses_reevaluate_to_extremes(self, chain_net):
        query = Query("B", {})
        env = sweep(chain_net, query)
        for state in ("f", "t"):
            se = env.state(state)
            min_values, _ = evaluate_phases(chain_net, query, se.min_witness)
            max_values, _ = evaluate_phases(chain_net, query, se.max_witness)
            assert abs(min_values[state] - se.minimum) < 1e-12
            assert abs(max_values[state] - se.maximum) < 1e-12

    def test_single_lattice_point_equals_zero_probe(self, symmetric_toy_net):
        """A full-turn step leaves one lattice point: the all-zero vector."""
        env = sweep(symmetric_toy_net, Query("X", {}), SweepConfig(step=2 * math.pi))
        values, _ = evaluate_phases(
            symmetric_toy_net, Query("X", {}), {"f": (0.0, 0.0), "t": (0.0, 0.0)}
        )
        for state in ("f", "t"):
            se = env.state(state)
            assert se.minimum == se.maximum == pytest.approx(values[state], abs=1e-15)

    def test_diagonal_envelope_is_one(self, alarm_net):
        evidence = {v: "f" for v in alarm_net.names if v not in ("Burglar", "Earthquake")}
        evidence["Burglar"] = "t"
        env = sweep(alarm_net, Query("Burglar", {**evidence}))
        se = env.state("t")
        assert se.minimum == se.maximum == 1.0


class TestSampledSweep:
    def test_alarm_no_evidence_uses_sampling(self, alarm_net):
        env = sweep(alarm_net, Query("MaryCalls", {}), SweepConfig(samples=2000))
        assert env.mode == "sampled"
        assert len(env.probes) == 2002  # zero + sync + samples

    def test_probes_respect_analytic_bounds(self, alarm_net):
        query = Query("MaryCalls", {})
        env = sweep(alarm_net, query, SweepConfig(samples=2000))
        bounds = {}
        for state in ("f", "t"):
            mags = [
                term_amplitude(alarm_net, t)
                for t in enumerate_terms(alarm_net, query, state)
            ]
            bounds[state] = analytic_bounds(mags)
        for probe in env.probes:
            for state, (low, high) in bounds.items():
                assert low - 1e-12 <= probe.scores[state] <= high + 1e-12

    def test_envelope_within_bound_implied_interval(self, alarm_net):
        query = Query("MaryCalls", {})
        env = sweep(alarm_net, query, SweepConfig(samples=2000))
        lo_t, hi_t = analytic_bounds(
            [term_amplitude(alarm_net, t) for t in enumerate_terms(alarm_net, query, "t")]
        )
        lo_f, hi_f = analytic_bounds(
            [term_amplitude(alarm_net, t) for t in enumerate_terms(alarm_net, query, "f")]
        )
        value_low = lo_t / (lo_t + hi_f) if lo_t + hi_f > 0 else 0.0
        value_high = hi_t / (hi_t + lo_f) if hi_t + lo_f > 0 else 1.0
        se = env.state("t")
        assert value_low - 1e-12 <= se.minimum <= se.maximum <= value_high + 1e-12

    def test_seeded_reproducibility(self, alarm_net):
        config = SweepConfig(samples=1500, seed=99)
        a = sweep(alarm_net, Query("JohnCalls", {}), config)
        b = sweep(alarm_net, Query("JohnCalls", {}), config)
        assert a.by_state == b.by_state
        assert [p.values for p in a.probes] == [p.values for p in b.probes]

    def test_adding_samples_never_shrinks_envelope(self, alarm_net):
        """The first K draws of a longer run are the shorter run's draws."""
        small = sweep(alarm_net, Query("JohnCalls", {}), SweepConfig(samples=500, seed=5))
        large = sweep(alarm_net, Query("JohnCalls", {}), SweepConfig(samples=2500, seed=5))
        for state in ("f", "t"):
            assert large.state(state).minimum <= small.state(state).minimum
            assert large.state(state).maximum >= small.state(state).maximum

    def test_witnesses_reevaluate_to_extremes(self, alarm_net):
        query = Query("Earthquake", {"JohnCalls": "t"})
        env = sweep(alarm_net, query, SweepConfig(samples=1000))
        for state in ("f", "t"):
            se = env.state(state)
            values, _ = evaluate_phases(alarm_net, query, se.min_witness)
            assert abs(values[state] - se.minimum) < 1e-12
            values, _ = evaluate_phases(alarm_net, query, se.max_witness)
            assert abs(values[state] - se.maximum) < 1e-12

    def test_mandatory_probes_present(self, alarm_net):
        env = sweep(alarm_net, Query("Burglar", {}), SweepConfig(samples=100))
        kinds = [p.kind for p in env.probes[:2]]
        assert kinds == ["zero", "sync"]

    def test_zero_likelihood_raises(self, alarm_net):
        import json

        from qlbn.network import parse_network

        doc = json.loads(
            """{"variables": [{"name": "A", "states": ["f", "t"]},
                              {"name": "B", "states": ["f", "t"]}],
                "cpts": [
                  {"child": "A", "parents": [], "rows": [{"given": {}, "dist": {"f": 0.0, "t": 1.0}}]},
                  {"child": "B", "parents": ["A"],
                   "rows": [{"given": {"A": "f"}, "dist": {"f": 0.5, "t": 0.5}},
                            {"given": {"A": "t"}, "dist": {"f": 1.0, "t": 0.0}}]}]}"""
        )
        net = parse_network(json.dumps(doc))
        with pytest.raises(InferenceError, match="zero likelihood"):
            sweep(net, Query("A", {"B": "t"}))


class TestEnvelopeContains:
    def test_inside(self, symmetric_toy_net):
        env = sweep(symmetric_toy_net, Query("X", {}))
        assert envelope_contains(env.state("t"), 0.4)

    def test_outside_with_tolerance(self, single_var_net):
        env = sweep(single_var_net, Query("X", {}))
        se = env.state("t")  # degenerate [0.3, 0.3] up to float rounding
        assert envelope_contains(se, 0.3, tol=1e-12)
        assert envelope_contains(se, 0.301, tol=0.002)
        assert not envelope_contains(se, 0.31, tol=0.001)

    def test_envelope_invariant_ordering(self, alarm_net):
        env = sweep(alarm_net, Query("Alarm", {}), SweepConfig(samples=500))
        for state in ("f", "t"):
            se = env.state(state)
            assert 0.0 <= se.minimum <= se.maximum <= 1.0


class TestEnvelopeRows:
    def test_rows_cover_probes_and_states(self, symmetric_toy_net):
        env = sweep(symmetric_toy_net, Query("X", {}))
        rows = envelope_rows(env)
        assert len(rows) == 2 * len(env.probes)
        assert all(row[0] == "X" for row in rows)
        assert {row[1] for row in rows} == {"f", "t"}
