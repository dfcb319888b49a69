"""Attainable-posterior envelopes under phase variation.

For a query, each target outcome owns a block of term magnitudes; varying the
terms' phases moves the normalized posterior inside an interval. The sweep
characterizes that interval. Small blocks are scanned exhaustively on the
phase lattice; larger ones are sampled (seeded, reproducible), always probing
the all-zero and synchronicity phase vectors.

Block scores depend only on phase *differences*, so exhaustive scans pin each
block's first phase to zero, and the normalized value is monotone in each
block's score, so per-block lattice extremes combine exactly into the joint
lattice envelope without enumerating the full product lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import InferenceError
from .network import BayesianNetwork, Query, check_query, enumerate_terms
from .quantum import NEGATIVE_SCORE_LIMIT, term_amplitude
from .synchronicity import SyncPairSet, term_phase

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SweepConfig:
    """Sweep parameters; the defaults match the quarter-turn phase lattice."""

    step: float = math.pi / 4
    max_exhaustive_terms: int = 4
    samples: int = 20000
    seed: int = 0

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        lattice = round(_TWO_PI / self.step)
        if lattice < 1 or abs(lattice * self.step - _TWO_PI) > 1e-9:
            raise ValueError(f"step {self.step} does not divide 2*pi")
        if self.samples <= 0:
            raise ValueError("sample count must be positive")
        if self.max_exhaustive_terms < 0:
            raise ValueError("max_exhaustive_terms must be >= 0")

    @property
    def lattice(self) -> int:
        """Number of lattice points per phase."""
        return round(_TWO_PI / self.step)


@dataclass(frozen=True)
class ProbeRecord:
    """One evaluated joint phase assignment."""

    probe_id: int
    kind: str
    values: Mapping[str, float]
    scores: Mapping[str, float]
    phases: Mapping[str, tuple[float, ...]]


@dataclass(frozen=True)
class StateEnvelope:
    """Attainable interval for one target state, with extremal witnesses."""

    state: str
    minimum: float
    maximum: float
    min_witness: Mapping[str, tuple[float, ...]]
    max_witness: Mapping[str, tuple[float, ...]]


@dataclass(frozen=True)
class Envelope:
    target: str
    mode: str  # "exhaustive" | "sampled"
    by_state: Mapping[str, StateEnvelope]
    probes: tuple[ProbeRecord, ...] = field(repr=False)
    skipped: int = 0

    def state(self, name: str) -> StateEnvelope:
        return self.by_state[name]


def analytic_bounds(magnitudes: Sequence[float]) -> tuple[float, float]:
    """Unnormalized block-score bounds over all (continuous) phase choices.

    The score is the squared length of a phasor sum, so the maximum aligns
    every phasor and the minimum is zero unless one magnitude outweighs the
    rest combined.
    """
    mags = np.asarray(magnitudes, dtype=float)
    if mags.size == 0:
        return 0.0, 0.0
    total = float(np.sum(mags))
    shortfall = max(0.0, 2.0 * float(np.max(mags)) - total)
    return shortfall * shortfall, total * total


def envelope_contains(envelope: StateEnvelope, value: float, tol: float = 0.0) -> bool:
    """True iff ``minimum - tol <= value <= maximum + tol``."""
    return envelope.minimum - tol <= value <= envelope.maximum + tol


def evaluate_phases(
    network: BayesianNetwork,
    query: Query,
    phases_by_state: Mapping[str, Sequence[float]],
) -> tuple[dict[str, float], dict[str, float]]:
    """Normalized values and clamped raw scores for one joint phase assignment."""
    blocks = _magnitude_blocks(network, query)
    scores: dict[str, float] = {}
    for state, mags in blocks.items():
        rows = np.asarray(phases_by_state[state], dtype=float).reshape(1, -1)
        scores[state] = _clamp(float(kernels.block_scores(mags, rows)[0]))
    total = math.fsum(scores.values())
    if total <= 0.0:
        raise InferenceError("all outcome scores are zero for these phases")
    values = {state: score / total for state, score in scores.items()}
    return values, scores


def sweep(
    network: BayesianNetwork, query: Query, config: SweepConfig | None = None
) -> Envelope:
    """Explore the posterior envelope of ``query.target`` under phase variation.

    Exhaustive when every outcome block has at most
    ``config.max_exhaustive_terms`` terms, sampled otherwise. Identical
    configs produce identical envelopes, probe for probe.
    """
    config = config or SweepConfig()
    check_query(network, query)
    states = network.variable(query.target).states
    blocks = _magnitude_blocks(network, query)
    if all(not mags.size or not np.any(mags) for mags in blocks.values()):
        raise InferenceError(
            f"evidence {dict(query.evidence)} has zero likelihood; nothing to sweep"
        )

    structured = _structured_probes(network, query, blocks)
    exhaustive = all(
        mags.size <= config.max_exhaustive_terms for mags in blocks.values()
    )
    if exhaustive:
        return _sweep_exhaustive(network, query, blocks, structured, config, states)
    return _sweep_sampled(blocks, structured, config, states, query.target)


def envelope_rows(envelope: Envelope) -> list[tuple[str, str, int, str, float]]:
    """Flatten recorded probes to ``(target, state, probe_id, probe_kind, value)``."""
    rows = []
    for probe in envelope.probes:
        for state, value in probe.values.items():
            rows.append((envelope.target, state, probe.probe_id, probe.kind, value))
    return rows


# -- internals ---------------------------------------------------------------


class _Extremes:
    """Running min/max with first-occurrence witnesses."""

    def __init__(self):
        self.minimum = math.inf
        self.maximum = -math.inf
        self.min_witness: Mapping[str, tuple[float, ...]] | None = None
        self.max_witness: Mapping[str, tuple[float, ...]] | None = None

    def offer(self, value: float, witness: Mapping[str, tuple[float, ...]]):
        if value < self.minimum:
            self.minimum = value
            self.min_witness = witness
        if value > self.maximum:
            self.maximum = value
            self.max_witness = witness


def _magnitude_blocks(network: BayesianNetwork, query: Query) -> dict[str, np.ndarray]:
    blocks: dict[str, np.ndarray] = {}
    for state in network.variable(query.target).states:
        terms = enumerate_terms(network, query, state)
        blocks[state] = np.array(
            [term_amplitude(network, t) for t in terms], dtype=float
        )
    return blocks


def _structured_probes(
    network: BayesianNetwork, query: Query, blocks: Mapping[str, np.ndarray]
) -> list[tuple[str, dict[str, tuple[float, ...]]]]:
    """Mandatory probes: the all-zero vector, plus the heuristic vector if the
    network declares synchronized pairs."""
    probes = [
        ("zero", {state: (0.0,) * mags.size for state, mags in blocks.items()})
    ]
    pairs = SyncPairSet.from_network(network)
    if pairs:
        sync_vec = {
            state: tuple(
                term_phase(network, pairs, term)
                for term in enumerate_terms(network, query, state)
            )
            for state in blocks
        }
        probes.append(("sync", sync_vec))
    return probes


def _clamp(score: float) -> float:
    if score < NEGATIVE_SCORE_LIMIT:
        raise InferenceError(
            f"block score {score} is below the float-noise limit; "
            "magnitudes and phases are inconsistent"
        )
    return max(score, 0.0)


def _evaluate_joint(
    blocks: Mapping[str, np.ndarray], phases: Mapping[str, tuple[float, ...]]
) -> tuple[dict[str, float], dict[str, float]] | None:
    """Per-state (values, scores) for one joint assignment; None if total is 0."""
    scores = {}
    for state, mags in blocks.items():
        rows = np.asarray(phases[state], dtype=float).reshape(1, mags.size)
        scores[state] = _clamp(float(kernels.block_scores(mags, rows)[0]))
    total = math.fsum(scores.values())
    if total <= 0.0:
        return None
    return {s: v / total for s, v in scores.items()}, scores


def _sweep_exhaustive(network, query, blocks, structured, config, states) -> Envelope:
    extremes = {state: _Extremes() for state in states}
    probes: list[ProbeRecord] = []
    skipped = 0

    # structured probes seed the envelope; lattice extremes must beat them strictly
    for kind, phases in structured:
        evaluated = _evaluate_joint(blocks, phases)
        if evaluated is None:
            skipped += 1
            continue
        values, scores = evaluated
        probes.append(ProbeRecord(len(probes), kind, values, scores, phases))
        for state in states:
            extremes[state].offer(values[state], phases)

    scans = {
        state: kernels.lattice_block_extremes(mags, config.step, config.lattice)
        for state, mags in blocks.items()
    }
    lows = {state: (_clamp(scan[0]), scan[1]) for state, scan in scans.items()}
    highs = {state: (_clamp(scan[2]), scan[3]) for state, scan in scans.items()}

    for state in states:
        high_score, high_vec = highs[state]
        others_min = math.fsum(lows[o][0] for o in states if o != state)
        others_max = math.fsum(highs[o][0] for o in states if o != state)
        if high_score <= 0.0:
            # this block scores zero everywhere: the state is unreachable
            witness = _joint_vector(states, state, high_vec, highs)
            extremes[state].offer(0.0, witness)
            continue
        if others_max <= 0.0:
            # every other block is identically zero: the state is certain
            witness = _joint_vector(states, state, high_vec, highs)
            extremes[state].offer(1.0, witness)
            continue
        max_witness = _joint_vector(states, state, high_vec, lows)
        extremes[state].offer(high_score / (high_score + others_min), max_witness)
        low_score, low_vec = lows[state]
        min_witness = _joint_vector(states, state, low_vec, highs)
        extremes[state].offer(low_score / (low_score + others_max), min_witness)

    by_state = _finalize(states, extremes)
    for state in states:
        for kind, witness in (
            ("witness-min", by_state[state].min_witness),
            ("witness-max", by_state[state].max_witness),
        ):
            evaluated = _evaluate_joint(blocks, witness)
            if evaluated is not None:
                values, scores = evaluated
                probes.append(ProbeRecord(len(probes), kind, values, scores, witness))
    return Envelope(
        target=query.target,
        mode="exhaustive",
        by_state=by_state,
        probes=tuple(probes),
        skipped=skipped,
    )


def _joint_vector(states, state, own_vector, other_scans) -> dict[str, tuple[float, ...]]:
    joint = {}
    for other in states:
        if other == state:
            joint[other] = tuple(np.asarray(own_vector, dtype=float))
        else:
            joint[other] = tuple(np.asarray(other_scans[other][1], dtype=float))
    return joint


def _sweep_sampled(blocks, structured, config, states, target) -> Envelope:
    sizes = {state: blocks[state].size for state in states}
    total_terms = sum(sizes.values())
    rng = np.random.default_rng(config.seed)
    draws = rng.integers(0, config.lattice, size=(config.samples, total_terms))
    sample_phases = draws.astype(float) * config.step

    offset = 0
    split: dict[str, np.ndarray] = {}
    for state in states:
        split[state] = sample_phases[:, offset : offset + sizes[state]]
        offset += sizes[state]

    # evaluate structured probes and samples in one kernel call per state
    head = len(structured)
    kinds = [kind for kind, _ in structured] + ["sample"] * config.samples
    raw: dict[str, np.ndarray] = {}
    for state in states:
        rows = np.concatenate(
            [
                np.array(
                    [phases[state] for _, phases in structured], dtype=float
                ).reshape(head, sizes[state]),
                split[state],
            ],
            axis=0,
        )
        scores = kernels.block_scores(blocks[state], rows)
        bad = scores < NEGATIVE_SCORE_LIMIT
        if np.any(bad):
            raise InferenceError(
                f"block score {float(scores[bad][0])} is below the float-noise limit"
            )
        raw[state] = np.maximum(scores, 0.0)
    totals = np.sum(np.vstack([raw[state] for state in states]), axis=0)

    extremes = {state: _Extremes() for state in states}
    probes: list[ProbeRecord] = []
    skipped = 0
    for r, kind in enumerate(kinds):
        if totals[r] <= 0.0:
            skipped += 1
            continue
        if r < head:
            phases = structured[r][1]
        else:
            phases = {state: tuple(split[state][r - head]) for state in states}
        values = {state: float(raw[state][r] / totals[r]) for state in states}
        scores = {state: float(raw[state][r]) for state in states}
        probes.append(ProbeRecord(len(probes), kind, values, scores, phases))
        for state in states:
            extremes[state].offer(values[state], phases)

    return Envelope(
        target=target,
        mode="sampled",
        by_state=_finalize(states, extremes),
        probes=tuple(probes),
        skipped=skipped,
    )


def _finalize(states, extremes) -> dict[str, StateEnvelope]:
    by_state = {}
    for state in states:
        ext = extremes[state]
        if ext.min_witness is None or ext.max_witness is None:
            raise InferenceError(f"no valid probes for state {state!r}")
        by_state[state] = StateEnvelope(
            state=state,
            minimum=ext.minimum,
            maximum=ext.maximum,
            min_witness=ext.min_witness,
            max_witness=ext.max_witness,
        )
    return by_state
