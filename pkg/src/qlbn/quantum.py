"""Quantum-like inference: amplitudes, interference expansion, normalization.

Each joint-assignment term contributes an amplitude whose magnitude is the
square root of the term's classical probability and whose phase is chosen by
a strategy. An outcome's pre-normalization score is

    sum_i m_i^2  +  2 * sum_{i<j} m_i m_j cos(theta_i - theta_j)

which equals |sum_i m_i e^{i*theta_i}|^2; the posterior is the scores
normalized across outcomes. With the interference term zeroed the result
collapses to the classical posterior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .classical import joint_probability
from .errors import InferenceError, PhaseVectorError, QueryError
from .network import BayesianNetwork, Query, TermAssignment, enumerate_terms, unobserved_variables
from .synchronicity import SyncPairSet, term_phase

#: Pre-normalization scores below this are treated as internal inconsistencies
#: rather than float noise; anything between it and zero clamps to zero.
NEGATIVE_SCORE_LIMIT = -1e-9


@dataclass(frozen=True)
class TermAmplitude:
    """Magnitude and phase of one joint-assignment term."""

    index: int
    magnitude: float
    phase: float


@dataclass(frozen=True)
class PhaseStrategy:
    """How phases attach to terms: one strategy instance per inference call.

    ``zero_interference`` drops the interference term outright (no phase
    vector realizes that for more than two terms); ``uniform`` gives every
    term the same angle, making all interference fully constructive;
    ``explicit`` supplies one vector per outcome in canonical term order;
    ``synchronicity`` derives each term's phase from the declared pairs.
    """

    kind: str
    theta: float = 0.0
    vectors: Mapping[str, tuple[float, ...]] | None = None
    pairs: SyncPairSet | None = None

    @classmethod
    def zero_interference(cls) -> "PhaseStrategy":
        return cls(kind="zero")

    @classmethod
    def uniform(cls, theta: float) -> "PhaseStrategy":
        return cls(kind="uniform", theta=float(theta))

    @classmethod
    def explicit(cls, vectors: Mapping[str, Sequence[float]]) -> "PhaseStrategy":
        frozen = {state: tuple(float(p) for p in vec) for state, vec in vectors.items()}
        return cls(kind="explicit", vectors=frozen)

    @classmethod
    def synchronicity(cls, pairs: SyncPairSet) -> "PhaseStrategy":
        return cls(kind="sync", pairs=pairs)


@dataclass(frozen=True)
class QuantumDistribution:
    """Normalized quantum posterior plus its pre-normalization interference."""

    target: str
    probabilities: Mapping[str, float]
    interference: Mapping[str, float]
    normalizer: float


@dataclass(frozen=True)
class ParameterCount:
    """Phase-parameter bookkeeping for one query outcome block."""

    terms: int
    pairs: int


def term_amplitude(network: BayesianNetwork, term: TermAssignment) -> float:
    """Amplitude magnitude of a term: sqrt of its classical joint probability."""
    return math.sqrt(joint_probability(network, term.assignment))


def interference(amplitudes: Sequence[TermAmplitude]) -> float:
    """Cross-term sum over pairs i < j (the caller applies the factor 2).

    Empty and singleton inputs have no pairs and return 0.
    """
    mags = np.array([a.magnitude for a in amplitudes])
    phases = np.array([a.phase for a in amplitudes])
    return kernels.interference_sum(mags, phases)


def phasor_oracle(amplitudes: Sequence[TermAmplitude]) -> float:
    """|sum_i m_i e^{i*theta_i}|^2 by direct real/imaginary accumulation.

    Kept free of the kernel backends on purpose: it is the independent check
    for the pairwise-cosine expansion.
    """
    real = 0.0
    imag = 0.0
    for amp in amplitudes:
        real += amp.magnitude * math.cos(amp.phase)
        imag += amp.magnitude * math.sin(amp.phase)
    return real * real + imag * imag


def term_amplitudes(
    network: BayesianNetwork,
    query: Query,
    outcome: str,
    strategy: PhaseStrategy,
) -> list[TermAmplitude]:
    """Amplitudes for one outcome block under a strategy, in canonical order."""
    terms = enumerate_terms(network, query, outcome)
    phases = _phases_for(network, query, outcome, terms, strategy)
    return [
        TermAmplitude(
            index=term.index,
            magnitude=term_amplitude(network, term),
            phase=phase,
        )
        for term, phase in zip(terms, phases)
    ]


def infer_quantum(
    network: BayesianNetwork, query: Query, strategy: PhaseStrategy
) -> QuantumDistribution:
    """Posterior over the target from interference-corrected outcome scores.

    Phases are independent per outcome block (the blocks' terms are disjoint
    assignments). Scores are clamped at zero against float noise; a score
    below ``NEGATIVE_SCORE_LIMIT`` or a zero total raises ``InferenceError``.
    """
    target_states = network.variable(query.target).states
    scores: dict[str, float] = {}
    cross: dict[str, float] = {}
    for outcome in target_states:
        amps = term_amplitudes(network, query, outcome, strategy)
        magnitudes_squared = math.fsum(a.magnitude * a.magnitude for a in amps)
        pair_sum = 0.0 if strategy.kind == "zero" else interference(amps)
        score = magnitudes_squared + 2.0 * pair_sum
        if score < NEGATIVE_SCORE_LIMIT:
            raise InferenceError(
                f"outcome {outcome!r} scored {score}; a realizable phasor "
                "cannot go this far below zero"
            )
        scores[outcome] = max(score, 0.0)
        cross[outcome] = pair_sum
    total = math.fsum(scores.values())
    if total <= 0.0:
        raise InferenceError(
            "all outcome scores are zero; the normalizer is undefined"
        )
    # divide rather than multiply by 1/total: x/x is exactly 1.0, so
    # self-conditioning queries come out as a clean indicator
    return QuantumDistribution(
        target=query.target,
        probabilities={s: scores[s] / total for s in target_states},
        interference=cross,
        normalizer=1.0 / total,
    )


def parameter_count(network: BayesianNetwork, query: Query) -> ParameterCount:
    """Terms per outcome block and phase pairs among them.

    With N unobserved binary variables this is 2**N terms, which is what
    makes hand-assigning phases infeasible and a heuristic necessary.
    """
    terms = 1
    for name in unobserved_variables(network, query):
        terms *= len(network.variable(name).states)
    return ParameterCount(terms=terms, pairs=terms * (terms - 1) // 2)


def _phases_for(
    network: BayesianNetwork,
    query: Query,
    outcome: str,
    terms: list[TermAssignment],
    strategy: PhaseStrategy,
) -> list[float]:
    if strategy.kind == "zero":
        return [0.0] * len(terms)
    if strategy.kind == "uniform":
        return [strategy.theta] * len(terms)
    if strategy.kind == "explicit":
        assert strategy.vectors is not None
        if outcome not in strategy.vectors:
            raise PhaseVectorError(f"no phase vector for outcome {outcome!r}")
        vector = strategy.vectors[outcome]
        if len(vector) != len(terms):
            raise PhaseVectorError(
                f"outcome {outcome!r} has {len(terms)} terms but the phase "
                f"vector has {len(vector)} entries"
            )
        return list(vector)
    if strategy.kind == "sync":
        assert strategy.pairs is not None
        return [term_phase(network, strategy.pairs, term) for term in terms]
    raise QueryError(f"unknown phase strategy {strategy.kind!r}")
