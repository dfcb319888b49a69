"""Exact classical inference by enumeration over full joint assignments."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import InferenceError, QueryError
from .network import BayesianNetwork, Query, enumerate_terms

#: Evidence whose total likelihood falls at or below this is treated as zero.
ZERO_LIKELIHOOD = 0.0


@dataclass(frozen=True)
class Distribution:
    """A normalized posterior over the target's states."""

    target: str
    probabilities: Mapping[str, float]
    normalizer: float


def joint_probability(network: BayesianNetwork, assignment: Mapping[str, str]) -> float:
    """Probability of one full assignment: the product of its CPT entries.

    Every network variable must be assigned exactly one of its states.
    """
    for name in network.order:
        if name not in assignment:
            raise QueryError(f"incomplete assignment: missing {name!r}")
    extra = set(assignment) - set(network.order)
    if extra:
        raise QueryError(f"assignment names unknown variables {sorted(extra)}")
    result = 1.0
    for name in network.order:
        state = assignment[name]
        variable = network.variable(name)
        if state not in variable.states:
            raise QueryError(f"variable {name!r} has no state {state!r}")
        table = network.tables[name]
        combo = tuple(assignment[p] for p in table.parents)
        result *= table.probability(state, combo)
    return result


def infer_classical(network: BayesianNetwork, query: Query) -> Distribution:
    """Posterior over the target by summing joint terms per outcome.

    Terms are accumulated with exactly-rounded summation (``math.fsum``) in
    canonical term order, so results are deterministic and independent of
    variable declaration order. Evidence with zero likelihood raises
    ``InferenceError`` rather than producing NaNs.
    """
    target_states = network.variable(query.target).states
    scores = {
        outcome: math.fsum(
            joint_probability(network, term.assignment)
            for term in enumerate_terms(network, query, outcome)
        )
        for outcome in target_states
    }
    total = math.fsum(scores.values())
    if total <= ZERO_LIKELIHOOD:
        raise InferenceError(
            f"evidence {dict(query.evidence)} has zero likelihood; "
            "the normalizer is undefined"
        )
    # divide rather than multiply by 1/total: x/x is exactly 1.0, so
    # self-conditioning queries come out as a clean indicator
    return Distribution(
        target=query.target,
        probabilities={s: scores[s] / total for s in target_states},
        normalizer=1.0 / total,
    )
