"""Synchronized variable pairs and the phase angles they induce on joint terms.

Two variables declared as a pair are treated as meaningfully (acausally)
connected. For binary variables the pair's joint state in a term picks an
angle: 0 when both occur, pi when neither occurs, pi/4 when exactly one does
(the quarter-step lattice deliberately skips pi/2, whose cosine contributes
nothing). A term's phase is the sum of its pair angles modulo 2*pi.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DocumentError, UnsupportedConfigurationError
from .network import BayesianNetwork, TermAssignment, Variable

BOTH_OCCURRED = 0.0
NEITHER_OCCURRED = math.pi
EXACTLY_ONE_OCCURRED = math.pi / 4

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SyncPair:
    """An unordered pair of variable names: {A, B} equals {B, A}."""

    first: str
    second: str

    def key(self) -> frozenset[str]:
        return frozenset((self.first, self.second))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SyncPair):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass(frozen=True)
class SyncPairSet:
    pairs: tuple[SyncPair, ...]

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __bool__(self) -> bool:
        return bool(self.pairs)

    @classmethod
    def empty(cls) -> "SyncPairSet":
        return cls(pairs=())

    @classmethod
    def of(cls, *name_pairs: tuple[str, str]) -> "SyncPairSet":
        return cls(pairs=tuple(SyncPair(a, b) for a, b in name_pairs))

    @classmethod
    def from_network(cls, network: BayesianNetwork) -> "SyncPairSet":
        """The pairs the network document declared (may be empty)."""
        return cls.of(*network.sync_pairs)


def load_sync_pairs(document: str, network: BayesianNetwork) -> SyncPairSet:
    """Read the ``sync_pairs`` field of a network document.

    Returns the empty set when the field is absent. Raises ``DocumentError``
    for unknown names, self-pairs and duplicates, and
    ``UnsupportedConfigurationError`` when a paired variable is not binary.
    """
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    entries = raw.get("sync_pairs") if isinstance(raw, dict) else None
    if entries is None:
        return SyncPairSet.empty()

    names = set(network.names)
    pairs: list[SyncPair] = []
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != 2:
            raise DocumentError(f"sync pair {entry!r} must name exactly two variables")
        first, second = entry
        if first == second:
            raise DocumentError(f"variable {first!r} cannot pair with itself")
        for name in (first, second):
            if name not in names:
                raise DocumentError(f"sync pair names unknown variable {name!r}")
            _require_binary(network.variable(name))
        pair = SyncPair(first, second)
        if pair in pairs:
            raise DocumentError(f"duplicate sync pair {entry!r}")
        pairs.append(pair)
    return SyncPairSet(pairs=tuple(pairs))


def pair_angle(first_occurred: bool, second_occurred: bool) -> float:
    """Angle for one pair's joint state in a term.

    Symmetric in its arguments: both mixed cases map to pi/4.
    """
    if first_occurred and second_occurred:
        return BOTH_OCCURRED
    if not first_occurred and not second_occurred:
        return NEITHER_OCCURRED
    return EXACTLY_ONE_OCCURRED


def term_phase(
    network: BayesianNetwork, pairs: SyncPairSet, term: TermAssignment
) -> float:
    """Phase of one joint term: the sum of its pair angles, modulo 2*pi.

    Pair variables contribute whether unobserved, observed or the query
    target; their states are read from the full term assignment. An empty
    pair set yields phase 0.
    """
    total = 0.0
    for pair in pairs:
        total += pair_angle(
            _occurred(network, pair.first, term),
            _occurred(network, pair.second, term),
        )
    return total % _TWO_PI


def _occurred(network: BayesianNetwork, name: str, term: TermAssignment) -> bool:
    variable = network.variable(name)
    _require_binary(variable)
    return term.assignment[name] == variable.occurs_state


def _require_binary(variable: Variable) -> None:
    if len(variable.states) != 2:
        raise UnsupportedConfigurationError(
            f"synchronized variable {variable.name!r} must be binary, "
            f"has {len(variable.states)} states"
        )
