"""The bundled burglar-alarm example network and its reference tables.

The five-variable network (Burglar, Earthquake -> Alarm -> JohnCalls,
MaryCalls) ships with two synchronized pairs, (Earthquake, Burglar) and
(MaryCalls, JohnCalls). The reference tables hold the published classical and
quantum posterior values the comparison report is measured against.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .network import BayesianNetwork, parse_network


def document() -> str:
    """The alarm network document text."""
    return resources.files("qlbn").joinpath("data/alarm.json").read_text()


@lru_cache(maxsize=1)
def network() -> BayesianNetwork:
    """The parsed alarm network (cached; networks are immutable)."""
    return parse_network(document())


@lru_cache(maxsize=1)
def reference_tables() -> dict:
    """Reference posteriors: ``classical`` and ``quantum`` blocks keyed as
    ``[evidence_variable][query_variable]`` plus the display row/column order."""
    text = resources.files("qlbn").joinpath("data/alarm_reference.json").read_text()
    return json.loads(text)
