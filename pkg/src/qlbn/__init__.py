"""Exact classical and quantum-like inference on discrete Bayesian networks.

Classical posteriors come from enumeration over full joint assignments.
Quantum-like posteriors attach a phase to each assignment's amplitude
(magnitude = square root of the classical term probability) and add the
resulting pairwise interference before normalizing. Phases can be zeroed,
set uniformly or explicitly, or derived from declared synchronized variable
pairs; the sweep explorer characterizes the posterior interval attainable
under phase variation.
"""

from .classical import Distribution, infer_classical, joint_probability
from .errors import (
    DocumentError,
    InferenceError,
    PhaseVectorError,
    QlbnError,
    QueryError,
    UnsupportedConfigurationError,
)
from .network import (
    BayesianNetwork,
    ConditionalTable,
    Query,
    TermAssignment,
    ValidationReport,
    Variable,
    enumerate_terms,
    parse_network,
    serialize_network,
    unobserved_variables,
    validate,
)
from .quantum import (
    ParameterCount,
    PhaseStrategy,
    QuantumDistribution,
    TermAmplitude,
    infer_quantum,
    interference,
    parameter_count,
    phasor_oracle,
    term_amplitude,
    term_amplitudes,
)
from .report import (
    ComparisonReport,
    comparison_report,
    relative_increase,
    render_text,
    report_csv,
)
from .sweep import (
    Envelope,
    StateEnvelope,
    SweepConfig,
    analytic_bounds,
    envelope_contains,
    sweep,
)
from .synchronicity import SyncPair, SyncPairSet, load_sync_pairs, pair_angle, term_phase

__version__ = "0.1.0"

__all__ = [
    "BayesianNetwork",
    "ComparisonReport",
    "ConditionalTable",
    "Distribution",
    "DocumentError",
    "Envelope",
    "InferenceError",
    "ParameterCount",
    "PhaseStrategy",
    "PhaseVectorError",
    "QlbnError",
    "QuantumDistribution",
    "Query",
    "QueryError",
    "StateEnvelope",
    "SweepConfig",
    "SyncPair",
    "SyncPairSet",
    "TermAmplitude",
    "TermAssignment",
    "UnsupportedConfigurationError",
    "ValidationReport",
    "Variable",
    "analytic_bounds",
    "comparison_report",
    "envelope_contains",
    "enumerate_terms",
    "infer_classical",
    "infer_quantum",
    "interference",
    "joint_probability",
    "load_sync_pairs",
    "pair_angle",
    "parameter_count",
    "parse_network",
    "phasor_oracle",
    "relative_increase",
    "render_text",
    "report_csv",
    "serialize_network",
    "sweep",
    "term_amplitude",
    "term_amplitudes",
    "term_phase",
    "unobserved_variables",
    "validate",
]
