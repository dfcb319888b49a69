"""Classical/quantum comparison reports and relative-increase arithmetic.

A report fills one cell per (evidence variable observed true) x (query
variable true) combination with the classical and quantum posteriors.
Tables render with 4 decimals (half away from zero); CSV keeps the full
float precision so values survive a round trip exactly.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Mapping, Sequence

from .classical import infer_classical
from .network import BayesianNetwork, Query
from .quantum import PhaseStrategy, infer_quantum

#: Display order used when a network has exactly these five variables.
ALARM_ROW_ORDER = ("JohnCalls", "MaryCalls", "Earthquake", "Burglar", "Alarm")
ALARM_COLUMN_ORDER = ("Alarm", "Earthquake", "Burglar", "JohnCalls", "MaryCalls")


@dataclass(frozen=True)
class ReportCell:
    evidence: str
    query: str
    classical: float
    quantum: float


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[str, ...]
    columns: tuple[str, ...]
    cells: Mapping[tuple[str, str], ReportCell]

    def cell(self, evidence: str, query: str) -> ReportCell:
        return self.cells[(evidence, query)]


@dataclass(frozen=True)
class CellDiscrepancy:
    """How far a computed quantum posterior lands from its reference value."""

    evidence: str
    query: str
    reference: float
    computed: float

    @property
    def error(self) -> float:
        return abs(self.computed - self.reference)


def relative_increase(classical: float, quantum: float) -> float:
    """Percentage change from the classical to the quantum posterior."""
    if classical <= 0.0:
        raise ValueError(f"relative increase undefined for classical = {classical}")
    return 100.0 * (quantum / classical - 1.0)


def comparison_report(
    network: BayesianNetwork,
    strategy: PhaseStrategy,
    rows: Sequence[str] | None = None,
    columns: Sequence[str] | None = None,
) -> ComparisonReport:
    """Fill every (evidence=true, query=true) cell classically and quantumly.

    Diagonal cells condition a variable on itself and come out exactly 1.0.
    Default display order follows the bundled alarm experiment when the
    variable names match it, declaration order otherwise.
    """
    default_rows, default_columns = _default_order(network)
    rows = tuple(rows) if rows is not None else default_rows
    columns = tuple(columns) if columns is not None else default_columns
    cells = {}
    for ev in rows:
        ev_state = network.variable(ev).occurs_state
        for q in columns:
            q_state = network.variable(q).occurs_state
            query = Query(target=q, evidence={ev: ev_state})
            classical = infer_classical(network, query).probabilities[q_state]
            quantum = infer_quantum(network, query, strategy).probabilities[q_state]
            cells[(ev, q)] = ReportCell(
                evidence=ev, query=q, classical=classical, quantum=quantum
            )
    return ComparisonReport(rows=rows, columns=columns, cells=cells)


def render_text(report: ComparisonReport, network: BayesianNetwork) -> str:
    """Aligned two-block text table, one row per evidence variable."""
    headers = [
        f"P({q}={network.variable(q).occurs_state})" for q in report.columns
    ]
    label_width = max(
        len("evidence"), *(len(f"{ev}={network.variable(ev).occurs_state}") for ev in report.rows)
    )
    widths = [max(len(h), 6) for h in headers]

    def line(block: str, label: str, values: list[str]) -> str:
        cells = "  ".join(v.rjust(w) for v, w in zip(values, widths))
        return f"{block:<9}{label:<{label_width}}  {cells}"

    out = [line("", "evidence", headers)]
    for block, attr in (("classical", "classical"), ("quantum", "quantum")):
        for ev in report.rows:
            label = f"{ev}={network.variable(ev).occurs_state}"
            values = [
                format_probability(getattr(report.cell(ev, q), attr))
                for q in report.columns
            ]
            out.append(line(block, label, values))
    return "\n".join(out)


def report_csv(report: ComparisonReport) -> str:
    """CSV with columns evidence,query,classical,quantum at full precision."""
    buf = io.StringIO()
    buf.write("evidence,query,classical,quantum\n")
    for ev in report.rows:
        for q in report.columns:
            cell = report.cell(ev, q)
            buf.write(f"{ev},{q},{cell.classical!r},{cell.quantum!r}\n")
    return buf.getvalue()


def quantum_discrepancies(
    report: ComparisonReport, reference_quantum: Mapping[str, Mapping[str, float]]
) -> list[CellDiscrepancy]:
    """Per-cell distance between the report's quantum block and a reference table."""
    out = []
    for ev in report.rows:
        for q in report.columns:
            out.append(
                CellDiscrepancy(
                    evidence=ev,
                    query=q,
                    reference=float(reference_quantum[ev][q]),
                    computed=report.cell(ev, q).quantum,
                )
            )
    return out


def discrepancy_csv(discrepancies: Sequence[CellDiscrepancy]) -> str:
    buf = io.StringIO()
    buf.write("evidence,query,reference,computed,abs_error\n")
    for d in discrepancies:
        buf.write(f"{d.evidence},{d.query},{d.reference!r},{d.computed!r},{d.error!r}\n")
    return buf.getvalue()


def format_probability(value: float) -> str:
    """4 decimals, ties away from zero (0.98765 -> '0.9877')."""
    return str(Decimal(repr(value)).quantize(Decimal("0.0001"), rounding=ROUND_HALF_UP))


def format_percent(value: float) -> str:
    """2 decimals with a percent sign, ties away from zero."""
    quantized = Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    return f"{quantized}%"


def _default_order(network: BayesianNetwork) -> tuple[tuple[str, ...], tuple[str, ...]]:
    if set(network.names) == set(ALARM_ROW_ORDER):
        return ALARM_ROW_ORDER, ALARM_COLUMN_ORDER
    return network.names, network.names
