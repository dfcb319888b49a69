"""Comparison reports, relative increases, rendering and CSV round-trips."""

import numpy as np
import pytest

from qlbn.quantum import PhaseStrategy
from qlbn.report import (
    ALARM_COLUMN_ORDER,
    ALARM_ROW_ORDER,
    comparison_report,
    discrepancy_csv,
    format_percent,
    format_probability,
    quantum_discrepancies,
    relative_increase,
    render_text,
    report_csv,
)
from qlbn.synchronicity import SyncPairSet


class TestRelativeIncrease:
    def test_identity_is_zero(self):
        assert relative_increase(0.42, 0.42) == 0.0

    def test_round_trip_identity(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            c = float(rng.uniform(1e-6, 1.0))
            q = float(rng.uniform(0.0, 1.0))
            r = relative_increase(c, q)
            assert (1.0 + r / 100.0) * c == pytest.approx(q, abs=1e-12)

    def test_decrease_is_negative(self):
        assert relative_increase(0.5, 0.25) == pytest.approx(-50.0)

    def test_zero_classical_undefined(self):
        with pytest.raises(ValueError, match="undefined"):
            relative_increase(0.0, 0.3)


class TestFormatting:
    def test_probability_rounds_half_away_from_zero(self):
        assert format_probability(0.98765) == "0.9877"
        assert format_probability(0.12345) == "0.1235"
        assert format_probability(1.0) == "1.0000"
        assert format_probability(0.36812252547442625) == "0.3681"

    def test_percent(self):
        assert format_percent(56.375) == "56.38%"
        assert format_percent(-3.005) == "-3.01%"


@pytest.fixture(scope="module")
def zero_report(alarm_net):
    return comparison_report(alarm_net, PhaseStrategy.zero_interference())


class TestComparisonReport:
    def test_alarm_ordering_defaults(self, zero_report):
        assert zero_report.rows == ALARM_ROW_ORDER
        assert zero_report.columns == ALARM_COLUMN_ORDER

    def test_zero_strategy_quantum_equals_classical(self, zero_report):
        for cell in zero_report.cells.values():
            assert cell.quantum == pytest.approx(cell.classical, abs=1e-9)

    def test_diagonal_cells_are_exactly_one(self, alarm_net):
        strategy = PhaseStrategy.synchronicity(SyncPairSet.from_network(alarm_net))
        report = comparison_report(alarm_net, strategy)
        for name in report.rows:
            cell = report.cell(name, name)
            assert cell.classical == 1.0
            assert cell.quantum == 1.0

    def test_classical_block_against_reference(self, zero_report):
        assert zero_report.cell("Burglar", "Alarm").classical == pytest.approx(0.9402, abs=5e-5)
        assert zero_report.cell("JohnCalls", "Burglar").classical == pytest.approx(0.1333, abs=5e-5)

    def test_custom_order(self, alarm_net):
        report = comparison_report(
            alarm_net,
            PhaseStrategy.zero_interference(),
            rows=("Alarm",),
            columns=("Burglar", "Earthquake"),
        )
        assert report.rows == ("Alarm",)
        assert report.columns == ("Burglar", "Earthquake")
        assert set(report.cells) == {("Alarm", "Burglar"), ("Alarm", "Earthquake")}

    def test_non_alarm_network_uses_declaration_order(self, fork_net):
        report = comparison_report(fork_net, PhaseStrategy.zero_interference())
        assert report.rows == ("A", "B", "C")
        assert report.columns == ("A", "B", "C")

    def test_render_deterministic(self, zero_report, alarm_net):
        assert render_text(zero_report, alarm_net) == render_text(zero_report, alarm_net)

    def test_render_shows_four_decimals(self, zero_report, alarm_net):
        text = render_text(zero_report, alarm_net)
        assert "0.9402" in text
        assert "1.0000" in text

    def test_csv_round_trips_full_precision(self, zero_report):
        text = report_csv(zero_report)
        lines = text.strip().splitlines()
        assert lines[0] == "evidence,query,classical,quantum"
        parsed = {}
        for line in lines[1:]:
            ev, q, classical, quantum = line.split(",")
            parsed[(ev, q)] = (float(classical), float(quantum))
        for key, cell in zero_report.cells.items():
            assert parsed[key] == (cell.classical, cell.quantum)

    def test_csv_deterministic(self, zero_report):
        assert report_csv(zero_report) == report_csv(zero_report)


class TestDiscrepancies:
    def test_rows_and_errors(self, alarm_net):
        strategy = PhaseStrategy.zero_interference()
        report = comparison_report(alarm_net, strategy)
        reference = {
            ev: {q: report.cell(ev, q).quantum for q in report.columns}
            for ev in report.rows
        }
        reference["JohnCalls"]["Burglar"] += 0.25
        rows = quantum_discrepancies(report, reference)
        assert len(rows) == 25
        off = [d for d in rows if d.error > 1e-12]
        assert len(off) == 1
        assert (off[0].evidence, off[0].query) == ("JohnCalls", "Burglar")
        assert off[0].error == pytest.approx(0.25, abs=1e-12)
        csv_text = discrepancy_csv(rows)
        assert csv_text.splitlines()[0] == "evidence,query,reference,computed,abs_error"
        assert len(csv_text.strip().splitlines()) == 26
