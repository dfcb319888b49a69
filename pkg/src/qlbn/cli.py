"""Command-line entry points: validate, infer, sweep, report.

Exit codes: 0 success, 1 validation/inference error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classical import infer_classical
from .errors import QlbnError
from .network import BayesianNetwork, Query, parse_network
from .quantum import PhaseStrategy, infer_quantum
from .report import comparison_report, format_probability, render_text, report_csv
from .sweep import SweepConfig, envelope_rows, sweep
from .synchronicity import SyncPairSet


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


def run_cli(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except QlbnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlbn",
        description=(
            "Exact classical and quantum-like inference on discrete Bayesian "
            "networks, with interference phases and posterior envelope sweeps."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a network document")
    p_validate.add_argument("file", help="network document (JSON)")
    p_validate.set_defaults(func=_cmd_validate)

    p_infer = sub.add_parser("infer", help="posterior for one query")
    p_infer.add_argument("--network", required=True, help="network document (JSON)")
    p_infer.add_argument("--target", required=True, help="query variable")
    p_infer.add_argument(
        "--evidence",
        action="append",
        default=[],
        type=_evidence_item,
        metavar="NAME=STATE",
        help="observed variable (repeatable)",
    )
    p_infer.add_argument(
        "--mode", required=True, choices=("classical", "quantum"), help="inference mode"
    )
    p_infer.add_argument(
        "--phases",
        type=_phase_spec,
        default=None,
        metavar="zero|uniform:<rad>|sync|file:<path>",
        help="phase strategy (required for quantum mode)",
    )
    p_infer.set_defaults(func=_cmd_infer)

    p_sweep = sub.add_parser("sweep", help="posterior envelope under phase variation")
    p_sweep.add_argument("--network", required=True)
    p_sweep.add_argument("--target", required=True)
    p_sweep.add_argument(
        "--evidence", action="append", default=[], type=_evidence_item, metavar="NAME=STATE"
    )
    p_sweep.add_argument("--step", type=float, default=SweepConfig().step, help="phase lattice step in radians")
    p_sweep.add_argument("--samples", type=int, default=SweepConfig().samples, help="sample count for large queries")
    p_sweep.add_argument("--seed", type=int, default=SweepConfig().seed, help="sampling seed")
    p_sweep.add_argument("--out", required=True, help="probe CSV output path")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_report = sub.add_parser("report", help="classical/quantum comparison table")
    p_report.add_argument("--network", required=True)
    p_report.add_argument(
        "--phases", type=_phase_spec, default="sync", metavar="zero|uniform:<rad>|sync|file:<path>"
    )
    p_report.add_argument("--out", default=None, help="CSV output path")
    p_report.add_argument("--rows", type=_name_list, default=None, help="evidence row order (comma-separated)")
    p_report.add_argument("--columns", type=_name_list, default=None, help="query column order (comma-separated)")
    p_report.set_defaults(func=_cmd_report)

    return parser


# -- argument types (format errors are usage errors, exit 2) -----------------


def _evidence_item(text: str) -> tuple[str, str]:
    name, sep, state = text.partition("=")
    if not sep or not name or not state:
        raise argparse.ArgumentTypeError(f"expected NAME=STATE, got {text!r}")
    return name, state


def _phase_spec(text: str) -> str:
    if text in ("zero", "sync"):
        return text
    if text.startswith("uniform:"):
        try:
            float(text.split(":", 1)[1])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad uniform angle in {text!r}")
        return text
    if text.startswith("file:") and text[5:]:
        return text
    raise argparse.ArgumentTypeError(
        f"expected zero, uniform:<rad>, sync or file:<path>, got {text!r}"
    )


def _name_list(text: str) -> tuple[str, ...]:
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated name list")
    return names


# -- commands -----------------------------------------------------------------


def _cmd_validate(args) -> int:
    text = Path(args.file).read_text()
    try:
        network = parse_network(text)
    except QlbnError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return 1
    print(f"{args.file}: ok ({len(network.variables)} variables)")
    return 0


def _cmd_infer(args) -> int:
    network = parse_network(Path(args.network).read_text())
    query = Query(target=args.target, evidence=dict(args.evidence))
    if args.mode == "classical":
        distribution = infer_classical(network, query).probabilities
    else:
        if args.phases is None:
            print("error: --mode quantum requires --phases", file=sys.stderr)
            return 2
        strategy = _build_strategy(args.phases, network)
        distribution = infer_quantum(network, query, strategy).probabilities
    states = network.variable(args.target).states
    parts = " ".join(
        f"{state} {format_probability(distribution[state])}" for state in reversed(states)
    )
    print(f"{args.target} {parts}")
    return 0


def _cmd_sweep(args) -> int:
    network = parse_network(Path(args.network).read_text())
    query = Query(target=args.target, evidence=dict(args.evidence))
    try:
        config = SweepConfig(step=args.step, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    envelope = sweep(network, query, config)
    lines = ["target,state,probe_id,probe_kind,value"]
    for target, state, probe_id, kind, value in envelope_rows(envelope):
        lines.append(f"{target},{state},{probe_id},{kind},{value!r}")
    Path(args.out).write_text("\n".join(lines) + "\n")
    for state in network.variable(args.target).states:
        env = envelope.state(state)
        print(
            f"{args.target} {state} min {env.minimum!r} max {env.maximum!r} "
            f"({envelope.mode}, {len(envelope.probes)} probes)"
        )
    return 0


def _cmd_report(args) -> int:
    network = parse_network(Path(args.network).read_text())
    strategy = _build_strategy(args.phases, network)
    report = comparison_report(network, strategy, rows=args.rows, columns=args.columns)
    print(render_text(report, network))
    if args.out:
        Path(args.out).write_text(report_csv(report))
    return 0


def _build_strategy(spec: str, network: BayesianNetwork) -> PhaseStrategy:
    if spec == "zero":
        return PhaseStrategy.zero_interference()
    if spec == "sync":
        return PhaseStrategy.synchronicity(SyncPairSet.from_network(network))
    if spec.startswith("uniform:"):
        return PhaseStrategy.uniform(float(spec.split(":", 1)[1]))
    assert spec.startswith("file:")
    path = Path(spec[5:])
    try:
        entries = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise QlbnError(f"phase file {path}: {exc}") from exc
    if not isinstance(entries, list):
        raise QlbnError(f"phase file {path}: expected a list of outcome entries")
    vectors = {}
    for entry in entries:
        if not isinstance(entry, dict) or "outcome" not in entry or "phases" not in entry:
            raise QlbnError(f"phase file {path}: entries need `outcome` and `phases`")
        vectors[entry["outcome"]] = [float(p) for p in entry["phases"]]
    return PhaseStrategy.explicit(vectors)
