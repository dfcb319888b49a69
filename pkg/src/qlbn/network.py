"""Discrete Bayesian network model: document parsing, validation, term enumeration.

A network document is JSON text with top-level fields ``variables`` (list of
``{"name", "states"}``), ``cpts`` (list of ``{"child", "parents", "rows"}``
where each row is ``{"given": {parent: state}, "dist": {state: prob}}``) and
an optional ``sync_pairs`` list of two-name pairs. List order is significant:
it fixes the canonical variable and state order used for term enumeration.

Networks are immutable after construction and all functions here are pure,
so values can be shared freely across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping

from .errors import DocumentError, QueryError

ROW_SUM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Variable:
    """A discrete random variable with an ordered list of state labels."""

    name: str
    states: tuple[str, ...]

    @property
    def occurs_state(self) -> str:
        """The state treated as "the event occurred": the last declared state.

        With the conventional binary ordering ``[f, t]`` this is ``t``.
        """
        return self.states[-1]


@dataclass(frozen=True)
class ConditionalTable:
    """Distribution of ``child`` for every combination of parent states.

    ``rows`` maps a tuple of parent states (in ``parents`` order) to the
    child's distribution for that combination.
    """

    child: str
    parents: tuple[str, ...]
    rows: Mapping[tuple[str, ...], Mapping[str, float]]

    def probability(self, child_state: str, parent_states: tuple[str, ...]) -> float:
        return self.rows[parent_states][child_state]


@dataclass(frozen=True)
class BayesianNetwork:
    """A validated network: variables, one table per variable, derived order.

    ``order`` is the canonical topological order (parents before children,
    declaration order breaking ties); ``sync_pairs`` carries the document's
    declared synchronized-pair names verbatim.
    """

    variables: tuple[Variable, ...]
    tables: Mapping[str, ConditionalTable]
    order: tuple[str, ...]
    sync_pairs: tuple[tuple[str, str], ...] = ()

    def variable(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise QueryError(f"unknown variable {name!r}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @classmethod
    def build(
        cls,
        variables: tuple[Variable, ...],
        tables: Mapping[str, ConditionalTable],
        sync_pairs: tuple[tuple[str, str], ...] = (),
    ) -> "BayesianNetwork":
        """Construct a network, raising ``DocumentError`` on invariant violations."""
        findings = _check_invariants(variables, tables, sync_pairs)
        if findings:
            raise DocumentError(
                "invalid network: " + "; ".join(str(f) for f in findings)
            )
        order = _topological_order(variables, tables)
        return cls(variables=variables, tables=dict(tables), order=order, sync_pairs=sync_pairs)


@dataclass(frozen=True)
class Query:
    """A posterior query: target variable plus (possibly empty) evidence.

    The unobserved set is derived; see :func:`unobserved_variables`. A target
    that also appears in the evidence is a degenerate self-conditioning query:
    outcomes contradicting the evidence enumerate zero terms, so the posterior
    is an indicator on the observed state.
    """

    target: str
    evidence: Mapping[str, str]


@dataclass(frozen=True)
class TermAssignment:
    """One full joint assignment, with its ordinal position in canonical order."""

    assignment: Mapping[str, str]
    index: int


@dataclass(frozen=True)
class Finding:
    """A single validation finding: which invariant broke, and where."""

    code: str
    location: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.location}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...]

    @property
    def ok(self) -> bool:
        return not self.findings

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(f) for f in self.findings)


def parse_network(document: str) -> BayesianNetwork:
    """Parse and validate a JSON network document.

    Raises ``DocumentError`` on syntax errors (with line/column), unknown or
    duplicate names, cycles, missing or duplicate CPT rows, and row sums off
    by more than ``ROW_SUM_TOLERANCE``.
    """
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise DocumentError("document root must be a JSON object")

    variables = _parse_variables(raw.get("variables"))
    tables = _parse_cpts(raw.get("cpts"), variables)
    sync_pairs = _parse_sync_pairs(raw.get("sync_pairs"))
    return BayesianNetwork.build(variables, tables, sync_pairs)


def serialize_network(network: BayesianNetwork) -> str:
    """Render a network back to canonical document text.

    ``parse_network(serialize_network(net))`` yields a network equal to
    ``net``: list order in the output preserves the canonical order.
    """
    doc: dict = {
        "variables": [
            {"name": v.name, "states": list(v.states)} for v in network.variables
        ],
        "cpts": [
            {
                "child": v.name,
                "parents": list(network.tables[v.name].parents),
                "rows": [
                    {
                        "given": dict(zip(network.tables[v.name].parents, combo)),
                        "dist": dict(dist),
                    }
                    for combo, dist in network.tables[v.name].rows.items()
                ],
            }
            for v in network.variables
        ],
    }
    if network.sync_pairs:
        doc["sync_pairs"] = [list(p) for p in network.sync_pairs]
    return json.dumps(doc, indent=2)


def validate(network: BayesianNetwork) -> ValidationReport:
    """Check every model invariant, returning findings as data (never raising)."""
    findings = _check_invariants(
        network.variables, network.tables, network.sync_pairs
    )
    return ValidationReport(findings=tuple(findings))


def unobserved_variables(network: BayesianNetwork, query: Query) -> tuple[str, ...]:
    """Names of variables that are neither the target nor observed, in canonical order."""
    fixed = set(query.evidence) | {query.target}
    return tuple(n for n in network.order if n not in fixed)


def check_query(network: BayesianNetwork, query: Query) -> None:
    """Raise ``QueryError`` if the query does not fit the network."""
    names = set(network.names)
    if query.target not in names:
        raise QueryError(f"unknown target variable {query.target!r}")
    for var, state in query.evidence.items():
        if var not in names:
            raise QueryError(f"unknown evidence variable {var!r}")
        if state not in network.variable(var).states:
            raise QueryError(
                f"variable {var!r} has no state {state!r} "
                f"(states: {list(network.variable(var).states)})"
            )


def enumerate_terms(
    network: BayesianNetwork, query: Query, outcome: str
) -> list[TermAssignment]:
    """All full assignments fixing target=outcome plus the evidence.

    Terms are ordered lexicographically by canonical variable order with each
    variable's declared state order; indices are therefore a pure function of
    the document. A self-conditioning query whose outcome contradicts its own
    evidence yields no terms.
    """
    check_query(network, query)
    target_var = network.variable(query.target)
    if outcome not in target_var.states:
        raise QueryError(
            f"variable {query.target!r} has no state {outcome!r} "
            f"(states: {list(target_var.states)})"
        )
    if query.target in query.evidence and query.evidence[query.target] != outcome:
        return []

    fixed = dict(query.evidence)
    fixed[query.target] = outcome
    free = unobserved_variables(network, query)
    free_states = [network.variable(name).states for name in free]

    terms = []
    for index, combo in enumerate(product(*free_states)):
        assignment = {name: fixed[name] for name in network.order if name in fixed}
        assignment.update(zip(free, combo))
        # re-key in canonical order so assignment iteration order is stable
        ordered = {name: assignment[name] for name in network.order}
        terms.append(TermAssignment(assignment=ordered, index=index))
    return terms


# -- internals ---------------------------------------------------------------


def _parse_variables(raw) -> tuple[Variable, ...]:
    if not isinstance(raw, list) or not raw:
        raise DocumentError("`variables` must be a non-empty list")
    variables = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or "name" not in entry or "states" not in entry:
            raise DocumentError(f"variables[{i}]: expected {{name, states}}")
        name = entry["name"]
        states = entry["states"]
        if not isinstance(name, str) or not name:
            raise DocumentError(f"variables[{i}]: name must be a non-empty string")
        if (
            not isinstance(states, list)
            or not states
            or not all(isinstance(s, str) for s in states)
        ):
            raise DocumentError(f"variables[{i}] ({name}): states must be a list of strings")
        variables.append(Variable(name=name, states=tuple(states)))
    return tuple(variables)


def _parse_cpts(raw, variables: tuple[Variable, ...]) -> dict[str, ConditionalTable]:
    if not isinstance(raw, list):
        raise DocumentError("`cpts` must be a list")
    by_name = {v.name: v for v in variables}
    tables: dict[str, ConditionalTable] = {}
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or "child" not in entry or "rows" not in entry:
            raise DocumentError(f"cpts[{i}]: expected {{child, parents, rows}}")
        child = entry["child"]
        parents = tuple(entry.get("parents", []))
        if child not in by_name:
            raise DocumentError(f"cpts[{i}]: unknown child variable {child!r}")
        if child in tables:
            raise DocumentError(f"cpts[{i}]: duplicate table for {child!r}")
        rows: dict[tuple[str, ...], dict[str, float]] = {}
        for j, row in enumerate(entry["rows"]):
            loc = f"cpts[{i}] ({child}) rows[{j}]"
            if not isinstance(row, dict) or "dist" not in row:
                raise DocumentError(f"{loc}: expected {{given, dist}}")
            given = row.get("given", {})
            combo = []
            for parent in parents:
                if parent not in given:
                    raise DocumentError(f"{loc}: missing parent {parent!r} in `given`")
                state = given[parent]
                parent_var = by_name.get(parent)
                if parent_var is not None and state not in parent_var.states:
                    raise DocumentError(
                        f"{loc}: parent {parent!r} has no state {state!r}"
                    )
                combo.append(state)
            extra = set(given) - set(parents)
            if extra:
                raise DocumentError(f"{loc}: `given` names non-parents {sorted(extra)}")
            key = tuple(combo)
            if key in rows:
                raise DocumentError(f"{loc}: duplicate row for combination {key}")
            dist = row["dist"]
            child_states = by_name[child].states
            if set(dist) != set(child_states):
                raise DocumentError(
                    f"{loc}: `dist` must cover states {list(child_states)} exactly"
                )
            parsed = {}
            for state in child_states:
                p = dist[state]
                if not isinstance(p, (int, float)) or not 0.0 <= float(p) <= 1.0:
                    raise DocumentError(f"{loc}: probability for {state!r} not in [0, 1]")
                parsed[state] = float(p)
            rows[key] = parsed
        tables[child] = ConditionalTable(child=child, parents=parents, rows=rows)
    return tables


def _parse_sync_pairs(raw) -> tuple[tuple[str, str], ...]:
    if raw is None:
        return ()
    if not isinstance(raw, list):
        raise DocumentError("`sync_pairs` must be a list of two-name pairs")
    pairs = []
    for i, entry in enumerate(raw):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(n, str) for n in entry)
        ):
            raise DocumentError(f"sync_pairs[{i}]: expected a pair of variable names")
        pairs.append((entry[0], entry[1]))
    return tuple(pairs)


def _check_invariants(
    variables: tuple[Variable, ...],
    tables: Mapping[str, ConditionalTable],
    sync_pairs: tuple[tuple[str, str], ...],
) -> list[Finding]:
    findings: list[Finding] = []
    seen: set[str] = set()
    for v in variables:
        if v.name in seen:
            findings.append(
                Finding("duplicate-variable", v.name, f"variable {v.name!r} declared twice")
            )
        seen.add(v.name)
        if len(v.states) < 2:
            findings.append(
                Finding("too-few-states", v.name, f"variable {v.name!r} needs >= 2 states")
            )
        if len(set(v.states)) != len(v.states):
            findings.append(
                Finding("duplicate-state", v.name, f"variable {v.name!r} repeats a state label")
            )
    if not variables:
        findings.append(Finding("empty-network", "document", "no variables declared"))
        return findings

    by_name = {v.name: v for v in variables}
    for v in variables:
        if v.name not in tables:
            findings.append(
                Finding("missing-table", v.name, f"no conditional table for {v.name!r}")
            )
    for child, table in tables.items():
        loc = f"cpt[{child}]"
        if child not in by_name:
            findings.append(
                Finding("unknown-child", loc, f"table child {child!r} is not a declared variable")
            )
            continue
        parent_vars = []
        ok = True
        for parent in table.parents:
            if parent not in by_name:
                findings.append(Finding("unknown-parent", loc, f"unknown parent {parent!r}"))
                ok = False
            else:
                parent_vars.append(by_name[parent])
        if ok:
            expected = set(product(*(pv.states for pv in parent_vars)))
            for combo in expected - set(table.rows):
                findings.append(
                    Finding("missing-row", loc, f"missing parent combination {combo}")
                )
            for combo in set(table.rows) - expected:
                findings.append(
                    Finding("unknown-row", loc, f"row for undeclared combination {combo}")
                )
        for combo, dist in table.rows.items():
            total = sum(dist.values())
            if abs(total - 1.0) > ROW_SUM_TOLERANCE:
                findings.append(
                    Finding("row-sum", loc, f"row sum {total:.6g} != 1 for combination {combo}")
                )

    cycle = _find_cycle(variables, tables)
    if cycle:
        findings.append(Finding("cycle", "network", "cycle: " + ",".join(cycle)))

    for first, second in sync_pairs:
        loc = f"sync_pair[{first},{second}]"
        if first == second:
            findings.append(Finding("self-pair", loc, f"{first!r} paired with itself"))
        for name in (first, second):
            if name not in by_name:
                findings.append(Finding("unknown-pair-variable", loc, f"unknown variable {name!r}"))
    keys = [frozenset(p) for p in sync_pairs if p[0] != p[1]]
    if len(set(keys)) != len(keys):
        findings.append(Finding("duplicate-pair", "sync_pairs", "duplicate pair declared"))

    return findings


def _edges(
    variables: tuple[Variable, ...], tables: Mapping[str, ConditionalTable]
) -> Iterator[tuple[str, str]]:
    names = {v.name for v in variables}
    for child, table in tables.items():
        if child not in names:
            continue
        for parent in table.parents:
            if parent in names:
                yield parent, child


def _find_cycle(
    variables: tuple[Variable, ...], tables: Mapping[str, ConditionalTable]
) -> tuple[str, ...]:
    """Kahn's algorithm; returns the (declaration-ordered) nodes stuck on a cycle."""
    indegree = {v.name: 0 for v in variables}
    children: dict[str, list[str]] = {v.name: [] for v in variables}
    for parent, child in _edges(variables, tables):
        indegree[child] += 1
        children[parent].append(child)
    ready = [v.name for v in variables if indegree[v.name] == 0]
    done = 0
    while ready:
        name = ready.pop(0)
        done += 1
        for child in children[name]:
            indegree[child] -= 1
            if indegree[child] == 0:
                ready.append(child)
    if done == len(variables):
        return ()
    return tuple(v.name for v in variables if indegree[v.name] > 0)


def _topological_order(
    variables: tuple[Variable, ...], tables: Mapping[str, ConditionalTable]
) -> tuple[str, ...]:
    """Parents before children; declaration order breaks ties (deterministic)."""
    remaining = [v.name for v in variables]
    placed: set[str] = set()
    order: list[str] = []
    while remaining:
        for name in remaining:
            if all(p in placed for p in tables[name].parents):
                order.append(name)
                placed.add(name)
                remaining.remove(name)
                break
        else:
            raise DocumentError("cycle detected while ordering variables")
    return tuple(order)
