"""Loading, validating, and writing requirement suites and traces.

Suite files are JSON with two top-level keys:

* ``conditions``: object mapping a condition name to condition text in the
  grammar ``true | false | atom | !e | e && e | e || e | (e)``, where bare
  names are atoms observed on the system under test.
* ``requirements``: array of ``{name, pattern, scope, meta?}`` entries.
  ``pattern`` is tagged by ``type`` in {absence, universality, existence,
  bounded_existence, precedence, response, response_chain, precedence_chain}
  with parameter fields ``p``, ``s``, ``k``, ``chain``, ``strict``; ``scope``
  is tagged by ``type`` in {globally, before, after, between, after_until}
  with delimiter fields ``q``, ``r``. Condition parameters refer to entries
  of ``conditions`` by name. ``meta`` may carry ``source_url``,
  ``source_quote`` and ``repo_url``.

A name may be defined only once: a duplicate condition or requirement name is
the file-level contradiction signal and is always rejected.

Trace files are JSON Lines: one array of atom names per line, one line per
state, atoms sorted on output. Atoms absent from a line are false.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .conditions import (
    Condition,
    ConditionSyntaxError,
    State,
    Trace,
    format_condition,
    is_valid_atom,
    parse_condition,
)
from .patterns import (
    Absence,
    After,
    AfterUntil,
    Before,
    Between,
    BoundedExistence,
    Existence,
    Globally,
    Pattern,
    Precedence,
    PrecedenceChain,
    Requirement,
    Response,
    ResponseChain,
    Scope,
    TraceLinks,
    Universality,
)


class SuiteError(ValueError):
    """Base class for suite and trace file diagnostics."""


class DuplicateDefinition(SuiteError):
    def __init__(self, name: str):
        super().__init__(f"duplicate definition: {name!r}")
        self.name = name


class UnknownReference(SuiteError):
    def __init__(self, name: str, location: str):
        super().__init__(f"{location}: unknown condition {name!r}")
        self.name = name
        self.location = location


class MalformedPattern(SuiteError):
    def __init__(self, location: str, detail: str):
        super().__init__(f"{location}: {detail}")
        self.location = location


class MalformedCondition(SuiteError):
    def __init__(self, name: str, detail: str):
        super().__init__(f"condition {name!r}: {detail}")
        self.name = name


class MalformedSuite(SuiteError):
    pass


class TraceFormatError(SuiteError):
    def __init__(self, line: int, detail: str):
        super().__init__(f"line {line}: {detail}")
        self.line = line


@dataclass(frozen=True, init=False, eq=True)
class Suite:
    """Named conditions plus an ordered list of requirements over them."""

    conditions: dict[str, Condition]
    requirements: tuple[Requirement, ...]

    def __init__(
        self,
        conditions: Mapping[str, Condition],
        requirements: Iterable[Requirement],
    ):
        object.__setattr__(self, "conditions", dict(conditions))
        object.__setattr__(self, "requirements", tuple(requirements))
        seen: set[str] = set()
        for req in self.requirements:
            if req.name in seen:
                raise DuplicateDefinition(req.name)
            seen.add(req.name)

    def names_by_condition(self) -> dict[Condition, str]:
        """Invert the condition map for display; first definition wins."""
        out: dict[Condition, str] = {}
        for name, expr in self.conditions.items():
            out.setdefault(expr, name)
        return out


def _check_duplicate_keys(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    seen: set[str] = set()
    for key, _ in pairs:
        if key in seen:
            raise DuplicateDefinition(key)
        seen.add(key)
    return dict(pairs)


def load_suite(text: str) -> Suite:
    """Parse and validate a suite file; every defect raises a SuiteError."""
    try:
        data = json.loads(text, object_pairs_hook=_check_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise MalformedSuite(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedSuite("top level must be a JSON object")

    raw_conditions = data.get("conditions", {})
    if not isinstance(raw_conditions, dict):
        raise MalformedSuite("'conditions' must be an object")
    conditions: dict[str, Condition] = {}
    for name, body in raw_conditions.items():
        if not isinstance(body, str):
            raise MalformedCondition(name, "body must be a string")
        try:
            conditions[name] = parse_condition(body)
        except ConditionSyntaxError as exc:
            raise MalformedCondition(name, str(exc)) from exc

    raw_requirements = data.get("requirements", [])
    if not isinstance(raw_requirements, list):
        raise MalformedSuite("'requirements' must be an array")

    requirements = []
    names: set[str] = set()
    for index, entry in enumerate(raw_requirements):
        location = f"requirements[{index}]"
        if not isinstance(entry, dict):
            raise MalformedSuite(f"{location}: must be an object")
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            raise MalformedSuite(f"{location}: missing or empty 'name'")
        if name in names:
            raise DuplicateDefinition(name)
        names.add(name)
        pattern = _load_pattern(entry.get("pattern"), conditions, f"{location}.pattern")
        scope = _load_scope(entry.get("scope"), conditions, f"{location}.scope")
        meta = _load_meta(entry.get("meta"), f"{location}.meta")
        requirements.append(Requirement(name=name, pattern=pattern, scope=scope, meta=meta))

    return Suite(conditions=conditions, requirements=requirements)


def _resolve(raw: Any, conditions: Mapping[str, Condition], location: str) -> Condition:
    if not isinstance(raw, str):
        raise MalformedPattern(location, "condition reference must be a name string")
    if raw not in conditions:
        raise UnknownReference(raw, location)
    return conditions[raw]


def _load_pattern(raw: Any, conditions: Mapping[str, Condition], location: str) -> Pattern:
    if not isinstance(raw, dict):
        raise MalformedPattern(location, "must be an object with a 'type' tag")
    kind = raw.get("type")

    def param(field: str) -> Condition:
        if field not in raw:
            raise MalformedPattern(location, f"missing field {field!r}")
        return _resolve(raw[field], conditions, f"{location}.{field}")

    def chain() -> list[Condition]:
        value = raw.get("chain")
        if not isinstance(value, list) or not value:
            raise MalformedPattern(location, "'chain' must be a nonempty array of names")
        return [_resolve(item, conditions, f"{location}.chain") for item in value]

    if kind == "absence":
        return Absence(param("p"))
    if kind == "universality":
        return Universality(param("p"))
    if kind == "existence":
        return Existence(param("p"))
    if kind == "bounded_existence":
        k = raw.get("k")
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise MalformedPattern(location, "'k' must be an integer >= 0")
        return BoundedExistence(param("p"), k)
    if kind == "precedence":
        return Precedence(s=param("s"), p=param("p"))
    if kind == "response":
        strict = raw.get("strict", False)
        if not isinstance(strict, bool):
            raise MalformedPattern(location, "'strict' must be a boolean")
        return Response(p=param("p"), s=param("s"), strict=strict)
    if kind == "response_chain":
        return ResponseChain(p=param("p"), chain=chain())
    if kind == "precedence_chain":
        return PrecedenceChain(chain=chain(), p=param("p"))
    raise MalformedPattern(location, f"unknown pattern type {kind!r}")


def _load_scope(raw: Any, conditions: Mapping[str, Condition], location: str) -> Scope:
    if not isinstance(raw, dict):
        raise MalformedPattern(location, "must be an object with a 'type' tag")
    kind = raw.get("type")

    def param(field: str) -> Condition:
        if field not in raw:
            raise MalformedPattern(location, f"missing field {field!r}")
        return _resolve(raw[field], conditions, f"{location}.{field}")

    if kind == "globally":
        return Globally()
    if kind == "before":
        return Before(param("r"))
    if kind == "after":
        return After(param("q"))
    if kind == "between":
        return Between(q=param("q"), r=param("r"))
    if kind == "after_until":
        return AfterUntil(q=param("q"), r=param("r"))
    raise MalformedPattern(location, f"unknown scope type {kind!r}")


def _load_meta(raw: Any, location: str) -> TraceLinks:
    if raw is None:
        return TraceLinks()
    if not isinstance(raw, dict):
        raise MalformedSuite(f"{location}: must be an object")
    fields = {}
    for field in ("source_url", "source_quote", "repo_url"):
        value = raw.get(field)
        if value is not None and not isinstance(value, str):
            raise MalformedSuite(f"{location}.{field}: must be a string")
        fields[field] = value
    try:
        return TraceLinks(**fields)
    except ValueError as exc:
        raise MalformedSuite(f"{location}: {exc}") from exc


def dump_suite(suite: Suite) -> str:
    """Serialize a suite; load_suite inverts it. Every condition referenced by
    a requirement must appear in the suite's condition map."""
    names = suite.names_by_condition()

    def name_of(cond: Condition, where: str) -> str:
        if cond not in names:
            raise SuiteError(f"{where}: condition has no name in the suite")
        return names[cond]

    def pattern_json(req: Requirement) -> dict[str, Any]:
        where = f"requirement {req.name!r}"
        pattern = req.pattern
        if isinstance(pattern, Absence):
            return {"type": "absence", "p": name_of(pattern.p, where)}
        if isinstance(pattern, Universality):
            return {"type": "universality", "p": name_of(pattern.p, where)}
        if isinstance(pattern, Existence):
            return {"type": "existence", "p": name_of(pattern.p, where)}
        if isinstance(pattern, BoundedExistence):
            return {"type": "bounded_existence", "p": name_of(pattern.p, where), "k": pattern.k}
        if isinstance(pattern, Precedence):
            return {"type": "precedence", "s": name_of(pattern.s, where), "p": name_of(pattern.p, where)}
        if isinstance(pattern, Response):
            return {
                "type": "response",
                "p": name_of(pattern.p, where),
                "s": name_of(pattern.s, where),
                "strict": pattern.strict,
            }
        if isinstance(pattern, ResponseChain):
            return {
                "type": "response_chain",
                "p": name_of(pattern.p, where),
                "chain": [name_of(c, where) for c in pattern.chain],
            }
        if isinstance(pattern, PrecedenceChain):
            return {
                "type": "precedence_chain",
                "chain": [name_of(c, where) for c in pattern.chain],
                "p": name_of(pattern.p, where),
            }
        raise SuiteError(f"{where}: cannot serialize pattern {pattern!r}")

    def scope_json(req: Requirement) -> dict[str, Any]:
        where = f"requirement {req.name!r}"
        scope = req.scope
        if isinstance(scope, Globally):
            return {"type": "globally"}
        if isinstance(scope, Before):
            return {"type": "before", "r": name_of(scope.r, where)}
        if isinstance(scope, After):
            return {"type": "after", "q": name_of(scope.q, where)}
        if isinstance(scope, Between):
            return {"type": "between", "q": name_of(scope.q, where), "r": name_of(scope.r, where)}
        if isinstance(scope, AfterUntil):
            return {"type": "after_until", "q": name_of(scope.q, where), "r": name_of(scope.r, where)}
        raise SuiteError(f"{where}: cannot serialize scope {scope!r}")

    entries = []
    for req in suite.requirements:
        entry: dict[str, Any] = {
            "name": req.name,
            "pattern": pattern_json(req),
            "scope": scope_json(req),
        }
        meta = {
            key: value
            for key, value in (
                ("source_url", req.meta.source_url),
                ("source_quote", req.meta.source_quote),
                ("repo_url", req.meta.repo_url),
            )
            if value is not None
        }
        if meta:
            entry["meta"] = meta
        entries.append(entry)

    document = {
        "conditions": {name: format_condition(expr) for name, expr in suite.conditions.items()},
        "requirements": entries,
    }
    return json.dumps(document, indent=2) + "\n"


def load_trace(text: str) -> Trace:
    """Parse a JSON-Lines trace; one array of atom names per line."""
    states = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            atoms = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(lineno, f"not valid JSON: {exc}") from exc
        if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
            raise TraceFormatError(lineno, "each line must be an array of atom names")
        for atom in atoms:
            if not is_valid_atom(atom):
                raise TraceFormatError(lineno, f"invalid atom name {atom!r}")
        states.append(State(atoms))
    return Trace(states)


def write_trace(trace: Trace) -> str:
    """Serialize a trace as JSON Lines, atoms sorted per line; inverse of
    load_trace."""
    lines = [json.dumps(sorted(state.atoms), separators=(",", ":")) for state in trace]
    return "".join(line + "\n" for line in lines)
