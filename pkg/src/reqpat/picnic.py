"""Canonical natural-language paraphrases of requirements, and traceability
reports.

Rendering a requirement back into controlled prose lets an analyst put the
generated sentence next to the original statement and spot divergence before
any verification runs. The phrase table is fixed: stable wording matters more
than elegant wording, because the sentences are compared across revisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .conditions import Condition
from .patterns import (
    Absence,
    After,
    AfterUntil,
    Before,
    Between,
    BoundedExistence,
    Existence,
    Globally,
    Precedence,
    PrecedenceChain,
    Requirement,
    Response,
    ResponseChain,
    Universality,
)
from .suite import Suite


class PicnicError(ValueError):
    def __init__(self, requirement: str, detail: str):
        super().__init__(f"requirement {requirement!r}: {detail}")
        self.requirement = requirement


@dataclass(frozen=True)
class PicnicLine:
    name: str
    phrase: str

    def render(self) -> str:
        return f"{self.name}: {self.phrase}"


def render_requirement(req: Requirement, names: Mapping[Condition, str]) -> PicnicLine:
    """Build the canonical paraphrase, naming conditions via `names`."""

    def name_of(cond: Condition) -> str:
        if cond not in names:
            raise PicnicError(req.name, "a referenced condition has no display name")
        return names[cond]

    pattern = req.pattern
    if isinstance(pattern, Absence):
        head = f"it is never the case that {name_of(pattern.p)} holds"
    elif isinstance(pattern, Universality):
        head = f"it is always the case that {name_of(pattern.p)} holds"
    elif isinstance(pattern, Existence):
        head = f"{name_of(pattern.p)} eventually holds"
    elif isinstance(pattern, BoundedExistence):
        head = f"{name_of(pattern.p)} holds in at most {pattern.k} episodes"
    elif isinstance(pattern, Precedence):
        head = f"{name_of(pattern.s)} precedes {name_of(pattern.p)}"
    elif isinstance(pattern, Response):
        head = f"{name_of(pattern.s)} responds to {name_of(pattern.p)}"
        if pattern.strict:
            head += " strictly"
    elif isinstance(pattern, ResponseChain):
        links = ", ".join(name_of(c) for c in pattern.chain)
        head = f"{links} respond in order to {name_of(pattern.p)}"
    elif isinstance(pattern, PrecedenceChain):
        links = ", ".join(name_of(c) for c in pattern.chain)
        head = f"{links} precede in order {name_of(pattern.p)}"
    else:
        raise PicnicError(req.name, f"no phrase for pattern {pattern!r}")

    scope = req.scope
    if isinstance(scope, Globally):
        tail = "globally"
    elif isinstance(scope, Before):
        tail = f"before {name_of(scope.r)}"
    elif isinstance(scope, After):
        tail = f"after {name_of(scope.q)}"
    elif isinstance(scope, Between):
        tail = f"between {name_of(scope.q)} and {name_of(scope.r)}"
    elif isinstance(scope, AfterUntil):
        tail = f"after {name_of(scope.q)} until {name_of(scope.r)}"
    else:
        raise PicnicError(req.name, f"no phrase for scope {scope!r}")

    return PicnicLine(name=req.name, phrase=f"{head} {tail}")


def render_suite_report(suite: Suite) -> str:
    """One paraphrase line per requirement, in suite order, each followed by
    the source quote it should be compared against, when one is recorded."""
    names = suite.names_by_condition()
    lines = []
    for req in suite.requirements:
        lines.append(render_requirement(req, names).render())
        if req.meta.source_quote:
            lines.append(f'    source: "{req.meta.source_quote}"')
    return "".join(line + "\n" for line in lines)


def traceability_report(suite: Suite) -> str:
    """Markdown table linking each requirement to its source document and its
    repository location; absent links render as an em dash."""
    names = suite.names_by_condition()

    def link(label: str, url: str | None) -> str:
        return f"[{label}]({url})" if url else "—"

    rows = [
        "| Name | Paraphrase | Source | Repo |",
        "| --- | --- | --- | --- |",
    ]
    for req in suite.requirements:
        phrase = render_requirement(req, names).phrase
        rows.append(
            f"| {req.name} | {phrase} | "
            f"{link('Source', req.meta.source_url)} | {link('Repo', req.meta.repo_url)} |"
        )
    return "".join(row + "\n" for row in rows)
