"""Requirement patterns, scopes, and their evaluation over finite traces.

A requirement instantiates one occurrence/order pattern under one scope. The
scope carves a trace into zero or more half-open segments; the pattern is then
evaluated on every segment. A verdict distinguishes vacuous satisfaction
(the pattern's trigger never materialised) from substantive satisfaction,
because a suite that only holds vacuously usually signals missing
requirements rather than a verified system.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .conditions import Condition, Trace, eval_condition

Segment = tuple[int, int]


class Scope:
    """Base class for scope variants. All variants are immutable values."""

    __slots__ = ()


@dataclass(frozen=True)
class Globally(Scope):
    pass


@dataclass(frozen=True)
class Before(Scope):
    r: Condition


@dataclass(frozen=True)
class After(Scope):
    q: Condition


@dataclass(frozen=True)
class Between(Scope):
    q: Condition
    r: Condition


@dataclass(frozen=True)
class AfterUntil(Scope):
    q: Condition
    r: Condition


class Pattern:
    """Base class for pattern variants."""

    __slots__ = ()


@dataclass(frozen=True)
class Absence(Pattern):
    p: Condition


@dataclass(frozen=True)
class Universality(Pattern):
    p: Condition


@dataclass(frozen=True)
class Existence(Pattern):
    p: Condition


@dataclass(frozen=True)
class BoundedExistence(Pattern):
    """At most `k` maximal blocks of consecutive p-positions per segment."""

    p: Condition
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"bound must be >= 0, got {self.k}")


@dataclass(frozen=True)
class Precedence(Pattern):
    """No p strictly before the first s; without any s, p may not occur."""

    s: Condition
    p: Condition


@dataclass(frozen=True)
class Response(Pattern):
    """Every p is answered by a later s; reflexive unless strict."""

    p: Condition
    s: Condition
    strict: bool = False


@dataclass(frozen=True, init=False)
class ResponseChain(Pattern):
    """Every p is followed, in order and strictly after it, by the chain."""

    p: Condition
    chain: tuple[Condition, ...]

    def __init__(self, p: Condition, chain):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "chain", tuple(chain))
        if not self.chain:
            raise ValueError("chain must be nonempty")


@dataclass(frozen=True, init=False)
class PrecedenceChain(Pattern):
    """The first p, if any, is preceded, in order, by the chain."""

    chain: tuple[Condition, ...]
    p: Condition

    def __init__(self, chain, p: Condition):
        object.__setattr__(self, "chain", tuple(chain))
        object.__setattr__(self, "p", p)
        if not self.chain:
            raise ValueError("chain must be nonempty")


@dataclass(frozen=True)
class TraceLinks:
    """Traceability metadata linking a requirement back to its sources."""

    source_url: str | None = None
    source_quote: str | None = None
    repo_url: str | None = None

    def __post_init__(self) -> None:
        if self.source_quote is not None and not self.source_quote:
            raise ValueError("source_quote, when present, must be nonempty")


@dataclass(frozen=True)
class Requirement:
    name: str
    pattern: Pattern
    scope: Scope
    meta: TraceLinks = TraceLinks()


@dataclass(frozen=True)
class Holds:
    vacuous: bool = False


@dataclass(frozen=True)
class Fails:
    segment: int
    position: int
    reason: str = field(default="", compare=False)


@dataclass(frozen=True)
class Inconclusive:
    # Reserved for verdicts that a finite trace cannot settle; the trace-mode
    # checker itself is total and never produces it.
    reason: str = field(default="", compare=False)


Verdict = Holds | Fails | Inconclusive


def _truth(cond: Condition, trace: Trace, lo: int, hi: int) -> list[bool]:
    return [eval_condition(cond, trace[k]) for k in range(lo, hi)]


def _first_index(cond: Condition, trace: Trace, start: int, stop: int) -> int | None:
    for k in range(start, stop):
        if eval_condition(cond, trace[k]):
            return k
    return None


def segments(scope: Scope, trace: Trace) -> list[Segment]:
    """Carve the trace into the half-open index ranges governed by the scope.

    Conventions: a segment opens at the delimiting q-position (inclusive) and
    closes at the next strictly later r-position (exclusive). For Between the
    trailing unclosed segment is discarded; for AfterUntil it extends to the
    end of the trace and is kept. The returned ranges are disjoint, ordered,
    and within [0, len(trace)].
    """
    n = len(trace)
    if isinstance(scope, Globally):
        return [(0, n)]
    if isinstance(scope, Before):
        idx = _first_index(scope.r, trace, 0, n)
        return [] if idx is None else [(0, idx)]
    if isinstance(scope, After):
        idx = _first_index(scope.q, trace, 0, n)
        return [] if idx is None else [(idx, n)]
    if isinstance(scope, (Between, AfterUntil)):
        out: list[Segment] = []
        cursor = 0
        while True:
            q_idx = _first_index(scope.q, trace, cursor, n)
            if q_idx is None:
                break
            r_idx = _first_index(scope.r, trace, q_idx + 1, n)
            if r_idx is None:
                if isinstance(scope, AfterUntil):
                    out.append((q_idx, n))
                break
            out.append((q_idx, r_idx))
            cursor = r_idx
        return out
    raise TypeError(f"not a scope: {scope!r}")


def count_blocks(p: Condition, trace: Trace, segment: Segment) -> int:
    """Number of maximal runs of consecutive p-positions within the segment."""
    lo, hi = _checked_segment(segment, trace)
    blocks = 0
    prev = False
    for k in range(lo, hi):
        cur = eval_condition(p, trace[k])
        if cur and not prev:
            blocks += 1
        prev = cur
    return blocks


def _checked_segment(segment: Segment, trace: Trace) -> Segment:
    lo, hi = segment
    if not 0 <= lo <= hi <= len(trace):
        raise ValueError(f"segment {segment!r} out of bounds for trace of length {len(trace)}")
    return lo, hi


def evaluate_pattern(pattern: Pattern, trace: Trace, segment: Segment) -> Verdict:
    """Evaluate one pattern on one segment.

    A Holds verdict is vacuous when the pattern's trigger never occurred in
    the segment: the trigger is p for Response, ResponseChain, Precedence and
    PrecedenceChain; Absence, Universality and BoundedExistence are vacuous
    exactly on empty segments; Existence is never vacuous (and fails on an
    empty segment, which offers no witness position).
    """
    lo, hi = _checked_segment(segment, trace)
    empty = lo == hi

    if isinstance(pattern, Absence):
        for k in range(lo, hi):
            if eval_condition(pattern.p, trace[k]):
                return Fails(0, k, "forbidden condition holds")
        return Holds(vacuous=empty)

    if isinstance(pattern, Universality):
        for k in range(lo, hi):
            if not eval_condition(pattern.p, trace[k]):
                return Fails(0, k, "required condition does not hold")
        return Holds(vacuous=empty)

    if isinstance(pattern, Existence):
        for k in range(lo, hi):
            if eval_condition(pattern.p, trace[k]):
                return Holds(vacuous=False)
        return Fails(0, max(lo, hi - 1), "no position satisfies the condition")

    if isinstance(pattern, BoundedExistence):
        blocks = 0
        prev = False
        for k in range(lo, hi):
            cur = eval_condition(pattern.p, trace[k])
            if cur and not prev:
                blocks += 1
                if blocks > pattern.k:
                    return Fails(0, k, f"block {blocks} exceeds the bound of {pattern.k}")
            prev = cur
        return Holds(vacuous=empty)

    if isinstance(pattern, Precedence):
        first_s = _first_index(pattern.s, trace, lo, hi)
        limit = hi if first_s is None else first_s
        triggered = False
        for k in range(lo, limit):
            if eval_condition(pattern.p, trace[k]):
                return Fails(0, k, "condition occurs before its required precedent")
        for k in range(limit, hi):
            if eval_condition(pattern.p, trace[k]):
                triggered = True
                break
        return Holds(vacuous=not triggered)

    if isinstance(pattern, Response):
        triggered = False
        for k in range(lo, hi):
            if not eval_condition(pattern.p, trace[k]):
                continue
            triggered = True
            start = k + 1 if pattern.strict else k
            if _first_index(pattern.s, trace, start, hi) is None:
                return Fails(0, k, "trigger is never answered within the segment")
        return Holds(vacuous=not triggered)

    if isinstance(pattern, ResponseChain):
        triggered = False
        for k in range(lo, hi):
            if not eval_condition(pattern.p, trace[k]):
                continue
            triggered = True
            cursor = k
            for link in pattern.chain:
                nxt = _first_index(link, trace, cursor + 1, hi)
                if nxt is None:
                    return Fails(0, k, "trigger is not followed by the full chain")
                cursor = nxt
        return Holds(vacuous=not triggered)

    if isinstance(pattern, PrecedenceChain):
        first_p = _first_index(pattern.p, trace, lo, hi)
        if first_p is None:
            return Holds(vacuous=True)
        cursor = lo - 1
        for link in pattern.chain:
            nxt = _first_index(link, trace, cursor + 1, first_p)
            if nxt is None:
                return Fails(0, first_p, "condition is not preceded by the full chain")
            cursor = nxt
        return Holds(vacuous=False)

    raise TypeError(f"not a pattern: {pattern!r}")


def map_conditions(req: Requirement, fn) -> Requirement:
    """Rebuild a requirement with `fn` applied to every condition parameter.

    Useful for re-expressing a requirement over a different alphabet, e.g.
    replacing named conditions by propositions named after them.
    """
    pattern = req.pattern
    if isinstance(pattern, Absence):
        pattern = Absence(fn(pattern.p))
    elif isinstance(pattern, Universality):
        pattern = Universality(fn(pattern.p))
    elif isinstance(pattern, Existence):
        pattern = Existence(fn(pattern.p))
    elif isinstance(pattern, BoundedExistence):
        pattern = BoundedExistence(fn(pattern.p), pattern.k)
    elif isinstance(pattern, Precedence):
        pattern = Precedence(s=fn(pattern.s), p=fn(pattern.p))
    elif isinstance(pattern, Response):
        pattern = Response(p=fn(pattern.p), s=fn(pattern.s), strict=pattern.strict)
    elif isinstance(pattern, ResponseChain):
        pattern = ResponseChain(p=fn(pattern.p), chain=[fn(c) for c in pattern.chain])
    elif isinstance(pattern, PrecedenceChain):
        pattern = PrecedenceChain(chain=[fn(c) for c in pattern.chain], p=fn(pattern.p))
    else:
        raise TypeError(f"not a pattern: {pattern!r}")

    scope = req.scope
    if isinstance(scope, Before):
        scope = Before(fn(scope.r))
    elif isinstance(scope, After):
        scope = After(fn(scope.q))
    elif isinstance(scope, Between):
        scope = Between(q=fn(scope.q), r=fn(scope.r))
    elif isinstance(scope, AfterUntil):
        scope = AfterUntil(q=fn(scope.q), r=fn(scope.r))
    elif not isinstance(scope, Globally):
        raise TypeError(f"not a scope: {scope!r}")

    return dataclasses.replace(req, pattern=pattern, scope=scope)


def check(req: Requirement, trace: Trace) -> Verdict:
    """Check a requirement over a whole trace.

    Returns the first failing segment's verdict, rewritten with its segment
    index; otherwise Holds, vacuously iff there were no segments or every
    segment held vacuously.
    """
    segs = segments(req.scope, trace)
    all_vacuous = True
    for idx, seg in enumerate(segs):
        verdict = evaluate_pattern(req.pattern, trace, seg)
        if isinstance(verdict, Fails):
            return dataclasses.replace(verdict, segment=idx)
        assert isinstance(verdict, Holds)
        all_vacuous = all_vacuous and verdict.vacuous
    return Holds(vacuous=(not segs) or all_vacuous)
