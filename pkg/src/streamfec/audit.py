"""Ground-truth validation of a parity-check matrix for the DC-SW channel.

Two independent routes are audited jointly:

* the four linear-independence conditions on H and its shortened forms
  H^(l) (burst start / burst interior / random-with-delay / random-tail),
  which are sufficient for recovery of every admissible pattern, and
* a direct oracle that enumerates every admissible block-level erasure
  pattern (all bursts of length <= b, all a-subsets) and checks, coordinate
  by coordinate in increasing order, that the erased symbol is recoverable
  from its known prefix plus the accessible non-erased symbols inside the
  delay window.

The conditions should imply the oracle; the reverse is checked empirically
and any divergence is reported in the AuditReport, never asserted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .codespec import TAG_REPETITION, CodeSpec, ParamSet
from .fields import Field
from .linalg import Matrix, SpanBasis, rank, shortened_pc


class AuditError(ValueError):
    pass


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class ErasurePattern:
    """A set of erased block coordinates with its admissibility class."""

    erased: tuple[int, ...]
    kind: str  # "BURST", "RANDOM" or "INADMISSIBLE"
    burst_start: int | None = None
    burst_length: int | None = None

    @classmethod
    def classify(cls, erased, p: ParamSet) -> "ErasurePattern":
        coords = tuple(sorted(set(erased)))
        if any(c < 0 or c >= p.n for c in coords):
            raise AuditError("erased coordinate out of range")
        if coords and coords[-1] - coords[0] == len(coords) - 1 and len(coords) <= p.b:
            return cls(coords, "BURST", coords[0], len(coords))
        if len(coords) <= p.a:
            return cls(coords, "RANDOM")
        return cls(coords, "INADMISSIBLE")

    @property
    def admissible(self) -> bool:
        return self.kind != "INADMISSIBLE"


@dataclass
class AuditReport:
    b1_ok: bool
    b2_ok: bool
    r1_ok: bool
    r2_ok: bool
    oracle_ok: bool
    counterexamples: dict = dc_field(default_factory=dict)
    conditions_vs_oracle_divergence: bool = False

    @property
    def ok(self) -> bool:
        return self.b1_ok and self.b2_ok and self.r1_ok and self.r2_ok and self.oracle_ok

    def to_dict(self) -> dict:
        return {
            "b1_ok": self.b1_ok,
            "b2_ok": self.b2_ok,
            "r1_ok": self.r1_ok,
            "r2_ok": self.r2_ok,
            "oracle_ok": self.oracle_ok,
            "ok": self.ok,
            "counterexamples": {k: _jsonable(v) for k, v in self.counterexamples.items()},
            "conditions_vs_oracle_divergence": self.conditions_vs_oracle_divergence,
        }


def _require_h(spec: CodeSpec) -> Matrix:
    if spec.tag == TAG_REPETITION or spec.h is None:
        raise AuditError("spec carries no parity-check matrix to audit")
    return spec.h


def _shortened_all(h: Matrix, p: ParamSet) -> list[Matrix]:
    return [shortened_pc(h, ell + p.tau) for ell in range(p.delta)]


def _span_hitting_subset(field: Field, target, cols, candidates, size):
    """Smallest subset S of candidate columns (|S| <= size) with target in span(S).

    Depth-first over independent column prefixes; dependent candidates are
    skipped since they cannot enlarge a span.  Returns None when the target
    avoids the span of every such subset.
    """
    basis = SpanBasis(field)
    if basis.contains(target):
        return ()
    chosen: list[int] = []

    def rec(start: int) -> tuple | None:
        depth = len(chosen)
        if depth == size:
            return None
        for idx in range(start, len(candidates)):
            j = candidates[idx]
            snap = basis.snapshot()
            if not basis.add(cols[j]):
                continue
            chosen.append(j)
            if basis.contains(target):
                found = tuple(chosen)
                chosen.pop()
                basis.restore(snap)
                return found
            found = rec(idx + 1)
            chosen.pop()
            basis.restore(snap)
            if found is not None:
                return found
        return None

    return rec(0)


def _dependent_subset(field: Field, cols, candidates, size):
    """A linearly dependent subset of at most `size` candidate columns, or None."""
    basis = SpanBasis(field)
    chosen: list[int] = []

    def rec(start: int) -> tuple | None:
        for idx in range(start, len(candidates)):
            j = candidates[idx]
            snap = basis.snapshot()
            if not basis.add(cols[j]):
                return tuple(chosen + [j])
            if len(chosen) + 1 < size:
                chosen.append(j)
                found = rec(idx + 1)
                chosen.pop()
                if found is not None:
                    basis.restore(snap)
                    return found
            basis.restore(snap)
        return None

    return rec(0)


def _check_b1(h: Matrix, p: ParamSet, shortened) -> tuple[bool, tuple | None]:
    for ell in range(p.delta):
        hl = shortened[ell]
        basis = SpanBasis(h.field)
        for j in range(ell + 1, ell + p.b):
            basis.add(hl.col(j))
        if basis.contains(hl.col(ell)):
            return False, (ell, tuple(range(ell + 1, ell + p.b)))
    return True, None


def _check_b2(h: Matrix, p: ParamSet) -> tuple[bool, tuple | None]:
    for ell in range(p.delta, p.n - p.b + 1):
        window = h.submatrix(range(h.rows), range(ell, ell + p.b))
        if rank(window) != p.b:
            return False, (ell, tuple(range(ell, ell + p.b)))
    return True, None


def _check_r1(h: Matrix, p: ParamSet, shortened) -> tuple[bool, tuple | None]:
    for ell in range(p.delta):
        hl = shortened[ell]
        cols = [hl.col(j) for j in range(hl.cols)]
        candidates = list(range(ell + 1, ell + p.tau + 1))
        hit = _span_hitting_subset(h.field, cols[ell], cols, candidates, p.a - 1)
        if hit is not None:
            return False, (ell, hit)
    return True, None


def _check_r2(h: Matrix, p: ParamSet) -> tuple[bool, tuple | None]:
    cols = [h.col(j) for j in range(h.cols)]
    candidates = list(range(p.n - 1 - p.tau, p.n))
    dep = _dependent_subset(h.field, cols, candidates, p.a)
    if dep is not None:
        return False, (None, dep)
    return True, None


def check_b1(spec: CodeSpec):
    h = _require_h(spec)
    return _check_b1(h, spec.params, _shortened_all(h, spec.params))


def check_b2(spec: CodeSpec):
    return _check_b2(_require_h(spec), spec.params)


def check_r1(spec: CodeSpec):
    h = _require_h(spec)
    return _check_r1(h, spec.params, _shortened_all(h, spec.params))


def check_r2(spec: CodeSpec):
    return _check_r2(_require_h(spec), spec.params)


def conditions_hold_matrix(h: Matrix, p: ParamSet) -> bool:
    """Fast conjunction of the four conditions, cheapest first, no reporting."""
    if not _check_b2(h, p)[0]:
        return False
    shortened = _shortened_all(h, p)
    if not _check_b1(h, p, shortened)[0]:
        return False
    if not _check_r2(h, p)[0]:
        return False
    return _check_r1(h, p, shortened)[0]


class _OracleContext:
    """Per-spec state for pattern checks: shortened matrices and a memo of
    (coordinate, later-erasures) span tests."""

    def __init__(self, h: Matrix, p: ParamSet):
        self.h = h
        self.p = p
        self.field = h.field
        self.cols = [h.col(j) for j in range(h.cols)]
        shortened = _shortened_all(h, p)
        self.short_cols = [[m.col(j) for j in range(m.cols)] for m in shortened]
        self.memo: dict = {}

    def coordinate_recoverable(self, t: int, later: tuple[int, ...]) -> bool:
        """Can coordinate t be solved given its known prefix, with the
        coordinates in `later` also erased?"""
        key = (t, later)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if t < self.p.delta:
            cols = self.short_cols[t]
        else:
            cols = self.cols
        basis = SpanBasis(self.field)
        for j in later:
            basis.add(cols[j])
        ok = not basis.contains(cols[t])
        self.memo[key] = ok
        return ok


def pattern_decodable(ctx: _OracleContext, erased) -> tuple[bool, int | None]:
    """Decode feasibility of one erasure pattern, processed in increasing
    coordinate order so earlier recovered symbols count as known."""
    p = ctx.p
    coords = sorted(erased)
    for i, t in enumerate(coords):
        horizon = t + p.tau if t < p.delta else p.n - 1
        later = tuple(c for c in coords[i + 1 :] if c <= horizon)
        if not ctx.coordinate_recoverable(t, later):
            return False, t
    return True, None


def oracle_context(spec: CodeSpec) -> _OracleContext:
    return _OracleContext(_require_h(spec), spec.params)


def admissible_patterns(p: ParamSet):
    """All block-level admissible patterns: bursts of length <= b, then
    a-subsets (smaller random patterns are subsets of these)."""
    n, a, b = p.n, p.a, p.b
    for length in range(1, b + 1):
        for start in range(0, n - length + 1):
            yield tuple(range(start, start + length))
    yield from itertools.combinations(range(n), a)


def oracle_decodable(spec: CodeSpec) -> tuple[bool, tuple | None]:
    """Exhaustively check every admissible pattern; returns the first
    failing (pattern, coordinate) if any."""
    ctx = oracle_context(spec)
    for pattern in admissible_patterns(spec.params):
        ok, coord = pattern_decodable(ctx, pattern)
        if not ok:
            return False, (pattern, coord)
    return True, None


def check_all(spec: CodeSpec, run_oracle: bool = True) -> AuditReport:
    h = _require_h(spec)
    p = spec.params
    shortened = _shortened_all(h, p)
    ces: dict = {}
    b1, ce = _check_b1(h, p, shortened)
    if ce:
        ces["b1"] = ce
    b2, ce = _check_b2(h, p)
    if ce:
        ces["b2"] = ce
    r1, ce = _check_r1(h, p, shortened)
    if ce:
        ces["r1"] = ce
    r2, ce = _check_r2(h, p)
    if ce:
        ces["r2"] = ce
    if run_oracle:
        oracle, ce = oracle_decodable(spec)
        if ce:
            ces["oracle"] = ce
    else:
        oracle = b1 and b2 and r1 and r2
    divergence = oracle and not (b1 and b2 and r1 and r2)
    return AuditReport(b1, b2, r1, r2, oracle, ces, divergence)
