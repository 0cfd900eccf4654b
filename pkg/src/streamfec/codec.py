"""Streaming layer: diagonal embedding encoder and delay-constrained decoder.

The convolutional stream places block-codeword symbols on diagonals of the
packet grid: position i of diagonal d is row i of the packet sent at time
d+i, so each diagonal [s_0(d) .. s_{k-1}(d+k-1) p_0(d+k) .. p_{b-1}(d+n-1)]
is one codeword of the underlying [n, k] block code.  Packets before time 0
carry zero message symbols, so early diagonals are fully determined.

Parity row j of the packet at time t is therefore the j-th parity of the
diagonal that started at time t-k-j:

    p_j(t) = sum_i E[j][i] * s_i(t-k-j+i),   E = H_tail^-1 H_head.

The decoder tracks one record per diagonal touched by an erasure.  Every
erased coordinate comes due exactly tau slots after its slot was lost; at
that point the decoder runs one exact elimination over the diagonal's
unknowns (erased-and-unrecovered plus not-yet-transmitted coordinates) and
fills every coordinate the system pins down uniquely.  A message symbol
still unknown at its deadline is a loss event; inadmissible erasure
patterns degrade to best-effort recovery, never errors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .codespec import TAG_REPETITION, CodeSpec
from .linalg import _eliminate, invert, matmul


class CodecError(ValueError):
    pass


class DiagonalCodec:
    """Tables derived from a CodeSpec, shared by encoder/decoder instances."""

    def __init__(self, spec: CodeSpec):
        if spec.h is None:
            raise CodecError("spec has no parity-check matrix; use the repetition codec")
        p = spec.params
        self.spec = spec
        self.field = spec.field
        self.n, self.k, self.b, self.tau = p.n, p.k, p.b, p.tau
        h = spec.h
        tail = h.submatrix(range(self.b), range(self.k, self.n))
        head = h.submatrix(range(self.b), range(self.k))
        try:
            self.parity_rows = matmul(invert(tail), head).data
        except ValueError as e:
            raise CodecError("last b columns of H are dependent; no systematic form") from e
        self.h_cols = [tuple(h.col(j)) for j in range(self.n)]
        self.flush_slots = self.n - 1


class StreamEncoder:
    """Systematic convolutional encoder over the diagonal embedding."""

    def __init__(self, codec: DiagonalCodec):
        self.codec = codec
        self.flush_slots = codec.flush_slots
        self.reset()

    def reset(self) -> None:
        self._hist = [[0] * self.codec.k for _ in range(self.codec.n)]
        self._t = 0

    def step(self, s: list[int]) -> list[int]:
        codec = self.codec
        n, k, b = codec.n, codec.k, codec.b
        if len(s) != k:
            raise CodecError(f"message packet must have {k} symbols")
        t = self._t
        hist = self._hist
        mul = codec.field.mul
        x = list(s)
        for j in range(b):
            acc = 0
            row = codec.parity_rows[j]
            base = t - k - j
            for i in range(k):
                coeff = row[i]
                if coeff:
                    v = hist[(base + i) % n][i]
                    if v:
                        acc ^= mul(coeff, v)
            x.append(acc)
        hist[t % n] = list(s)
        self._t += 1
        return x


class StreamDecoder:
    """Online erasure decoder with per-packet delivery deadline tau.

    step() ingests the slot-t reception (a coded packet or None for an
    erasure) and returns (deliveries, losses): deliveries are recovered
    message symbols (time, component, value), emitted the moment they are
    pinned down; losses are message symbols whose deadline passed
    unrecovered.  Intact packets deliver implicitly on arrival.
    """

    def __init__(self, codec: DiagonalCodec):
        self.codec = codec
        self.reset()

    def reset(self) -> None:
        n = self.codec.n
        self._t = 0
        self._ring: list = [None] * n
        self._records: dict[int, list] = {}
        self._erased: set[int] = set()
        self._expiry: dict[int, list[int]] = {}
        self.lost_packets = 0
        self.unrecovered_symbols = 0

    def step(self, y: list[int] | None):
        codec = self.codec
        n = codec.n
        t = self._t
        self._t = t + 1
        records = self._records
        if y is None:
            self._erased.add(t)
            self._ring[t % n] = None
            for r in range(n):
                d = t - r
                if d not in records:
                    records[d] = self._new_record(d, t)
                    self._expiry.setdefault(d + n - 1 + codec.tau, []).append(d)
        else:
            self._ring[t % n] = y
            if records:
                for r in range(n):
                    rec = records.get(t - r)
                    if rec is not None and rec[r] is None:
                        rec[r] = y[r]
        return self._deadlines(t)

    def tick(self):
        """Advance time with no reception (end-of-stream flush)."""
        t = self._t
        self._t = t + 1
        return self._deadlines(t)

    def _deadlines(self, t: int):
        codec = self.codec
        n, k = codec.n, codec.k
        deliveries: list = []
        losses: list = []
        t0 = t - codec.tau
        if t0 in self._erased:
            self._erased.discard(t0)
            records = self._records
            lost = False
            for r in range(n):
                rec = records.get(t0 - r)
                if rec is None or rec[r] is not None:
                    continue
                self._solve(rec, t0 - r, deliveries)
                if rec[r] is None:
                    self.unrecovered_symbols += 1
                    if r < k:
                        losses.append((t0, r))
                        lost = True
            if lost:
                self.lost_packets += 1
        for d in self._expiry.pop(t, ()):
            self._records.pop(d, None)
        return deliveries, losses

    def _new_record(self, d: int, t: int) -> list:
        n = self.codec.n
        ring = self._ring
        vals: list = [None] * n
        for pos in range(n):
            tp = d + pos
            if tp < 0:
                vals[pos] = 0
            elif tp < t:
                pkt = ring[tp % n]
                if pkt is not None:
                    vals[pos] = pkt[pos]
        return vals

    def _solve(self, rec: list, d: int, deliveries: list) -> None:
        codec = self.codec
        field = codec.field
        cols = codec.h_cols
        b, k = codec.b, codec.k
        mul = field.mul
        unknown = [pos for pos, v in enumerate(rec) if v is None]
        syn = [0] * b
        for pos, v in enumerate(rec):
            if v:
                col = cols[pos]
                for i in range(b):
                    ci = col[i]
                    if ci:
                        syn[i] ^= mul(ci, v)
        m = len(unknown)
        rows = [[cols[pos][i] for pos in unknown] + [syn[i]] for i in range(b)]
        pivots = _eliminate(rows, field, m, reduced=True)
        for row in rows[len(pivots):]:
            if row[m]:
                return  # inconsistent marks (possible only if erasures were mislabelled)
        for rr, c in enumerate(pivots):
            row = rows[rr]
            determined = True
            for j in range(m):
                if j != c and row[j]:
                    determined = False
                    break
            if determined:
                pos = unknown[c]
                rec[pos] = row[m]
                if pos < k:
                    deliveries.append((d + pos, pos, row[m]))


class RepetitionEncoder:
    """x(t) = [s(t); s(t - tau)] with zero history before time 0."""

    def __init__(self, spec: CodeSpec):
        if spec.tag != TAG_REPETITION:
            raise CodecError("repetition encoder needs a repetition spec")
        self.spec = spec
        self.tau = spec.params.tau
        self.flush_slots = self.tau
        self.reset()

    def reset(self) -> None:
        self._ring = [0] * (self.tau + 1)
        self._t = 0

    def step(self, s: list[int]) -> list[int]:
        if len(s) != 1:
            raise CodecError("repetition message packets carry one symbol")
        t = self._t
        self._t = t + 1
        tau = self.tau
        old = self._ring[(t - tau) % (tau + 1)] if t >= tau else 0
        self._ring[t % (tau + 1)] = s[0]
        return [s[0], old]


class RepetitionDecoder:
    """Deliver s(t) from x(t), else from the copy inside x(t+tau), else lose it."""

    def __init__(self, spec: CodeSpec):
        if spec.tag != TAG_REPETITION:
            raise CodecError("repetition decoder needs a repetition spec")
        self.tau = spec.params.tau
        self.reset()

    def reset(self) -> None:
        self._t = 0
        self._pending: set[int] = set()
        self.lost_packets = 0
        self.unrecovered_symbols = 0

    def step(self, y: list[int] | None):
        t = self._t
        self._t = t + 1
        deliveries: list = []
        losses: list = []
        pending = self._pending
        if y is None:
            pending.add(t)
        elif t - self.tau in pending:
            pending.discard(t - self.tau)
            deliveries.append((t - self.tau, 0, y[1]))
        t0 = t - self.tau
        if t0 in pending:
            pending.discard(t0)
            losses.append((t0, 0))
            self.lost_packets += 1
            self.unrecovered_symbols += 1
        return deliveries, losses

    def tick(self):
        return self.step_no_input()

    def step_no_input(self):
        t = self._t
        self._t = t + 1
        losses: list = []
        t0 = t - self.tau
        if t0 in self._pending:
            self._pending.discard(t0)
            losses.append((t0, 0))
            self.lost_packets += 1
            self.unrecovered_symbols += 1
        return [], losses


def make_encoder(spec: CodeSpec):
    if spec.tag == TAG_REPETITION:
        return RepetitionEncoder(spec)
    return StreamEncoder(DiagonalCodec(spec))


def make_decoder(spec: CodeSpec):
    if spec.tag == TAG_REPETITION:
        return RepetitionDecoder(spec)
    return StreamDecoder(DiagonalCodec(spec))


@dataclass(frozen=True)
class ColumnMetrics:
    d_tau: int
    c_tau: int


def _truncated_outputs(encoder, seq: list[list[int]]) -> list[list[int]]:
    encoder.reset()
    return [encoder.step(s) for s in seq]


def column_metrics(spec: CodeSpec, exhaustive_bound: int = 2_000_000) -> ColumnMetrics:
    """Column distance and span of the streaming code, truncated at tau+1.

    Brute force over every message prefix with s(0) != 0; refuses when the
    q^(k(tau+1)) search space exceeds exhaustive_bound.
    """
    tau = spec.params.tau
    k = spec.k
    q = spec.field.order
    total = (q ** k - 1) * q ** (k * tau)
    if total > exhaustive_bound:
        raise CodecError(f"search space {total} exceeds bound {exhaustive_bound}")
    enc = make_encoder(spec)
    best_wt = tau + 2
    best_span = tau + 2
    vectors = list(itertools.product(range(q), repeat=k))
    nonzero = [list(v) for v in vectors if any(v)]
    for first in nonzero:
        for rest in itertools.product(vectors, repeat=tau):
            seq = [first] + [list(v) for v in rest]
            outs = _truncated_outputs(enc, seq)
            alive = [i for i, x in enumerate(outs) if any(x)]
            # x(0) is nonzero because the code is systematic and s(0) != 0
            wt = len(alive)
            span = alive[-1] - alive[0] + 1
            if wt < best_wt:
                best_wt = wt
            if span < best_span:
                best_span = span
    if not best_wt <= best_span <= tau + 1:
        raise CodecError("metric invariant d <= c <= tau+1 violated")
    return ColumnMetrics(best_wt, best_span)


def column_metrics_via_erasures(spec: CodeSpec) -> ColumnMetrics:
    """Independent route to (d, c) through erasure-correction duality.

    d >= e+1 iff s(0) survives every e-slot erasure pattern containing
    slot 0; c >= L+1 iff it survives the length-L burst at the start.
    Uses kernels of the truncated input/output map, no codeword search.
    """
    from .linalg import Matrix, kernel_basis

    p = spec.params
    tau, k, n = p.tau, spec.k, spec.n
    field = spec.field
    nvars = k * (tau + 1)
    codec = None if spec.tag == TAG_REPETITION else DiagonalCodec(spec)

    def output_rows(t: int) -> list[list[int]]:
        rows = []
        for i in range(k):
            row = [0] * nvars
            row[t * k + i] = 1
            rows.append(row)
        if codec is None:
            row = [0] * nvars
            if t - tau >= 0:
                row[(t - tau) * k] = 1
            rows.append(row)
            return rows
        for j in range(n - k):
            row = [0] * nvars
            for i in range(k):
                src = t - k - j + i
                if 0 <= src <= tau:
                    row[src * k + i] = codec.parity_rows[j][i]
            rows.append(row)
        return rows

    all_rows = [output_rows(t) for t in range(tau + 1)]

    def s0_survives(erased: set[int]) -> bool:
        kept = [r for t in range(tau + 1) if t not in erased for r in all_rows[t]]
        if not kept:
            return False
        kern = kernel_basis(Matrix(field, kept, nvars))
        return all(all(v[i] == 0 for i in range(k)) for v in kern)

    d = tau + 2
    for e in range(1, tau + 2):
        fail = False
        for others in itertools.combinations(range(1, tau + 1), e - 1):
            if not s0_survives({0, *others}):
                fail = True
                break
        if fail:
            d = e
            break
    c = tau + 2
    for length in range(1, tau + 2):
        if not s0_survives(set(range(length))):
            c = length
            break
    return ColumnMetrics(d, c)
