"""The four parity-check constructions plus the two baseline codes.

Every code here is an [n, k] block code with n = tau+delta+1 and
k = tau-a+1, so its rate meets the sliding-window capacity bound with
equality; diagonally embedding it yields the streaming code.  The
parity-check matrix H is b x n with b = n-k = a+delta.

Field sizes are the smallest powers of two meeting each construction's
bound: q >= tau+1 for A (total order q^2 unless delta=1) and B,
q >= a*(n/b) for C, q >= tau+2 for D.
"""

from __future__ import annotations

from .audit import conditions_hold_matrix
from .codespec import (
    TAG_A,
    TAG_B,
    TAG_C,
    TAG_D,
    TAG_MDS,
    TAG_REPETITION,
    CodeSpec,
    ParamError,
    ParamSet,
)
from .fields import make_field, make_quadratic_extension, smallest_pow2_field
from .linalg import Matrix, cauchy_like, mds_codeword_with_zeros, mds_generator, zb_generator
from .rng import SplitMix64


class ConstructionError(ValueError):
    pass


def in_regime_a(p: ParamSet) -> bool:
    return True


def in_regime_b(p: ParamSet) -> bool:
    return p.tau + 1 >= p.b + p.delta and p.delta >= p.a


def in_regime_c(p: ParamSet) -> bool:
    return p.b % p.a == 0 and (p.tau - p.a + 1) % p.b == 0


def in_regime_d(p: ParamSet) -> bool:
    # delta = a-1 >= 1 and tau+1 = b + delta + gamma*b for an integer gamma >= 0.
    slack = p.tau + 1 - p.b - p.delta
    return p.a >= 2 and p.delta == p.a - 1 and slack >= 0 and slack % p.b == 0


def construct_a(p: ParamSet, seed: int = 0, max_retries: int = 1000) -> CodeSpec:
    """Randomized-search construction covering every parameter set.

    The matrix shape is fixed: an MDS block [I_a C] over the subfield in
    the bottom rows, alpha*I_delta in the top-left corner with alpha
    outside the subfield, a lone 1 at (delta, tau+delta), and
    (tau+1-b)*delta free entries drawn from the subfield.  Free entries
    are sampled from a seeded stream until the full condition check
    passes; a valid assignment always exists at these field sizes.
    """
    delta = p.delta
    if delta == 0:
        # b = a: the plain MDS code already meets every requirement.
        return construct_mds_code(p.tau + 1, p.k)
    base = smallest_pow2_field(p.tau + 1)
    if delta == 1:
        fld = base
        alpha = 1
    else:
        fld = make_quadratic_extension(base)
        alpha = fld.alpha
    n, b, a, tau = p.n, p.b, p.a, p.tau

    mds_block = mds_generator(tau + 1, a, base)  # [I_a C], entries stay subfield ints
    free_positions = [(i, j) for i in range(delta) for j in range(b + i, tau + i + 1)]

    rng = SplitMix64(seed)
    qbits = base.degree
    for _ in range(max_retries):
        h = Matrix.zeros(fld, b, n)
        for r in range(a):
            h.data[delta + r][0 : tau + 1] = mds_block.data[r]
        for i in range(delta):
            h.data[i][i] = alpha
        for i, j in free_positions:
            h.data[i][j] = rng.randbits(qbits)
        h.data[delta][tau + delta] = 1
        if conditions_hold_matrix(h, p):
            return CodeSpec(params=p, field=fld, tag=TAG_A, h=h, seed=seed)
    raise ConstructionError(
        f"no valid assignment found in {max_retries} attempts for {p} (seed {seed})"
    )


def construct_b(p: ParamSet) -> CodeSpec:
    """Deterministic construction for delta >= a and tau+1 >= b+delta."""
    if not in_regime_b(p):
        raise ConstructionError(f"construction B needs delta >= a and tau+1 >= b+delta, got {p}")
    fld = smallest_pow2_field(p.tau + 1)
    n, b, a, tau, delta = p.n, p.b, p.a, p.tau, p.delta

    h = Matrix.zeros(fld, b, n)
    # Step a: the first tau+1 columns form a zero-band generator of a [tau+1, b] MDS code.
    zb = zb_generator(tau + 1, b, fld)
    for r in range(b):
        h.data[r][0 : tau + 1] = zb.data[r]
    # Step b: replicate the (a..delta) x (a..delta) block into the last delta-a+1 columns.
    for r in range(a, delta + 1):
        for c in range(a, delta + 1):
            h.data[r][tau + c] = h.data[r][c]
    # Step c: unit entries linking rows b-j to columns tau+j.
    for j in range(1, a):
        h.data[b - j][tau + j] = 1
    # Step d: overwrite the bottom-left a x b corner with a Cauchy-like block.
    corner = cauchy_like(a, b, fld)
    for r in range(a):
        h.data[delta + r][0:b] = corner.data[r]
    return CodeSpec(params=p, field=fld, tag=TAG_B, h=h)


def construct_c(p: ParamSet) -> CodeSpec:
    """Interleaved-MDS construction for a | b | (tau - a + 1).

    b/a staggered copies of an [a*(n/b), a] MDS generator tile H so that
    any b consecutive columns hit each copy in exactly one full block.
    """
    if not in_regime_c(p):
        raise ConstructionError(f"construction C needs a | b | (tau-a+1), got {p}")
    n, b, a = p.n, p.b, p.a
    alpha_c = b // a
    beta_c = n // b
    fld = smallest_pow2_field(a * beta_c)

    gen = mds_generator(a * beta_c, a, fld)  # [I_a | Cauchy]
    # Reorder blocks so the identity block comes last: [C_0 .. C_{beta-2} I_a].
    blocks = [[row[a + j * a : a + (j + 1) * a] for row in gen.data] for j in range(beta_c - 1)]
    blocks.append([[1 if c == r else 0 for c in range(a)] for r in range(a)])

    h = Matrix.zeros(fld, b, n)
    for i in range(alpha_c):
        for j in range(beta_c):
            col0 = j * b + i * a
            for r in range(a):
                h.data[i * a + r][col0 : col0 + a] = blocks[j][r]
    return CodeSpec(params=p, field=fld, tag=TAG_C, h=h, c_ratios=(alpha_c, beta_c))


def construct_d(p: ParamSet) -> CodeSpec:
    """Construction for b = 2a-1 and tau+1 = b + delta + gamma*b."""
    if not in_regime_d(p):
        raise ConstructionError(
            f"construction D needs a >= 2, delta = a-1 and b | (tau+1-b-delta), got {p}"
        )
    n, b, a, tau, delta = p.n, p.b, p.a, p.tau, p.delta
    gamma = (tau + 1 - b - delta) // b
    fld = smallest_pow2_field(p.tau + 2)

    gen = mds_generator(b + delta, b, fld)
    h = Matrix.zeros(fld, b, n)
    # Step a: rows 0..delta are codewords of a [b+delta, b] MDS code with
    # prescribed zero runs of length b-1.
    for i in range(delta):
        word = mds_codeword_with_zeros(gen, list(range(i + 1, i + b)))
        h.data[i][0 : b + delta] = word
    word = mds_codeword_with_zeros(gen, list(range(0, b - 1)))
    h.data[delta][0 : b + delta] = word
    # Step b: replicate columns delta..b+delta-1 of those rows gamma times.
    for i in range(1, gamma + 1):
        dst = b + delta + (i - 1) * b
        for r in range(delta + 1):
            h.data[r][dst : dst + b] = h.data[r][delta : b + delta]
    # Step c: fill every remaining zero of row delta on columns delta..tau with 1.
    for j in range(delta, tau + 1):
        if h.data[delta][j] == 0:
            h.data[delta][j] = 1
    # Step d: bottom a rows on columns delta..tau become a Cauchy-like block
    # whose first row is exactly the (now all-nonzero) row delta; column
    # scaling of a canonical instance keeps every square submatrix nonsingular.
    width = tau + 1 - delta
    canon = cauchy_like(a, width, fld)
    scales = [fld.div(h.data[delta][delta + j], canon.data[0][j]) for j in range(width)]
    block = cauchy_like(a, width, fld, col_scales=scales)
    for r in range(a):
        h.data[delta + r][delta : tau + 1] = block.data[r]
    for i in range(1, delta + 1):
        h.data[delta + i][tau + i] = 1
    return CodeSpec(params=p, field=fld, tag=TAG_D, h=h, gamma=gamma)


def construct_mds_code(n: int, k: int) -> CodeSpec:
    """Diagonally embedded [n, k] MDS code: H = [Cauchy | I], any n-k columns independent.

    Channel semantics a = b = n-k with delay tau = n-1.
    """
    if not 1 <= k < n:
        raise ConstructionError(f"need 1 <= k < n, got [{n}, {k}]")
    fld = smallest_pow2_field(n)
    r = n - k
    cau = cauchy_like(r, k, fld)
    h = Matrix(fld, [cau.data[i] + [1 if j == i else 0 for j in range(r)] for i in range(r)], n)
    return CodeSpec(params=ParamSet(r, r, n - 1), field=fld, tag=TAG_MDS, h=h)


def construct_repetition_code(tau: int) -> CodeSpec:
    """Rate-1/2 delayed repetition: x(t) = [s(t); s(t-tau)].

    Corrects every burst of length <= tau (and any lone erasure) with
    delay exactly tau over GF(2); applied directly by the stream codec.
    """
    if tau < 1:
        raise ConstructionError("repetition code needs tau >= 1")
    return CodeSpec(params=ParamSet(1, tau, tau), field=make_field(1), tag=TAG_REPETITION, h=None)


def construct(tag: str, p: ParamSet, seed: int = 0, max_retries: int = 1000) -> CodeSpec:
    """Dispatch by construction tag; MDS derives [tau+1, tau-a+1] from the params."""
    if tag == TAG_A:
        return construct_a(p, seed=seed, max_retries=max_retries)
    if tag == TAG_B:
        return construct_b(p)
    if tag == TAG_C:
        return construct_c(p)
    if tag == TAG_D:
        return construct_d(p)
    if tag == TAG_MDS:
        if p.a != p.b:
            raise ConstructionError("MDS baseline needs a = b (delta = 0)")
        return construct_mds_code(p.tau + 1, p.k)
    if tag == TAG_REPETITION:
        if p.b != p.tau:
            raise ConstructionError("repetition baseline needs b = tau")
        return construct_repetition_code(p.tau)
    raise ConstructionError(f"unknown construction {tag!r}")
