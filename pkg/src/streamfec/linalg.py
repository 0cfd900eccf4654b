"""Dense exact linear algebra over a binary field or its quadratic extension.

Matrices store raw int field elements row-major; all routines are pure
functions built on Gaussian elimination.  Matrices here stay small (at most
a few dozen rows/columns), so simplicity and exactness beat asymptotics.

Also provides the structured matrices the code constructions need:
Cauchy-like matrices (every square submatrix nonsingular), systematic MDS
generators, zero-band (ZB) generators, and shortened parity-check matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field


class LinAlgError(ValueError):
    pass


class Matrix:
    """Row-major matrix of int field elements over a shared field."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: list[list[int]], cols: int | None = None):
        self.field = field
        self.data = data
        self.rows = len(data)
        if self.rows:
            self.cols = len(data[0])
            if any(len(r) != self.cols for r in data):
                raise LinAlgError("ragged rows")
        else:
            if cols is None:
                raise LinAlgError("empty matrix needs an explicit column count")
            self.cols = cols
        if self.cols <= 0:
            raise LinAlgError("column count must be positive")

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    def copy(self) -> "Matrix":
        return Matrix(self.field, [row[:] for row in self.data], self.cols)

    def col(self, j: int) -> list[int]:
        return [row[j] for row in self.data]

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        col_idx = list(col_idx)
        return Matrix(
            self.field,
            [[self.data[i][j] for j in col_idx] for i in row_idx],
            len(col_idx),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.cols == self.cols
            and other.data == self.data
        )

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"


def _eliminate(rows: list[list[int]], field: Field, ncols: int, reduced: bool = True):
    """In-place RREF (or REF when reduced=False); returns pivot column list."""
    mul, inv = field.mul, field.inv
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != 1:
            scale = inv(pv)
            for j in range(c, len(prow)):
                prow[j] = mul(prow[j], scale)
        targets = range(nrows) if reduced else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row = rows[i]
                for j in range(c, len(prow)):
                    if prow[j]:
                        row[j] ^= mul(f, prow[j])
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(m: Matrix) -> int:
    work = [row[:] for row in m.data]
    return len(_eliminate(work, m.field, m.cols, reduced=False))


def det(m: Matrix) -> int:
    """Determinant of a square matrix (sign-free in characteristic 2)."""
    if m.rows != m.cols:
        raise LinAlgError("determinant needs a square matrix")
    field = m.field
    mul = field.mul
    work = [row[:] for row in m.data]
    n = m.rows
    d = 1
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if work[i][c]), None)
        if pivot_row is None:
            return 0
        work[c], work[pivot_row] = work[pivot_row], work[c]
        pv = work[c][c]
        d = mul(d, pv)
        pinv = field.inv(pv)
        for i in range(c + 1, n):
            f = work[i][c]
            if f:
                f = mul(f, pinv)
                for j in range(c, n):
                    if work[c][j]:
                        work[i][j] ^= mul(f, work[c][j])
    return d


@dataclass
class SolveResult:
    """Outcome of solve(): one solution plus per-coordinate uniqueness.

    ``unique[j]`` is True iff x_j takes the same value in every solution,
    which is what an erasure decoder needs to assert before delivering a
    symbol (a merely consistent system is not enough).
    """

    consistent: bool
    solution: list[int] | None
    unique: list[bool]


def solve(a: Matrix, y: list[int]) -> SolveResult:
    if len(y) != a.rows:
        raise LinAlgError("right-hand side length mismatch")
    n = a.cols
    aug = [a.data[i][:] + [y[i]] for i in range(a.rows)]
    pivots = _eliminate(aug, a.field, n, reduced=True)
    pivot_set = set(pivots)
    for row in aug[len(pivots):]:
        if row[n]:
            return SolveResult(False, None, [False] * n)
    solution = [0] * n
    unique = [False] * n
    for r, c in enumerate(pivots):
        solution[c] = aug[r][n]
        unique[c] = all(aug[r][j] == 0 for j in range(n) if j != c and j not in pivot_set)
    return SolveResult(True, solution, unique)


class SpanBasis:
    """Incremental row-echelon basis for span-membership tests.

    Vectors are int lists; stored basis vectors are normalized with their
    leading nonzero at the pivot, kept in increasing pivot order, so a
    single forward pass fully reduces a new vector.
    """

    __slots__ = ("field", "pivots", "vecs")

    def __init__(self, field: Field):
        self.field = field
        self.pivots: list[int] = []
        self.vecs: list[list[int]] = []

    def reduce(self, vec: list[int]) -> list[int]:
        vec = vec[:]
        mul = self.field.mul
        for p, bv in zip(self.pivots, self.vecs):
            f = vec[p]
            if f:
                for j in range(p, len(vec)):
                    if bv[j]:
                        vec[j] ^= mul(f, bv[j])
        return vec

    def contains(self, vec: list[int]) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: list[int]) -> bool:
        """Insert a vector; returns False iff it was already in the span."""
        red = self.reduce(vec)
        pivot = next((j for j, v in enumerate(red) if v), None)
        if pivot is None:
            return False
        inv = self.field.inv(red[pivot])
        if inv != 1:
            mul = self.field.mul
            red = [mul(v, inv) if v else 0 for v in red]
        idx = next((i for i, p in enumerate(self.pivots) if p > pivot), len(self.pivots))
        self.pivots.insert(idx, pivot)
        self.vecs.insert(idx, red)
        return True

    def snapshot(self) -> tuple[list[int], list[list[int]]]:
        return self.pivots[:], self.vecs[:]

    def restore(self, snap) -> None:
        self.pivots, self.vecs = snap[0][:], snap[1][:]


def in_span(target: list[int], others: list[list[int]], field: Field) -> bool:
    """True iff target lies in the span of the given column vectors."""
    basis = SpanBasis(field)
    for v in others:
        basis.add(v)
    return basis.contains(target)


def kernel_basis(m: Matrix) -> list[list[int]]:
    """Basis of the right nullspace {v : M v = 0}."""
    work = [row[:] for row in m.data]
    pivots = _eliminate(work, m.field, m.cols, reduced=True)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = work[r][f]
        basis.append(v)
    return basis


def invert(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise LinAlgError("inverse needs a square matrix")
    n = m.rows
    aug = [m.data[i][:] + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    pivots = _eliminate(aug, m.field, n, reduced=True)
    if len(pivots) != n:
        raise LinAlgError("matrix is singular")
    return Matrix(m.field, [row[n:] for row in aug], n)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows or a.field != b.field:
        raise LinAlgError("dimension or field mismatch")
    mul = a.field.mul
    bt = list(zip(*b.data)) if b.rows else []
    out = []
    for arow in a.data:
        orow = []
        for bcol in bt:
            acc = 0
            for x, y in zip(arow, bcol):
                if x and y:
                    acc ^= mul(x, y)
            orow.append(acc)
        out.append(orow)
    return Matrix(a.field, out, b.cols)


def vec_mat(v: list[int], m: Matrix) -> list[int]:
    """Row vector times matrix."""
    mul = m.field.mul
    out = [0] * m.cols
    for x, row in zip(v, m.data):
        if x:
            for j, e in enumerate(row):
                if e:
                    out[j] ^= mul(x, e)
    return out


def cauchy_like(r: int, c: int, field: Field, col_scales: list[int] | None = None) -> Matrix:
    """r x c matrix 1/(x_i + y_j): every square submatrix is nonsingular.

    The ground points are the first r+c field elements in index order
    (x_i = i, y_j = r+j), so instances are reproducible byte-for-byte.
    Optional nonzero column scales preserve the Cauchy-like property.
    """
    if r + c > field.order:
        raise LinAlgError(f"field of order {field.order} too small for {r}x{c} Cauchy matrix")
    if col_scales is not None:
        if len(col_scales) != c or any(s == 0 for s in col_scales):
            raise LinAlgError("column scales must be a nonzero vector of length c")
    inv, mul = field.inv, field.mul
    data = []
    for i in range(r):
        row = [inv(i ^ (r + j)) for j in range(c)]
        if col_scales is not None:
            row = [mul(e, s) for e, s in zip(row, col_scales)]
        data.append(row)
    return Matrix(field, data, c)


def mds_generator(n: int, k: int, field: Field, systematic: bool = True) -> Matrix:
    """k x n generator of an [n, k] MDS code (any k columns independent)."""
    if not 1 <= k <= n:
        raise LinAlgError("need 1 <= k <= n")
    if systematic:
        if n > field.order:
            raise LinAlgError(f"systematic MDS generator needs field order >= n ({n})")
        if n == k:
            return Matrix.identity(field, k)
        cau = cauchy_like(k, n - k, field)
        return Matrix(field, [[1 if j == i else 0 for j in range(k)] + cau.data[i] for i in range(k)], n)
    return cauchy_like(k, n, field)


def mds_codeword_with_zeros(g: Matrix, zeros: list[int]) -> list[int]:
    """The codeword of an MDS code vanishing on k-1 prescribed coordinates.

    Unique up to scale; normalized so its first nonzero coordinate is 1.
    All remaining coordinates are forced nonzero by the minimum distance;
    a zero there means g did not generate an MDS code.
    """
    k = g.rows
    if len(set(zeros)) != k - 1:
        raise LinAlgError("need exactly k-1 distinct zero positions")
    if k == 1:
        u = [1]
    else:
        constraints = Matrix(g.field, [[g.data[i][z] for i in range(k)] for z in zeros], k)
        kern = kernel_basis(constraints)
        if len(kern) != 1:
            raise LinAlgError("zero constraints did not pin the codeword: base code is not MDS")
        u = kern[0]
    c = vec_mat(u, g)
    zset = set(zeros)
    for j, v in enumerate(c):
        if (v == 0) != (j in zset):
            raise LinAlgError("forced coordinate vanished: base code is not MDS")
    lead = next(j for j, v in enumerate(c) if v)
    scale = g.field.inv(c[lead])
    mul = g.field.mul
    return [mul(v, scale) if v else 0 for v in c]


def zb_generator(n: int, k: int, field: Field) -> Matrix:
    """Zero-band generator of an [n, k] MDS code.

    Row i carries the cyclic run of k-1 zeros on coordinates
    [i+1 : i+k-1] mod n and is nonzero everywhere else.
    """
    if n < k:
        raise LinAlgError("need n >= k")
    if n > field.order:
        raise LinAlgError(f"field of order {field.order} too small for [{n},{k}] ZB generator")
    g = mds_generator(n, k, field)
    data = []
    for i in range(k):
        zeros = [(i + j) % n for j in range(1, k)]
        data.append(mds_codeword_with_zeros(g, zeros))
    return Matrix(field, data, n)


def row_basis(m: Matrix) -> Matrix:
    """RREF row basis of the rowspace (zero rows dropped)."""
    work = [row[:] for row in m.data]
    pivots = _eliminate(work, m.field, m.cols, reduced=True)
    return Matrix(m.field, work[: len(pivots)], m.cols)


def shortened_pc(h: Matrix, keep_upto: int) -> Matrix:
    """Shortened parity-check matrix H^(l) for the code punctured to [0 : keep_upto].

    Rows form a basis of the rowspace vectors of H vanishing on the tail
    [keep_upto+1 : n-1], restricted to the kept coordinates.  The result
    may have zero rows.
    """
    if not 0 <= keep_upto < h.cols:
        raise LinAlgError("keep_upto out of range")
    tail = list(range(keep_upto + 1, h.cols))
    if not tail:
        return row_basis(h)
    tail_t = Matrix(h.field, [[h.data[i][j] for i in range(h.rows)] for j in tail], h.rows)
    coeffs = kernel_basis(tail_t)
    rows = [vec_mat(u, h)[: keep_upto + 1] for u in coeffs]
    return row_basis(Matrix(h.field, rows, keep_upto + 1))
