"""Exact arithmetic in GF(2^m) and in quadratic extensions GF(q^2)/GF(q).

Plain binary fields store elements as int bitmasks whose binary digits are
polynomial coefficients over GF(2), reduced modulo a fixed irreducible
polynomial.  One polynomial is pinned per degree so that serialized code
specs are bit-identical everywhere:

    m=1 : x + 1                     0x3
    m=2 : x^2 + x + 1               0x7
    m=3 : x^3 + x + 1               0xb
    m=4 : x^4 + x + 1               0x13
    m=5 : x^5 + x^2 + 1             0x25
    m=6 : x^6 + x + 1               0x43
    m=7 : x^7 + x + 1               0x83
    m=8 : x^8 + x^4 + x^3 + x^2 + 1 0x11d
    m=9..16 : see _IRREDUCIBLE below

A quadratic extension GF(q^2) is represented as pairs over the base field,
base[x] / (x^2 + x + c), packed into a single int ``lo | (hi << m)`` where
``lo + hi*x`` is the element.  The constant c is the smallest base element
making x^2 + x + c irreducible.  With this packing the embedding of the
base field is the identity map, addition is XOR for every field, and the
subfield test is just ``hi == 0``.

Multiplication uses log/antilog tables in the base fields; fields of order
at most 512 additionally carry a full multiplication table for tight loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

_IRREDUCIBLE = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

MAX_DEGREE = 16

# Full multiplication tables are built for fields up to this order.
_TABLE_ORDER_LIMIT = 512


def _clmul_mod(a: int, b: int, poly: int, m: int) -> int:
    """Carry-less multiply of two degree-<m bitmasks, reduced mod poly."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> m & 1:
            a ^= poly
    return acc


def _poly_reduce(v: int, poly: int, m: int) -> int:
    """Reduce a bitmask polynomial modulo a degree-m polynomial."""
    while v.bit_length() > m:
        v ^= poly << (v.bit_length() - m - 1)
    return v


def poly_is_irreducible(poly: int, m: int) -> bool:
    """Rabin test for a degree-m polynomial over GF(2) given as a bitmask."""
    if poly >> m != 1:
        return False

    def xpow2k(k: int) -> int:
        # x^(2^k) mod poly, by repeated squaring of x.
        v = _poly_reduce(0b10, poly, m)
        for _ in range(k):
            v = _clmul_mod(v, v, poly, m)
        return v

    def gcd(x: int, y: int) -> int:
        while y:
            while x.bit_length() >= y.bit_length() and x:
                x ^= y << (x.bit_length() - y.bit_length())
            x, y = y, x
        return x

    x = _poly_reduce(0b10, poly, m)
    if xpow2k(m) != x:
        return False
    for d in range(2, m + 1):
        if m % d == 0 and _is_prime(d):
            if gcd(xpow2k(m // d) ^ x, poly) != 1:
                return False
    return True


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for i in range(2, int(n ** 0.5) + 1):
        if n % i == 0:
            return False
    return True


class FieldError(ValueError):
    """Bad field parameters or mismatched operands."""


class BinaryField:
    """GF(2^m) with log/antilog multiplication.

    Elements are the ints 0 .. order-1.  Instances are immutable and
    shared via :func:`make_field`; all operations are pure.
    """

    is_tower = False

    def __init__(self, degree: int, poly: int | None = None):
        if not 1 <= degree <= MAX_DEGREE:
            raise FieldError(f"degree must be in [1, {MAX_DEGREE}], got {degree}")
        self.degree = degree
        self.poly = _IRREDUCIBLE[degree] if poly is None else poly
        if self.poly >> degree != 1 or not poly_is_irreducible(self.poly, degree):
            raise FieldError(f"0x{self.poly:x} is not an irreducible degree-{degree} polynomial")
        self.order = 1 << degree
        self.bits = degree
        self.base = None

        q = self.order
        exp = [0] * (2 * q)
        log = [0] * q
        v = 1
        gen = _poly_reduce(0b10, self.poly, degree)
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = _clmul_mod(v, gen, self.poly, degree)
        if v != 1:
            raise FieldError(f"x is not primitive modulo 0x{self.poly:x}")
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        if len(set(exp[: q - 1])) != q - 1:
            raise FieldError(f"x is not primitive modulo 0x{self.poly:x}")
        self._exp = exp
        self._log = log
        self.mul_table = None
        if q <= _TABLE_ORDER_LIMIT:
            self.mul_table = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]

    def _mul_raw(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return self.mul_table[a][b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[self.order - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        lg = self._log[a] * e % (self.order - 1)
        return self._exp[lg]

    def elements(self):
        return range(self.order)

    def check_element(self, a: int) -> None:
        if not 0 <= a < self.order:
            raise FieldError(f"{a} is not an element of {self!r}")

    def to_dict(self) -> dict:
        return {"degree": self.degree, "poly": f"0x{self.poly:x}"}

    def __repr__(self) -> str:
        return f"GF(2^{self.degree})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryField)
            and not other.is_tower
            and other.degree == self.degree
            and other.poly == self.poly
        )

    def __hash__(self) -> int:
        return hash(("BinaryField", self.degree, self.poly))


class TowerField:
    """GF(q^2) built as base[x]/(x^2+x+c) over a plain base field.

    Packed elements: value = lo | (hi << base.degree), meaning lo + hi*x.
    ``alpha`` is the class of x, which never lies in the embedded base.
    """

    is_tower = True

    def __init__(self, base: BinaryField):
        if base.is_tower:
            raise FieldError("tower base must be a plain GF(2^m)")
        self.base = base
        m = base.degree
        # c is the smallest base element outside the image of t -> t^2 + t,
        # which is exactly the set of c making x^2 + x + c irreducible.
        image = {base.add(base.mul(t, t), t) for t in base.elements()}
        self.c = next(c for c in base.elements() if c not in image)
        self.degree = 2 * m
        self.bits = 2 * m
        self.poly = base.poly
        self.order = base.order ** 2
        self.alpha = 1 << m
        self._shift = m
        self._lomask = base.order - 1
        self.mul_table = None
        if self.order <= _TABLE_ORDER_LIMIT:
            self.mul_table = [[self._mul_raw(a, b) for b in range(self.order)] for a in range(self.order)]

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    def _mul_raw(self, a: int, b: int) -> int:
        # (a0+a1 x)(b0+b1 x) with x^2 = x + c.
        base = self.base
        sh, lo = self._shift, self._lomask
        a0, a1 = a & lo, a >> sh
        b0, b1 = b & lo, b >> sh
        m = base.mul
        t = m(a1, b1)
        r0 = m(a0, b0) ^ m(t, self.c)
        r1 = m(a0, b1) ^ m(a1, b0) ^ t
        return r0 | (r1 << sh)

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return self.mul_table[a][b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        base = self.base
        sh, lo = self._shift, self._lomask
        a0, a1 = a & lo, a >> sh
        # Conjugate a0 + a1*(x+1); norm = a*conj lies in the base field.
        norm = base.mul(a0, a0) ^ base.mul(a0, a1) ^ base.mul(base.mul(a1, a1), self.c)
        ninv = base.inv(norm)
        c0 = base.mul(a0 ^ a1, ninv)
        c1 = base.mul(a1, ninv)
        return c0 | (c1 << sh)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def elements(self):
        return range(self.order)

    def check_element(self, a: int) -> None:
        if not 0 <= a < self.order:
            raise FieldError(f"{a} is not an element of {self!r}")

    def embed(self, a: int) -> int:
        """Embedding of the base field (identity on the packed value)."""
        self.base.check_element(a)
        return a

    def in_subfield(self, a: int) -> bool:
        return a >> self._shift == 0

    def to_dict(self) -> dict:
        return {
            "degree": self.base.degree,
            "poly": f"0x{self.base.poly:x}",
            "tower": {"c": f"0x{self.c:x}"},
        }

    def __repr__(self) -> str:
        return f"GF(2^{self.base.degree})^2"

    def __eq__(self, other) -> bool:
        return isinstance(other, TowerField) and other.base == self.base and other.c == self.c

    def __hash__(self) -> int:
        return hash(("TowerField", self.base, self.c))


Field = BinaryField | TowerField


@lru_cache(maxsize=None)
def make_field(m: int) -> BinaryField:
    """GF(2^m) with the fixed default reduction polynomial, 1 <= m <= 16."""
    return BinaryField(m)


@lru_cache(maxsize=None)
def _tower_of(base: BinaryField) -> TowerField:
    return TowerField(base)


def make_quadratic_extension(base: BinaryField) -> TowerField:
    """GF(q^2) over GF(q) = base, as base[x]/(x^2+x+c) with c found by search."""
    return _tower_of(base)


def is_in_subfield(e: "FieldElement", sub: Field) -> bool:
    """True iff e lies in the embedded copy of ``sub`` inside its own field."""
    f = e.field
    if f == sub:
        return True
    if f.is_tower and f.base == sub:
        return f.in_subfield(e.value)
    raise FieldError(f"{sub!r} is not a subfield of {f!r}")


def field_from_dict(d: dict) -> Field:
    base = make_field(int(d["degree"]))
    if int(d["poly"], 16) != base.poly:
        raise FieldError(f"unsupported reduction polynomial {d['poly']}")
    if "tower" in d and d["tower"] is not None:
        tower = make_quadratic_extension(base)
        if int(d["tower"]["c"], 16) != tower.c:
            raise FieldError(f"unexpected tower constant {d['tower']['c']}")
        return tower
    return base


def smallest_pow2_field(minimum_order: int) -> BinaryField:
    """GF(2^m) with the least order that is >= minimum_order."""
    m = max(1, (minimum_order - 1).bit_length())
    return make_field(m)


@dataclass(frozen=True)
class FieldElement:
    """A field element paired with its field, with operator sugar.

    Hot paths work on raw ints via the field methods; this wrapper is the
    convenient user-facing form and enforces that operands share a field.
    """

    field: Field
    value: int

    def __post_init__(self):
        self.field.check_element(self.value)

    def _coerce(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldError("operands belong to different fields")
        return other.value

    def __add__(self, other):
        return FieldElement(self.field, self.value ^ self._coerce(other))

    __sub__ = __add__

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0
