"""Channel/delay parameter sets and the CodeSpec exchange object.

A ``ParamSet`` is the tuple {a, b, tau} of the delay-constrained
sliding-window channel with window width fixed at tau+1: every window
holds either a burst of at most b erasures or at most a scattered ones,
and each packet must be decoded within tau slots.  Callers with a wider
window must reduce tau to w-1 themselves before constructing a ParamSet.

A ``CodeSpec`` bundles the parameters, the finite field and the b x n
parity-check matrix produced by one of the constructions; it serializes
to a canonical JSON document that is byte-identical across platforms.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .fields import Field, field_from_dict
from .linalg import Matrix, rank

TAG_A = "A"
TAG_B = "B"
TAG_C = "C"
TAG_D = "D"
TAG_MDS = "MDS_BASELINE"
TAG_REPETITION = "REPETITION_BASELINE"

ALL_TAGS = (TAG_A, TAG_B, TAG_C, TAG_D, TAG_MDS, TAG_REPETITION)

SCHEMA = "streamfec-codespec-v1"


class ParamError(ValueError):
    pass


@dataclass(frozen=True)
class ParamSet:
    """The {a, b, tau} tuple, with w fixed to tau+1."""

    a: int
    b: int
    tau: int

    def __post_init__(self):
        if not 1 <= self.a <= self.b <= self.tau:
            raise ParamError(f"need 1 <= a <= b <= tau, got {{a={self.a}, b={self.b}, tau={self.tau}}}")

    @property
    def delta(self) -> int:
        return self.b - self.a

    @property
    def n(self) -> int:
        return self.tau + self.delta + 1

    @property
    def k(self) -> int:
        return self.tau - self.a + 1

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "tau": self.tau}

    @classmethod
    def from_dict(cls, d: dict) -> "ParamSet":
        return cls(int(d["a"]), int(d["b"]), int(d["tau"]))


@dataclass
class CodeSpec:
    """A constructed code: parameters, field and parity-check matrix.

    ``h`` is None only for the repetition baseline, whose stream rule
    x(t) = [s(t); s(t - tau)] is applied directly by the codec.
    ``c_ratios`` holds (b/a, n/b) for Construction C; ``gamma`` holds the
    replication count for Construction D.
    """

    params: ParamSet
    field: Field
    tag: str
    h: Matrix | None
    seed: int | None = None
    c_ratios: tuple[int, int] | None = None
    gamma: int | None = None
    _digest: str | None = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.tag not in ALL_TAGS:
            raise ParamError(f"unknown construction tag {self.tag!r}")
        if self.tag == TAG_REPETITION:
            if self.h is not None:
                raise ParamError("repetition baseline carries no parity-check matrix")
            return
        p = self.params
        if self.h is None:
            raise ParamError("parity-check matrix required")
        if (self.h.rows, self.h.cols) != (p.b, p.n):
            raise ParamError(f"H must be {p.b}x{p.n}, got {self.h.rows}x{self.h.cols}")
        if rank(self.h) != p.b:
            raise ParamError("parity-check matrix must have full row rank")

    @property
    def n(self) -> int:
        return 2 if self.tag == TAG_REPETITION else self.params.n

    @property
    def k(self) -> int:
        return 1 if self.tag == TAG_REPETITION else self.params.k

    def to_dict(self) -> dict:
        d = {
            "schema": SCHEMA,
            "tag": self.tag,
            "params": self.params.to_dict(),
            "field": self.field.to_dict(),
            "seed": self.seed,
            "H": None if self.h is None else [[f"0x{v:x}" for v in row] for row in self.h.data],
        }
        if self.c_ratios is not None:
            d["c_ratios"] = {"alpha": self.c_ratios[0], "beta": self.c_ratios[1]}
        if self.gamma is not None:
            d["gamma"] = self.gamma
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "CodeSpec":
        if d.get("schema", SCHEMA) != SCHEMA:
            raise ParamError(f"unsupported schema {d.get('schema')!r}")
        fld = field_from_dict(d["field"])
        h = d.get("H")
        matrix = None
        if h is not None:
            matrix = Matrix(fld, [[int(v, 16) for v in row] for row in h])
        ratios = d.get("c_ratios")
        return cls(
            params=ParamSet.from_dict(d["params"]),
            field=fld,
            tag=d["tag"],
            h=matrix,
            seed=d.get("seed"),
            c_ratios=(ratios["alpha"], ratios["beta"]) if ratios else None,
            gamma=d.get("gamma"),
        )

    @classmethod
    def from_json(cls, text: str) -> "CodeSpec":
        return cls.from_dict(json.loads(text))

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form (cached)."""
        if self._digest is None:
            self._digest = hashlib.sha256(self.to_json().encode()).hexdigest()
        return self._digest
