"""HTTP service exposing construction, validation, codec and simulation.

The FastAPI app wraps the core package; every CLI subcommand is a thin
client of one of these endpoints.  Payloads mirror the canonical CodeSpec
JSON schema: field elements travel as lowercase hex strings.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field

from . import __version__
from .audit import AuditError, check_all
from .codespec import TAG_REPETITION, CodeSpec, ParamError, ParamSet
from .codec import CodecError, make_decoder, make_encoder
from .constructions import ConstructionError, construct
from .channels import ChannelError
from .fields import FieldError
from .linalg import LinAlgError
from .simulate import SweepConfig, regime_map, regime_map_csv, results_csv, run_sweep

_USER_ERRORS = (
    AuditError,
    ChannelError,
    CodecError,
    ConstructionError,
    FieldError,
    LinAlgError,
    ParamError,
    ValueError,
    KeyError,
)


class ConstructRequest(BaseModel):
    a: int
    b: int
    tau: int
    construction: Literal["A", "B", "C", "D", "MDS", "REP"]
    seed: int = 0
    max_retries: int = 1000


class ConstructResponse(BaseModel):
    spec: dict


class ValidateRequest(BaseModel):
    spec: dict
    oracle: bool = True


class ValidateResponse(BaseModel):
    ok: bool
    b1_ok: bool
    b2_ok: bool
    r1_ok: bool
    r2_ok: bool
    oracle_ok: bool
    counterexamples: dict
    conditions_vs_oracle_divergence: bool


class EncodeRequest(BaseModel):
    spec: dict
    messages: list[list[str]]
    flush: bool = True


class EncodeResponse(BaseModel):
    packets: list[list[str]]


class DecodeRequest(BaseModel):
    spec: dict
    # One entry per time slot; null marks an erased slot.
    packets: list[Optional[list[str]]]


class DeliveryModel(BaseModel):
    time: int
    component: int
    value: str


class DecodeResponse(BaseModel):
    messages: list[list[Optional[str]]]
    recovered: list[DeliveryModel]
    losses: list[list[int]]
    lost_packets: int


class SimulateRequest(BaseModel):
    codes: list[dict]
    channel: dict
    eps_values: list[float]
    trials: int = Field(default=100_000, ge=1)
    seed: int = 0
    warmup: Optional[int] = None
    workers: int = 1


class SimulateRow(BaseModel):
    code: str
    construction: str
    eps: float
    trials: int
    lost: int
    total: int
    loss_prob: float
    seed: int
    spec_digest: str
    wall_time: float


class SimulateResponse(BaseModel):
    rows: list[SimulateRow]
    csv: str


class RegimeMapResponse(BaseModel):
    rows: list[dict]
    csv: str


_TAG_BY_NAME = {"A": "A", "B": "B", "C": "C", "D": "D", "MDS": "MDS_BASELINE", "REP": "REPETITION_BASELINE"}

app = FastAPI(title="streamfec", version=__version__)


def _bad_request(e: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(e))


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/construct", response_model=ConstructResponse)
def construct_endpoint(req: ConstructRequest) -> ConstructResponse:
    try:
        p = ParamSet(req.a, req.b, req.tau)
        spec = construct(_TAG_BY_NAME[req.construction], p, seed=req.seed, max_retries=req.max_retries)
    except _USER_ERRORS as e:
        raise _bad_request(e)
    return ConstructResponse(spec=spec.to_dict())


@app.post("/validate", response_model=ValidateResponse)
def validate_endpoint(req: ValidateRequest) -> ValidateResponse:
    try:
        spec = CodeSpec.from_dict(req.spec)
        report = check_all(spec, run_oracle=req.oracle)
    except _USER_ERRORS as e:
        raise _bad_request(e)
    return ValidateResponse(**report.to_dict())


def _parse_symbols(spec: CodeSpec, rows: list[list[str]], width: int) -> list[list[int]]:
    out = []
    for row in rows:
        if len(row) != width:
            raise ValueError(f"expected {width} symbols per packet, got {len(row)}")
        vals = [int(v, 16) for v in row]
        for v in vals:
            spec.field.check_element(v)
        out.append(vals)
    return out


@app.post("/encode", response_model=EncodeResponse)
def encode_endpoint(req: EncodeRequest) -> EncodeResponse:
    try:
        spec = CodeSpec.from_dict(req.spec)
        msgs = _parse_symbols(spec, req.messages, spec.k)
        enc = make_encoder(spec)
        packets = [enc.step(s) for s in msgs]
        if req.flush:
            packets += [enc.step([0] * spec.k) for _ in range(enc.flush_slots)]
    except _USER_ERRORS as e:
        raise _bad_request(e)
    return EncodeResponse(packets=[[f"0x{v:x}" for v in pkt] for pkt in packets])


@app.post("/decode", response_model=DecodeResponse)
def decode_endpoint(req: DecodeRequest) -> DecodeResponse:
    try:
        spec = CodeSpec.from_dict(req.spec)
        dec = make_decoder(spec)
        k = spec.k
        deliveries: list[tuple[int, int, int]] = []
        losses: list[tuple[int, int]] = []
        messages: list[list[Optional[int]]] = []
        for slot in req.packets:
            if slot is None:
                messages.append([None] * k)
                d, l = dec.step(None)
            else:
                vals = _parse_symbols(spec, [slot], spec.n)[0]
                messages.append(vals[:k])
                d, l = dec.step(vals)
            deliveries += d
            losses += l
        for _ in range(spec.params.tau + 1):
            d, l = dec.tick()
            deliveries += d
            losses += l
        for tm, comp, val in deliveries:
            if tm < len(messages):
                messages[tm][comp] = val
    except _USER_ERRORS as e:
        raise _bad_request(e)
    return DecodeResponse(
        messages=[[None if v is None else f"0x{v:x}" for v in row] for row in messages],
        recovered=[DeliveryModel(time=tm, component=c, value=f"0x{v:x}") for tm, c, v in deliveries],
        losses=[[tm, c] for tm, c in losses],
        lost_packets=dec.lost_packets,
    )


@app.post("/simulate", response_model=SimulateResponse)
def simulate_endpoint(req: SimulateRequest) -> SimulateResponse:
    try:
        cfg = SweepConfig.from_dict(req.model_dump())
        results = run_sweep(cfg)
    except _USER_ERRORS as e:
        raise _bad_request(e)
    rows = [
        SimulateRow(
            code=r.label,
            construction=r.tag,
            eps=r.eps,
            trials=r.trials,
            lost=r.lost,
            total=r.total,
            loss_prob=r.loss_prob,
            seed=r.seed,
            spec_digest=r.spec_digest,
            wall_time=r.wall_time,
        )
        for r in results
    ]
    return SimulateResponse(rows=rows, csv=results_csv(results))


@app.get("/regime-map", response_model=RegimeMapResponse)
def regime_map_endpoint(tau_max: int = Query(ge=1, le=64)) -> RegimeMapResponse:
    rows = regime_map(tau_max)
    return RegimeMapResponse(rows=rows, csv=regime_map_csv(rows))
