"""Erasure channel processes: Gilbert-Elliott, Fritchman, periodic, trace.

All channels are step functions returning True (erase) or False (pass) for
successive time slots.  The Markov channels follow an emit-then-transition
convention: the decision reflects the state at the start of the slot, and
the state then moves for the next slot.  In the good state two uniform
draws are consumed per step (erasure test, then transition test); in a bad
state the packet is lost with probability 1 and one draw is consumed.
This fixed draw discipline makes a Fritchman channel with one bad state
reproduce a Gilbert-Elliott sequence bit for bit at equal seeds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rng import SplitMix64


class ChannelError(ValueError):
    pass


def _check_prob(name: str, v: float) -> float:
    if not 0.0 <= v <= 1.0:
        raise ChannelError(f"{name} must lie in [0, 1], got {v}")
    return float(v)


@dataclass(frozen=True)
class GEConfig:
    """Gilbert-Elliott: good->bad prob alpha, bad->good prob beta,
    good-state erasure prob eps; bad state always erases."""

    alpha: float
    beta: float
    eps: float

    def __post_init__(self):
        _check_prob("alpha", self.alpha)
        _check_prob("beta", self.beta)
        _check_prob("eps", self.eps)


@dataclass(frozen=True)
class FritchmanConfig:
    """One good state plus a chain of bad_states bad states E_1..E_M.

    From E_l the channel advances (or exits back to good from E_M) with
    probability beta; bad_states = 1 reduces to Gilbert-Elliott.
    """

    alpha: float
    beta: float
    eps: float
    bad_states: int = 1

    def __post_init__(self):
        _check_prob("alpha", self.alpha)
        _check_prob("beta", self.beta)
        _check_prob("eps", self.eps)
        if self.bad_states < 1:
            raise ChannelError("bad_states must be >= 1")


class Fritchman:
    """Seeded Fritchman channel; ``level`` is 0 in the good state, else 1..M."""

    def __init__(self, config: FritchmanConfig, seed: int):
        self.config = config
        self.level = 0
        self._rng = SplitMix64(seed)

    def step(self) -> bool:
        cfg = self.config
        rng = self._rng
        if self.level == 0:
            erase = rng.random() < cfg.eps
            if rng.random() < cfg.alpha:
                self.level = 1
            return erase
        if rng.random() < cfg.beta:
            self.level = 0 if self.level == cfg.bad_states else self.level + 1
        return True


class GilbertElliott(Fritchman):
    def __init__(self, config: GEConfig, seed: int):
        super().__init__(FritchmanConfig(config.alpha, config.beta, config.eps, 1), seed)


class PeriodicErasure:
    """Erases the first ``burst`` slots of every ``period`` slots."""

    def __init__(self, period: int, burst: int):
        if period < 1 or not 0 <= burst <= period:
            raise ChannelError("need period >= 1 and 0 <= burst <= period")
        self.period = period
        self.burst = burst
        self._t = 0

    def step(self) -> bool:
        erase = self._t % self.period < self.burst
        self._t += 1
        return erase


class TracePlayback:
    """Erases exactly the listed slot indices."""

    def __init__(self, erased_slots):
        self._erased = frozenset(erased_slots)
        self._t = 0

    def step(self) -> bool:
        erase = self._t in self._erased
        self._t += 1
        return erase


def build_channel(config: dict, seed: int):
    """Instantiate a channel from its sweep-config dict form."""
    kind = config.get("type")
    if kind == "ge":
        return GilbertElliott(GEConfig(config["alpha"], config["beta"], config["eps"]), seed)
    if kind == "fritchman":
        return Fritchman(
            FritchmanConfig(config["alpha"], config["beta"], config["eps"], config.get("bad_states", 1)),
            seed,
        )
    if kind == "periodic":
        return PeriodicErasure(config["period"], config["burst"])
    if kind == "trace":
        return TracePlayback(config["erased_slots"])
    raise ChannelError(f"unknown channel type {config.get('type')!r}")
