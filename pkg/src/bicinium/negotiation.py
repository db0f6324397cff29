"""Pair utility and the bilateral negotiation over all candidate pairs.

Each agent's network rates every gamut note with an activation in [0,1].
The joint utility of a candidate pair is

    (act1[T1] * act2[T2] + w * cm(prev, pair)) * match(pair)

where cm rewards contrary motion (larger for smaller interval change) and
match zeroes out anything the rulebook rejects.  Negotiation is an
exhaustive exchange: every one of the 13x13 combinations is scored and
the maximal legal pair wins, ties broken toward lower voice-1 index, then
lower voice-2 index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gamut import GAMUT, Motion, NotePair, motion, signed_interval
from .rules import DuetState, check_pair

__all__ = ["UtilityWeights", "Agreement", "DeadEnd", "COIN_VALUES",
           "contrary_motion_bonus", "system_utility", "negotiate"]

COIN_VALUES = (0.5, 1.49)


@dataclass(frozen=True)
class UtilityWeights:
    """Contrary-motion weighting: fixed, or redrawn per step from COIN_VALUES."""

    cm_weight: float = 1.0
    mode: str = "deterministic"  # "deterministic" | "coin_toss"

    def __post_init__(self):
        if self.mode not in ("deterministic", "coin_toss"):
            raise ValueError(f"unknown utility mode {self.mode!r}")
        if self.cm_weight <= 0:
            raise ValueError("cm_weight must be positive")


@dataclass(frozen=True)
class Agreement:
    pair: NotePair
    utility: float


@dataclass(frozen=True)
class DeadEnd:
    step: int


def contrary_motion_bonus(prev: NotePair, cur: NotePair) -> float:
    """1/|interval change| when the motion is not similar, else 0.

    The interval change is measured on directed intervals, so a voice
    crossing registers as a large change.  An unchanged interval earns
    nothing: the formula is undefined there and repeating the interval is
    not contrary motion worth rewarding.
    """
    if motion(prev, cur) is Motion.SIMILAR:
        return 0.0
    delta = abs(signed_interval(prev) - signed_interval(cur))
    return 1.0 / delta if delta else 0.0


def _as_activations(act) -> np.ndarray:
    act = np.asarray(act, dtype=float)
    if act.shape != (13,):
        raise ValueError(f"activation vector must have shape (13,), got {act.shape}")
    if not np.all(np.isfinite(act)) or np.any(act < 0):
        raise ValueError("activations must be finite and non-negative")
    return act


def system_utility(state: DuetState, pair: NotePair, act1, act2,
                   cm_weight: float = 1.0) -> float:
    """Joint utility of a candidate pair; exactly 0 for illegal pairs."""
    if not check_pair(state, pair).legal:
        return 0.0
    act1 = _as_activations(act1)
    act2 = _as_activations(act2)
    score = float(act1[pair[0].index] * act2[pair[1].index])
    if state.history:
        score += cm_weight * contrary_motion_bonus(state.history[-1], pair)
    return score


def negotiate(state: DuetState, act1, act2,
              cm_weight: float = 1.0) -> Agreement | DeadEnd:
    """Exhaustive scan of all 169 pairs for the legal utility maximum.

    The scan runs voice-1 index ascending then voice-2 index ascending and
    replaces the incumbent only on strict improvement, so the first pair
    reaching the maximal utility wins ties.
    """
    act1 = _as_activations(act1)
    act2 = _as_activations(act2)
    prev = state.history[-1] if state.history else None
    best: NotePair | None = None
    best_utility = -1.0
    for a in GAMUT:
        for b in GAMUT:
            if not check_pair(state, (a, b)).legal:
                continue
            score = float(act1[a.index] * act2[b.index])
            if prev is not None:
                score += cm_weight * contrary_motion_bonus(prev, (a, b))
            if score > best_utility:
                best = (a, b)
                best_utility = score
    if best is None:
        return DeadEnd(step=state.position)
    return Agreement(pair=best, utility=best_utility)
