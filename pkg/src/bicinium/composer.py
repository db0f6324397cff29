"""The full composition loop: nets propose, agents negotiate, agreements
feed back as context.

Per step each agent maps its net output onto the 13-pitch gamut (or a
zero vector in agent-only mode), the negotiation picks the legal pair of
maximal utility, and each agent pushes the 19-code of its own agreed note
into its net state.  Dead ends stop the run; there is no backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gamut import GAMUT, NotePair, Pitch, pitch_from_name
from .negotiation import (
    COIN_VALUES,
    Agreement,
    DeadEnd,
    UtilityWeights,
    negotiate,
    system_utility,
)
from .rules import DuetState, legal_pairs
from .seqnet import SequentialNet, encode_note, forward, map_to_gamut, step_state

__all__ = ["CompositionConfig", "StepTrace", "CompositionResult",
           "draw_step_weight", "compose"]

_DEFAULT_START = (pitch_from_name("re8"), pitch_from_name("re8"))


def _feedback_code(note: Pitch, prev: Pitch | None) -> np.ndarray:
    # The rules cap simultaneous intervals, not melodic leaps, so an agreed
    # note can sit more than 8 steps from its predecessor; the 19-code has
    # no interval unit for that, so fall back to the bare pitch code.
    if prev is not None and abs(note.index - prev.index) > 8:
        return encode_note(note, None)
    return encode_note(note, prev)


@dataclass(frozen=True)
class CompositionConfig:
    length: int = 8
    plan1: tuple = (0.8, 0.0, 0.8, 0.0)
    plan2: tuple = (0.0, 1.0, 0.0, 1.0)
    weights: UtilityWeights = UtilityWeights()
    seed: int = 0
    start_pair: NotePair | None = _DEFAULT_START
    finalis: bool = True
    agent_only: bool = False

    def __post_init__(self):
        if self.length < 2:
            raise ValueError("length must be at least 2")


@dataclass(frozen=True)
class StepTrace:
    step: int
    weight: float
    pair: NotePair
    utility: float
    legal_count: int


@dataclass(frozen=True)
class CompositionResult:
    pairs: tuple[NotePair, ...]
    trace: tuple[StepTrace, ...]
    dead_end_step: int | None = None

    @property
    def complete(self) -> bool:
        return self.dead_end_step is None

    @property
    def voices(self) -> tuple[tuple[Pitch, ...], tuple[Pitch, ...]]:
        return (tuple(p[0] for p in self.pairs),
                tuple(p[1] for p in self.pairs))


def draw_step_weight(rng: np.random.Generator,
                     weights: UtilityWeights) -> float:
    """Fair-coin draw of the contrary-motion weight for one step."""
    if weights.mode != "coin_toss":
        raise ValueError("draw_step_weight requires coin_toss mode")
    return COIN_VALUES[int(rng.integers(2))]


def compose(net1: SequentialNet | None, net2: SequentialNet | None,
            cfg: CompositionConfig) -> CompositionResult:
    """Run the negotiation loop for cfg.length steps.

    In agent-only mode both activation vectors are zero and the nets may
    be None; otherwise each agent runs its own net and feeds back the
    encoded note of every agreement.  Output is fully determined by
    (nets, cfg): the only randomness is the seeded coin toss.
    """
    if not cfg.agent_only and (net1 is None or net2 is None):
        raise ValueError("both nets are required unless agent_only is set")
    rng = np.random.default_rng(cfg.seed)
    zero = np.zeros(len(GAMUT))
    agents = []
    for net, plan in ((net1, cfg.plan1), (net2, cfg.plan2)):
        agents.append({
            "net": net,
            "plan": np.asarray(plan, dtype=float),
            "state": None if cfg.agent_only else net.fresh_state(),
            "prev": None,
        })

    state = DuetState(length=cfg.length, finalis=cfg.finalis)
    trace: list[StepTrace] = []
    for t in range(cfg.length):
        if cfg.weights.mode == "coin_toss":
            w = draw_step_weight(rng, cfg.weights)
        else:
            w = cfg.weights.cm_weight

        acts = []
        for agent in agents:
            if cfg.agent_only:
                acts.append(zero)
            else:
                out = forward(agent["net"], agent["plan"], agent["state"])
                acts.append(map_to_gamut(out, agent["prev"]))

        if t == 0 and cfg.start_pair is not None:
            pair = cfg.start_pair
            utility = system_utility(state, pair, acts[0], acts[1], w)
        else:
            outcome = negotiate(state, acts[0], acts[1], w)
            if isinstance(outcome, DeadEnd):
                return CompositionResult(pairs=state.history,
                                         trace=tuple(trace),
                                         dead_end_step=t)
            pair, utility = outcome.pair, outcome.utility

        trace.append(StepTrace(step=t, weight=w, pair=pair, utility=utility,
                               legal_count=len(legal_pairs(state))))
        state = state.append(pair)
        for agent, note in zip(agents, pair):
            if not cfg.agent_only:
                code = _feedback_code(note, agent["prev"])
                agent["state"] = step_state(agent["state"], code)
            agent["prev"] = note

    return CompositionResult(pairs=state.history, trace=tuple(trace))
