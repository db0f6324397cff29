"""Jordan-style sequential net: 19-unit note codes, decaying state units,
backprop training, and the mapping of output activations onto the gamut.

A note is coded in 19 units: 8 for the pitch degree on a re..re' wheel,
9 for the step distance 0..8 from the previous note, and 2 for the
direction of movement.  The input layer holds the plan units (a fixed
label per melody) next to state units that accumulate decayed copies of
past notes; hidden and output units are logistic.  A two-voice net simply
doubles the code: 38 output/state units, one 19-block per voice.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .gamut import GAMUT, Pitch

__all__ = [
    "NOTE_CODE_SIZE",
    "SequentialNet",
    "NetState",
    "encode_note",
    "forward",
    "step_state",
    "map_to_gamut",
    "decode_pitch",
    "train",
    "generate",
    "save_net",
    "load_net",
]

NOTE_CODE_SIZE = 19
_PITCH_UNITS = 8
_INTERVAL_UNITS = 9  # step distances 0..8
_ASCEND, _DESCEND = 17, 18


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-z))


def _degree_unit(p: Pitch) -> int:
    # re..re' wheel: index 7 (re8) keeps its own unit; 8..12 fold to 1..5
    return p.index if p.index <= 7 else p.index - 7


def encode_note(cur: Pitch, prev: Pitch | None = None) -> np.ndarray:
    """One-hot 19-code of a note in the context of its predecessor."""
    code = np.zeros(NOTE_CODE_SIZE)
    code[_degree_unit(cur)] = 1.0
    if prev is not None:
        delta = cur.index - prev.index
        if abs(delta) > 8:
            raise ValueError(
                f"step {prev.name}->{cur.name} spans {abs(delta)} steps, "
                "beyond the 9 interval units")
        code[_PITCH_UNITS + abs(delta)] = 1.0
        if delta > 0:
            code[_ASCEND] = 1.0
        elif delta < 0:
            code[_DESCEND] = 1.0
    return code


@dataclass
class SequentialNet:
    """Three-layer net with plan+state input, logistic hidden and output."""

    plan_size: int
    hidden_size: int
    voices: int
    decay: float
    w1: np.ndarray  # (hidden, plan + output)
    b1: np.ndarray
    w2: np.ndarray  # (output, hidden)
    b2: np.ndarray

    @property
    def output_size(self) -> int:
        return self.voices * NOTE_CODE_SIZE

    @classmethod
    def new(cls, plan_size: int = 4, hidden_size: int = 15, voices: int = 1,
            decay: float = 0.7, seed: int = 0) -> "SequentialNet":
        if not 0 <= decay < 1:
            raise ValueError("decay must be in [0, 1)")
        rng = np.random.default_rng(seed)
        out = voices * NOTE_CODE_SIZE
        def init(*shape):
            return rng.uniform(-0.5, 0.5, size=shape)
        return cls(plan_size, hidden_size, voices, decay,
                   w1=init(hidden_size, plan_size + out), b1=init(hidden_size),
                   w2=init(out, hidden_size), b2=init(out))

    def fresh_state(self) -> "NetState":
        return NetState(np.zeros(self.output_size), self.decay)


@dataclass(frozen=True)
class NetState:
    """Decaying accumulator of past output codes."""

    state_units: np.ndarray
    decay: float


def step_state(state: NetState, out: np.ndarray) -> NetState:
    """s' = decay * s + out, elementwise."""
    out = np.asarray(out, dtype=float)
    if out.shape != state.state_units.shape:
        raise ValueError("state/output length mismatch")
    return replace(state, state_units=state.decay * state.state_units + out)


def forward(net: SequentialNet, plan: np.ndarray,
            state: NetState | np.ndarray) -> np.ndarray:
    """One forward pass; returns the output activations in (0, 1)."""
    units = state.state_units if isinstance(state, NetState) else np.asarray(state)
    plan = np.asarray(plan, dtype=float)
    if plan.shape != (net.plan_size,):
        raise ValueError(f"plan must have shape ({net.plan_size},)")
    if units.shape != (net.output_size,):
        raise ValueError(f"state must have shape ({net.output_size},)")
    x = np.concatenate([plan, units])
    hidden = _sigmoid(net.w1 @ x + net.b1)
    return _sigmoid(net.w2 @ hidden + net.b2)


def map_to_gamut(out: np.ndarray, prev: Pitch | None = None) -> np.ndarray:
    """Combine one 19-block of activations into 13 per-pitch expectations.

    Each gamut pitch is scored by the product of its degree-wheel
    activation, the activation of its step distance from the previous
    note, and the activation of the movement direction; the vector is
    then normalized to peak at 1 (all-zero passes through).
    """
    out = np.asarray(out, dtype=float)
    if out.shape != (NOTE_CODE_SIZE,):
        raise ValueError("expected one 19-unit block")
    acts = np.zeros(len(GAMUT))
    for p in GAMUT:
        a = out[_degree_unit(p)]
        if prev is not None:
            delta = p.index - prev.index
            if abs(delta) > 8:
                a = 0.0
            else:
                a *= out[_PITCH_UNITS + abs(delta)]
                if delta > 0:
                    a *= out[_ASCEND]
                elif delta < 0:
                    a *= out[_DESCEND]
        acts[p.index] = a
    peak = acts.max()
    return acts / peak if peak > 0 else acts


def decode_pitch(out_block: np.ndarray, prev: Pitch | None = None) -> Pitch:
    """Argmax decode of one 19-block (ties to the lowest pitch index)."""
    return GAMUT[int(np.argmax(map_to_gamut(out_block, prev)))]


def _encode_melody(voices: tuple, net: SequentialNet) -> np.ndarray:
    """Per-step target codes of a melody, one row per time step."""
    length = len(voices[0])
    rows = []
    for t in range(length):
        blocks = [encode_note(v[t], v[t - 1] if t else None) for v in voices]
        rows.append(np.concatenate(blocks))
    return np.array(rows)


def _teacher_samples(net: SequentialNet, corpus):
    """Unroll every melody with teacher forcing into (input, target) rows.

    With target codes (not predictions) fed back into the state units, the
    inputs do not depend on the weights, so training reduces to plain
    backprop over a fixed sample set.
    """
    inputs, targets = [], []
    for plan, voices in corpus:
        plan = np.asarray(plan, dtype=float)
        if plan.shape != (net.plan_size,):
            raise ValueError("plan label size mismatch")
        if len(voices) != net.voices:
            raise ValueError(f"net expects {net.voices} voice(s)")
        codes = _encode_melody(voices, net)
        state = np.zeros(net.output_size)
        for t in range(codes.shape[0]):
            inputs.append(np.concatenate([plan, state]))
            targets.append(codes[t])
            state = net.decay * state + codes[t]
    return np.array(inputs), np.array(targets)


def _sample_gradients(net: SequentialNet, x: np.ndarray, target: np.ndarray):
    """Backprop gradients of 0.5*||o - target||^2 for one sample."""
    z1 = net.w1 @ x + net.b1
    h = _sigmoid(z1)
    o = _sigmoid(net.w2 @ h + net.b2)
    dz2 = (o - target) * o * (1.0 - o)
    dz1 = (net.w2.T @ dz2) * h * (1.0 - h)
    return (np.outer(dz1, x), dz1, np.outer(dz2, h), dz2), o


def batch_gradients(net: SequentialNet, inputs: np.ndarray,
                    targets: np.ndarray):
    """Gradients of the mean per-sample loss 0.5*||o-t||^2 over a batch."""
    gw1 = np.zeros_like(net.w1)
    gb1 = np.zeros_like(net.b1)
    gw2 = np.zeros_like(net.w2)
    gb2 = np.zeros_like(net.b2)
    n = len(inputs)
    for x, t in zip(inputs, targets):
        (dw1, db1, dw2, db2), _ = _sample_gradients(net, x, t)
        gw1 += dw1; gb1 += db1; gw2 += dw2; gb2 += db2
    return gw1 / n, gb1 / n, gw2 / n, gb2 / n


def batch_loss(net: SequentialNet, inputs: np.ndarray,
               targets: np.ndarray) -> float:
    """Mean per-sample loss 0.5*||o-t||^2, the quantity batch_gradients
    differentiates."""
    total = 0.0
    for x, t in zip(inputs, targets):
        o = forward(net, x[:net.plan_size], x[net.plan_size:])
        total += 0.5 * float(np.sum((o - t) ** 2))
    return total / len(inputs)


def train(net: SequentialNet, corpus, epochs: int = 500,
          learning_rate: float = 0.2) -> list[float]:
    """Online backprop over the teacher-forced sample set, in place.

    Returns the per-epoch mean squared error (mean over samples and
    output units), measured on each sample before its update.
    """
    if not corpus:
        raise ValueError("empty corpus")
    inputs, targets = _teacher_samples(net, corpus)
    curve = []
    for _ in range(epochs):
        sq = 0.0
        for x, t in zip(inputs, targets):
            (dw1, db1, dw2, db2), o = _sample_gradients(net, x, t)
            sq += float(np.mean((o - t) ** 2))
            net.w1 -= learning_rate * dw1
            net.b1 -= learning_rate * db1
            net.w2 -= learning_rate * dw2
            net.b2 -= learning_rate * db2
        curve.append(sq / len(inputs))
    return curve


def generate(net: SequentialNet, plan, length: int,
             start: Pitch | tuple | None = None) -> tuple[tuple[Pitch, ...], ...]:
    """Free-run the net for `length` steps, one pitch sequence per voice.

    The argmax-decoded note of each step is re-encoded and fed back into
    the state units.  `start` pins the first note (a pitch, or a tuple of
    pitches for a multi-voice net).
    """
    plan = np.asarray(plan, dtype=float)
    if start is not None and not isinstance(start, tuple):
        start = (start,)
    state = net.fresh_state()
    prev: list[Pitch | None] = [None] * net.voices
    voices: list[list[Pitch]] = [[] for _ in range(net.voices)]
    for t in range(length):
        out = forward(net, plan, state)
        feedback = []
        for v in range(net.voices):
            block = out[v * NOTE_CODE_SIZE:(v + 1) * NOTE_CODE_SIZE]
            if t == 0 and start is not None:
                pitch = start[v]
            else:
                pitch = decode_pitch(block, prev[v])
            voices[v].append(pitch)
            feedback.append(encode_note(pitch, prev[v]))
            prev[v] = pitch
        state = step_state(state, np.concatenate(feedback))
    return tuple(tuple(v) for v in voices)


_CKPT_MAGIC = "bicinium-net v1"


def save_net(net: SequentialNet, path) -> None:
    """Write a checkpoint as portable decimal text (exact round-trip)."""
    lines = [_CKPT_MAGIC,
             f"plan_size {net.plan_size}",
             f"hidden_size {net.hidden_size}",
             f"voices {net.voices}",
             f"decay {net.decay!r}"]
    for name in ("w1", "b1", "w2", "b2"):
        arr = getattr(net, name)
        lines.append(f"{name} {' '.join(str(d) for d in arr.shape)}")
        lines.append(" ".join(f"{v:.17g}" for v in arr.ravel()))
    Path(path).write_text("\n".join(lines) + "\n")


def load_net(path) -> SequentialNet:
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != _CKPT_MAGIC:
        raise ValueError(f"{path}: not a net checkpoint")
    header = dict(line.split(None, 1) for line in lines[1:5])
    arrays = {}
    for i in range(5, len(lines) - 1, 2):
        name, *shape = lines[i].split()
        shape = tuple(int(s) for s in shape)
        values = np.array([float(v) for v in lines[i + 1].split()])
        arrays[name] = values.reshape(shape)
    return SequentialNet(plan_size=int(header["plan_size"]),
                         hidden_size=int(header["hidden_size"]),
                         voices=int(header["voices"]),
                         decay=float(header["decay"]),
                         w1=arrays["w1"], b1=arrays["b1"],
                         w2=arrays["w2"], b2=arrays["b2"])
