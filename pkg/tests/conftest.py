import pytest

from bicinium.gamut import pitch_from_name


@pytest.fixture
def p():
    """Shorthand pitch lookup."""
    return pitch_from_name


def pitches(tokens: str):
    return tuple(pitch_from_name(t) for t in tokens.split())


def pairs(v1: str, v2: str):
    return tuple(zip(pitches(v1), pitches(v2)))


# Machine-readable duets printed in the source material: the agent-only
# run and the three nondeterministic runs (8 pairs each), plus the
# two-voice training example (9 pairs).
AGENT_ONLY_DUET = ("re8 do8 la sol la mi la re8",
                   "re8 mi8 fa8 sol8 fa8 sol8 fa8 re8")
NONDET_DUETS = [
    ("re8 mi8 sol8 la8 sol8 mi8 fa8 re8", "re8 do8 si la si do8 la re8"),
    ("re8 do8 la sol la do8 si re8", "re8 mi8 fa8 sol8 fa8 mi8 sol8 re8"),
    ("re8 mi8 sol8 la8 sol8 fa8 sol8 re8", "re8 do8 si la si re8 si re8"),
]
TRAINING_DUET = ("re8 do8 mi8 la do8 si la do8 re8",
                 "re8 la8 sol8 fa8 mi8 re8 fa8 mi8 re8")
