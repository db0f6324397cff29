"""First-species legality rules for two-part counterpoint.

The engine checks a candidate pair of simultaneous tones against the
composition so far and reports which of the numbered rules it breaks:

 1. no dissonant intervals
 2. perfect consonance at the first and last places
 3. unison only at the first or last place
 4. no perfect interval reached by similar motion (hidden/parallel
    fifths and octaves)
 5. a fifth or octave must differ from the previous interval by exactly
    two steps, measured on directed intervals (unisons exempt)
 6. no interval wider than a tenth
 7. at most four consecutive intervals from the same imperfect family
    (thirds/tenths, or sixths)
 8. if both voices skip in the same direction, neither skips more than
    a fourth
 9. no voice repeats its previous tone
10. at most two perfect consonances in the interior
11. (finalis, configurable) both final tones on the re degree
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .gamut import (
    GAMUT,
    IntervalQuality,
    Motion,
    NotePair,
    interval_quality,
    interval_steps,
    motion,
    signed_interval,
)

__all__ = ["DuetState", "RuleVerdict", "check_pair", "legal_pairs",
           "validate_duet", "DuetReport"]

THIRDS_FAMILY = frozenset({2, 9})
SIXTHS_FAMILY = frozenset({5, 12})
MAX_IMPERFECT_RUN = 4
MAX_INTERIOR_PERFECT = 2


def _family(pair: NotePair) -> int:
    """Imperfect-interval family of a pair: 3 (thirds/tenths), 6 (sixths), 0."""
    steps = interval_steps(*pair)
    if steps in THIRDS_FAMILY:
        return 3
    if steps in SIXTHS_FAMILY:
        return 6
    return 0


@dataclass(frozen=True)
class RuleVerdict:
    violations: frozenset[int]

    @property
    def legal(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.legal:
            return "legal"
        return "rules " + " ".join(str(r) for r in sorted(self.violations))


@dataclass(frozen=True)
class DuetState:
    """Composition-so-far plus the cached counters rules 7 and 10 need.

    The counters are derivable from ``history``; ``append`` keeps them in
    sync and ``from_history`` rebuilds them from scratch.
    """

    length: int
    history: tuple[NotePair, ...] = ()
    finalis: bool = True
    imperfect_run: tuple[int, int] = (0, 0)  # (family, run length)
    interior_perfect_count: int = 0

    @property
    def position(self) -> int:
        """Index of the next pair to be placed."""
        return len(self.history)

    @property
    def complete(self) -> bool:
        return len(self.history) == self.length

    def append(self, pair: NotePair) -> "DuetState":
        t = self.position
        if t >= self.length:
            raise ValueError("duet already complete")
        fam = _family(pair)
        if fam and fam == self.imperfect_run[0]:
            run = (fam, self.imperfect_run[1] + 1)
        elif fam:
            run = (fam, 1)
        else:
            run = (0, 0)
        perfect = interval_quality(*pair) is IntervalQuality.PERFECT_CONSONANT
        interior = self.interior_perfect_count
        if perfect and 0 < t < self.length - 1:
            interior += 1
        return replace(self, history=self.history + (pair,),
                       imperfect_run=run, interior_perfect_count=interior)

    @classmethod
    def from_history(cls, length: int, history: tuple[NotePair, ...] = (),
                     finalis: bool = True) -> "DuetState":
        state = cls(length=length, finalis=finalis)
        for pair in history:
            state = state.append(pair)
        return state


def check_pair(state: DuetState, pair: NotePair) -> RuleVerdict:
    """Verdict for appending ``pair`` at the next position of ``state``."""
    t = state.position
    if t >= state.length:
        raise ValueError(f"position {t} beyond duet length {state.length}")
    n1, n2 = pair
    steps = interval_steps(n1, n2)
    quality = interval_quality(n1, n2)
    perfect = quality is IntervalQuality.PERFECT_CONSONANT
    first, last = t == 0, t == state.length - 1
    prev = state.history[-1] if t > 0 else None

    violations = set()
    if quality is IntervalQuality.DISSONANT:
        violations.add(1)
    if (first or last) and not perfect:
        violations.add(2)
    if steps == 0 and not (first or last):
        violations.add(3)
    if perfect and prev is not None and motion(prev, pair) is Motion.SIMILAR:
        violations.add(4)
    if (perfect and steps in (4, 7, 11) and prev is not None
            and abs(signed_interval(prev) - signed_interval(pair)) != 2):
        violations.add(5)
    if steps > 9:
        violations.add(6)
    fam = _family(pair)
    if fam and fam == state.imperfect_run[0] \
            and state.imperfect_run[1] + 1 > MAX_IMPERFECT_RUN:
        violations.add(7)
    if prev is not None:
        d1 = n1.index - prev[0].index
        d2 = n2.index - prev[1].index
        if d1 * d2 > 0 and abs(d1) >= 2 and abs(d2) >= 2 \
                and max(abs(d1), abs(d2)) > 3:
            violations.add(8)
        if d1 == 0 or d2 == 0:
            violations.add(9)
    if perfect and not (first or last) \
            and state.interior_perfect_count >= MAX_INTERIOR_PERFECT:
        violations.add(10)
    if state.finalis and last and not (n1.degree == 0 and n2.degree == 0):
        violations.add(11)
    return RuleVerdict(frozenset(violations))


def legal_pairs(state: DuetState) -> list[NotePair]:
    """All legal pairs at the next position, in canonical scan order
    (voice-1 index ascending, then voice-2 index ascending)."""
    return [(a, b) for a in GAMUT for b in GAMUT
            if check_pair(state, (a, b)).legal]


@dataclass(frozen=True)
class DuetReport:
    verdicts: tuple[RuleVerdict, ...]
    pairs: tuple[NotePair, ...]

    @property
    def legal(self) -> bool:
        return all(v.legal for v in self.verdicts)

    def __str__(self) -> str:
        lines = []
        for t, (pair, verdict) in enumerate(zip(self.pairs, self.verdicts)):
            lines.append(f"pos={t} pair={pair[0]}:{pair[1]} verdict={verdict}")
        return "\n".join(lines)


def validate_duet(voice1, voice2, finalis: bool = True) -> DuetReport:
    """Replay a finished duet through check_pair, position by position."""
    if len(voice1) != len(voice2):
        raise ValueError(
            f"voices differ in length: {len(voice1)} vs {len(voice2)}")
    length = len(voice1)
    state = DuetState(length=length, finalis=finalis)
    verdicts = []
    pairs = tuple(zip(voice1, voice2))
    for pair in pairs:
        verdicts.append(check_pair(state, pair))
        state = state.append(pair)
    return DuetReport(tuple(verdicts), pairs)
