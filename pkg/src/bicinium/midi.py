"""Standard MIDI file output for finished duets.

Format 1, 480 ticks per quarter, one track per voice (tempo in the first),
every note a whole note.  The gamut maps onto D4..B5: MIDI note = 62 plus
the pitch's semitone offset.  Output bytes depend only on the duet, so
identical duets give identical files.
"""

from __future__ import annotations

import struct
from pathlib import Path

from .gamut import Pitch

__all__ = ["duet_to_midi_bytes", "write_midi"]

TICKS_PER_QUARTER = 480
WHOLE_NOTE_TICKS = 4 * TICKS_PER_QUARTER
BASE_MIDI_NOTE = 62  # re = D4
_VELOCITY = 80


def _vlq(value: int) -> bytes:
    """Variable-length quantity encoding."""
    chunks = [value & 0x7F]
    value >>= 7
    while value:
        chunks.append(0x80 | (value & 0x7F))
        value >>= 7
    return bytes(reversed(chunks))


def _track(events: bytes) -> bytes:
    events += b"\x00\xff\x2f\x00"  # end of track
    return b"MTrk" + struct.pack(">I", len(events)) + events


def _voice_events(voice, tempo_us: int | None) -> bytes:
    events = b""
    if tempo_us is not None:
        events += b"\x00\xff\x51\x03" + struct.pack(">I", tempo_us)[1:]
    for pitch in voice:
        note = BASE_MIDI_NOTE + pitch.semitone
        events += _vlq(0) + bytes((0x90, note, _VELOCITY))
        events += _vlq(WHOLE_NOTE_TICKS) + bytes((0x80, note, 0))
    return events


def duet_to_midi_bytes(voice1, voice2, tempo_bpm: int = 60) -> bytes:
    if len(voice1) != len(voice2):
        raise ValueError("voices differ in length")
    tempo_us = round(60_000_000 / tempo_bpm)
    header = b"MThd" + struct.pack(">IHHH", 6, 1, 2, TICKS_PER_QUARTER)
    return (header
            + _track(_voice_events(voice1, tempo_us))
            + _track(_voice_events(voice2, None)))


def write_midi(voice1, voice2, path, tempo_bpm: int = 60) -> None:
    data = duet_to_midi_bytes(voice1, voice2, tempo_bpm)
    target = Path(path)
    tmp = target.with_name(target.name + ".tmp")
    tmp.write_bytes(data)
    tmp.replace(target)
