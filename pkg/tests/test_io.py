import struct
from importlib import resources

import pytest

from bicinium.cli import main
from bicinium.corpus import (
    CorpusError,
    load_corpus,
    parse_corpus,
    parse_duet_text,
    render_text,
)
from bicinium.midi import duet_to_midi_bytes, write_midi

from conftest import AGENT_ONLY_DUET, TRAINING_DUET, pitches


def data_path(name):
    return resources.files("bicinium.data") / name


# ---------------------------------------------------------------- corpus

def test_load_shipped_one_voice_corpus():
    corpus = load_corpus(data_path("cantus_one_voice.txt"))
    assert corpus.mode == "one_voice"
    labels = [label for label, _ in corpus.melodies]
    assert labels == [(1.0, 0.0, 0.0, 0.0), (0.0, 1.0, 0.0, 0.0),
                      (0.0, 0.0, 1.0, 0.0), (0.0, 0.0, 0.0, 1.0)]
    first = corpus.melodies[0][1][0]
    assert first == pitches("re8 la8 sol8 fa8 mi8 re8 fa8 mi8 re8")


def test_load_shipped_two_voice_corpus():
    corpus = load_corpus(data_path("duets_two_voice.txt"))
    assert corpus.mode == "two_voice"
    assert len(corpus.melodies) == 4
    v1, v2 = corpus.melodies[0][1]
    assert (len(v1), len(v2)) == (9, 9)
    assert v1 == pitches(TRAINING_DUET[0])
    assert v2 == pitches(TRAINING_DUET[1])


def test_parse_two_voice_block():
    corpus = parse_corpus("V1: re8 do8\nV2: re8 mi8\n")
    assert corpus.mode == "two_voice"
    assert corpus.melodies[0][0] == (1.0, 0.0, 0.0, 0.0)


def test_parse_explicit_labels():
    corpus = parse_corpus("label: 0 1 0 1\nre8 mi8 fa8\n")
    assert corpus.melodies[0][0] == (0.0, 1.0, 0.0, 1.0)


def test_parse_empty_corpus():
    with pytest.raises(CorpusError, match="empty corpus"):
        parse_corpus("# nothing here\n\n")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(CorpusError, match="line 2.*'dox'"):
        parse_corpus("# comment\nre8 dox\n")
    with pytest.raises(CorpusError, match="length"):
        parse_corpus("V1: re8 do8 la\nV2: re8 mi8\n")


def test_parse_too_many_unlabeled():
    text = "\n\n".join("re8 mi8 fa8" for _ in range(5))
    with pytest.raises(CorpusError, match="labels"):
        parse_corpus(text)


def test_render_text_matches_source_notation():
    v1, v2 = (pitches(t) for t in AGENT_ONLY_DUET)
    assert render_text(v1, v2) == (
        "V1: re8 do8 la sol la mi la re8\n"
        "V2: re8 mi8 fa8 sol8 fa8 sol8 fa8 re8\n")


def test_render_parse_roundtrip():
    v1, v2 = (pitches(t) for t in TRAINING_DUET)
    assert parse_duet_text(render_text(v1, v2)) == (v1, v2)


def test_single_pair_duet_renders():
    v1, v2 = pitches("re8"), pitches("re8")
    assert render_text(v1, v2) == "V1: re8\nV2: re8\n"


# ------------------------------------------------------------------ midi

def parse_midi(data: bytes):
    """Minimal independent MIDI reader: returns per-track note-on pitches
    and the total tick length of each track."""
    assert data[:4] == b"MThd"
    length, fmt, ntracks, division = struct.unpack(">IHHH", data[4:14])
    assert (length, fmt) == (6, 1)
    pos = 14
    tracks = []
    for _ in range(ntracks):
        assert data[pos:pos + 4] == b"MTrk"
        size = struct.unpack(">I", data[pos + 4:pos + 8])[0]
        body = data[pos + 8:pos + 8 + size]
        pos += 8 + size
        i = 0
        notes, ticks = [], 0
        while i < len(body):
            delta = 0
            while True:
                byte = body[i]; i += 1
                delta = (delta << 7) | (byte & 0x7F)
                if not byte & 0x80:
                    break
            ticks += delta
            status = body[i]
            if status == 0xFF:
                meta_len = body[i + 2]
                i += 3 + meta_len
            elif status & 0xF0 in (0x90, 0x80):
                if status & 0xF0 == 0x90 and body[i + 2] > 0:
                    notes.append(body[i + 1])
                i += 3
            else:
                raise AssertionError(f"unexpected status {status:#x}")
        tracks.append((notes, ticks))
    return division, tracks


def test_midi_single_pair(p):
    data = duet_to_midi_bytes((p("re8"),), (p("re8"),))
    division, tracks = parse_midi(data)
    assert division == 480
    assert [t[0] for t in tracks] == [[74], [74]]


def test_midi_eight_pair_duet():
    v1, v2 = (pitches(t) for t in AGENT_ONLY_DUET)
    division, tracks = parse_midi(duet_to_midi_bytes(v1, v2))
    assert all(len(notes) == 8 for notes, _ in tracks)
    assert all(ticks == 8 * 1920 for _, ticks in tracks)
    # round-trip: pitches survive through an independent reader
    assert tracks[0][0] == [62 + p.semitone for p in v1]
    assert tracks[1][0] == [62 + p.semitone for p in v2]


def test_midi_bytes_deterministic(tmp_path):
    v1, v2 = (pitches(t) for t in AGENT_ONLY_DUET)
    a = tmp_path / "a.mid"
    b = tmp_path / "b.mid"
    write_midi(v1, v2, a)
    write_midi(v1, v2, b)
    assert a.read_bytes() == b.read_bytes()


# ------------------------------------------------------------------- cli

def test_cli_validate_legal_duet(tmp_path, capsys):
    duet = tmp_path / "duet.txt"
    duet.write_text("V1: re8 do8 la sol la do8 si re8\n"
                    "V2: re8 mi8 fa8 sol8 fa8 mi8 sol8 re8\n")
    assert main(["validate", "--duet", str(duet)]) == 0
    out = capsys.readouterr().out
    assert "pos=0 pair=re8:re8 verdict=legal" in out


def test_cli_validate_parallel_octaves(tmp_path, capsys):
    duet = tmp_path / "duet.txt"
    duet.write_text("V1: re mi fa re\nV2: re8 mi8 fa8 re8\n")
    assert main(["validate", "--duet", str(duet)]) == 1
    assert "4" in capsys.readouterr().out


def test_cli_compose_agent_only_deterministic(capsys):
    args = ["compose", "--agent-only", "--seed", "1"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    assert first.startswith("V1: re8 do8 la sol")


def test_cli_compose_writes_midi_and_trace(tmp_path, capsys):
    midi = tmp_path / "duet.mid"
    trace = tmp_path / "trace.csv"
    code = main(["compose", "--agent-only", "--seed", "5", "--mode", "coin",
                 "--midi", str(midi), "--trace", str(trace)])
    assert code == 0
    division, tracks = parse_midi(midi.read_bytes())
    assert division == 480
    lines = trace.read_text().splitlines()
    assert lines[0].startswith("# seed=5 mode=coin")
    assert lines[1] == "step,weight,voice1,voice2,utility,legal_count"
    assert len(lines) == 10


def test_cli_train_generate_roundtrip(tmp_path, capsys):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("re8 la8 sol8 fa8 mi8 re8\n")
    ckpt = tmp_path / "net.txt"
    curve = tmp_path / "curve.csv"
    code = main(["train", "--corpus", str(corpus), "--hidden", "15",
                 "--epochs", "300", "--lr", "2.0", "--seed", "1",
                 "--out", str(ckpt), "--curve", str(curve)])
    assert code == 0
    assert ckpt.exists()
    assert curve.read_text().splitlines()[0] == "epoch,mse"
    capsys.readouterr()
    code = main(["generate", "--net", str(ckpt),
                 "--plan", "1,0,0,0", "--length", "6"])
    assert code == 0
    out = capsys.readouterr().out.strip()
    assert out == "re8 la8 sol8 fa8 mi8 re8"


def test_cli_unknown_flag_exits_nonzero(capsys):
    assert main(["compose", "--bogus"]) != 0


def test_cli_missing_file(capsys):
    assert main(["validate", "--duet", "/nonexistent/duet.txt"]) == 1
