"""Tour of the pitch gamut and the legality rules.

Run:  python3 demos/01_gamut_and_rules.py
"""

from bicinium import (
    GAMUT,
    interval_quality,
    interval_steps,
    pitch_from_name,
    validate_duet,
)

print("The 13-pitch Dorian gamut, re (D4) up to si8:")
for p in GAMUT:
    print(f"  {p.index:2d}  {p.name:<5s} {p.semitone:2d} semitones above re")

print("\nSome intervals:")
for a, b in [("re", "la"), ("do8", "mi8"), ("si", "fa8"), ("mi", "sol8")]:
    pa, pb = pitch_from_name(a), pitch_from_name(b)
    print(f"  {a:>4s}-{b:<5s} {interval_steps(pa, pb)} steps, "
          f"{interval_quality(pa, pb).value}")

print("\nValidating a well-formed duet:")
v1 = [pitch_from_name(t) for t in "re8 do8 la sol la mi la re8".split()]
v2 = [pitch_from_name(t) for t in "re8 mi8 fa8 sol8 fa8 sol8 fa8 re8".split()]
report = validate_duet(v1, v2)
print(report)
print("legal:", report.legal)

print("\n... and one with parallel octaves (rule 4):")
v1 = [pitch_from_name(t) for t in "re mi fa re".split()]
v2 = [pitch_from_name(t) for t in "re8 mi8 fa8 re8".split()]
print(validate_duet(v1, v2))
