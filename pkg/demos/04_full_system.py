"""The full hybrid system: two trained networks compose under the rules.

Each voice gets its own network trained on the one-voice corpus.  During
composition the networks propose note activations, the negotiation picks
the legal pair with the highest joint utility, and the agreed notes are
fed back into both networks' state units.  Run:

    python3 demos/04_full_system.py
"""

from importlib.resources import files

from bicinium import (
    CompositionConfig,
    SequentialNet,
    UtilityWeights,
    compose,
    parse_corpus,
    train,
    validate_duet,
    write_midi,
)

text = files("bicinium.data").joinpath("cantus_one_voice.txt").read_text()
samples = parse_corpus(text).training_set()

print("Training one network per voice ...")
net_a = SequentialNet.new(plan_size=4, hidden_size=15, voices=1, seed=1)
net_b = SequentialNet.new(plan_size=4, hidden_size=15, voices=1, seed=2)
mse_a = train(net_a, samples, epochs=500, learning_rate=2.0)[-1]
mse_b = train(net_b, samples, epochs=500, learning_rate=2.0)[-1]
print(f"  final mse: net A = {mse_a:.2e}, net B = {mse_b:.2e}")

cfg = CompositionConfig(
    plan1=(0.8, 0.0, 0.8, 0.0),
    plan2=(0.0, 1.0, 0.0, 1.0),
    weights=UtilityWeights(mode="coin_toss"),
    seed=3,
)
result = compose(net_a, net_b, cfg)
v1, v2 = result.voices
print("\nComposed duet:")
print("  V1:", " ".join(p.name for p in v1))
print("  V2:", " ".join(p.name for p in v2))
print("  complete:", result.complete,
      "| legal:", validate_duet(list(v1), list(v2)).legal)

path = "composed.mid"
write_midi(list(v1), list(v2), path)
print(f"\nWrote {path} (format 1, two tracks, one whole note per pair).")
