"""Train a sequential network to memorize melodies, then replay them.

Each melody gets a one-hot plan vector; after training, presenting a plan
free-runs the network and should reproduce the associated melody exactly.
Run:  python3 demos/03_net_learns_melodies.py
"""

from importlib.resources import files

from bicinium import SequentialNet, generate, parse_corpus, train

text = files("bicinium.data").joinpath("cantus_one_voice.txt").read_text()
corpus = parse_corpus(text)
print(f"Loaded {len(corpus.melodies)} one-voice melodies:")
for _, voices in corpus.melodies:
    print("  ", " ".join(p.name for p in voices[0]))

net = SequentialNet.new(plan_size=4, hidden_size=15, voices=1, seed=1)
samples = corpus.training_set()
print("\nTraining with teacher forcing ...")
curve = train(net, samples, epochs=500, learning_rate=2.0)
print(f"  mse: epoch 1 = {curve[0]:.4f}, epoch 500 = {curve[-1]:.2e}")

print("\nFree-running each plan:")
for plan, voices in corpus.melodies:
    target = voices[0]
    (voice,) = generate(net, plan, length=len(target), start=target[0])
    got = " ".join(p.name for p in voice)
    want = " ".join(p.name for p in target)
    mark = "exact" if got == want else "differs"
    print(f"  [{mark}] {got}")
