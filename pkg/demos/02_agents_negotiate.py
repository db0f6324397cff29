"""Two agents agree on note pairs by maximizing a shared utility.

With no networks attached (flat activations) the utility reduces to the
contrary-motion bonus, so the agents greedily prefer steps in opposite
directions.  Run:  python3 demos/02_agents_negotiate.py
"""

import numpy as np

from bicinium import (
    Agreement,
    CompositionConfig,
    DuetState,
    UtilityWeights,
    compose,
    legal_pairs,
    negotiate,
    pitch_from_name,
)

re8 = pitch_from_name("re8")
flat = np.ones(13)

print("Step 1 from the opening octave (re8, re8):")
state = DuetState.from_history(length=8, history=((re8, re8),))
candidates = legal_pairs(state)
print(f"  {len(candidates)} of 169 candidate pairs are legal")
result = negotiate(state, flat, flat)
assert isinstance(result, Agreement)
print(f"  agreed on {result.pair[0].name}:{result.pair[1].name} "
      f"with utility {result.utility:.4f}")

print("\nA full agents-only duet (flat activations, deterministic weight):")
out = compose(None, None, CompositionConfig(agent_only=True))
v1, v2 = out.voices
print("  V1:", " ".join(p.name for p in v1))
print("  V2:", " ".join(p.name for p in v2))

print("\nSame thing with the coin-toss weight (0.5 or 1.49 each step):")
cfg = CompositionConfig(agent_only=True,
                        weights=UtilityWeights(mode="coin_toss"), seed=7)
out = compose(None, None, cfg)
for step in out.trace:
    print(f"  step {step.step}: weight={step.weight:.2f} "
          f"-> {step.pair[0].name}:{step.pair[1].name} "
          f"(utility {step.utility:.4f}, {step.legal_count} legal)")
