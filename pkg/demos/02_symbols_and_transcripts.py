"""
From real series to transcripts
===============================

Two noisy, lagged copies of a sine are turned into ordinal symbol series.
The transcript series records, step by step, which permutation carries one
pattern into the other.
"""

# %%
import numpy as np

from transcripta import (
    estimate_dist, js_distance, normalized_entropy, statistical_complexity,
    symbolize, transcribe,
)

rng = np.random.default_rng(0)
t = np.arange(2000) * 0.1
x = np.sin(t) + 0.05 * rng.normal(size=t.size)
y = np.sin(t - 0.3) + 0.05 * rng.normal(size=t.size)

# %%
a, b = symbolize(x, L=3, T=1), symbolize(y, L=3, T=1)
print(a.labels()[:8])
print(b.labels()[:8])

# %%
# transcripts T(a_t, b_t) = b_t . a_t^-1; mostly the identity for similar series
tau = transcribe(a, b)
p = estimate_dist(tau)
for label, prob in zip(a.group.labels, p.probs):
    print(f"{label}  {prob:.3f}")

# %%
# entropy-complexity coordinates of the transcript law, and of pure noise for contrast
noise = transcribe(symbolize(rng.normal(size=2000)), symbolize(rng.normal(size=2000)))
for name, q in [("sine pair", p), ("noise pair", estimate_dist(noise))]:
    u = np.full(len(q), 1 / len(q))
    print(f"{name:10s} h={normalized_entropy(q):.3f} SC={statistical_complexity(q):.3f} "
          f"JS-dist to uniform={js_distance(q, u, base=2):.3f}")
