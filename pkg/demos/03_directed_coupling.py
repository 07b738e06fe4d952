"""
Directed coupling between symbol series
=======================================

A driver x forces a responder y one step later.  Transfer entropy and the
transcript mutual information are both far larger from x to y than
in the reverse direction.
"""

# %%
import numpy as np

from transcripta import ccc, coupling_report, mutual_information, symbolize

rng = np.random.default_rng(3)
n = 20_000
x = rng.normal(size=n)
y = np.empty(n)
y[0] = 0.0
for t in range(1, n):
    y[t] = 0.6 * x[t - 1] + 0.4 * rng.normal()

a, b = symbolize(x), symbolize(y)

# %%
forward = coupling_report(a, b, lam=1)
backward = coupling_report(b, a, lam=1)
print("x -> y", forward.to_dict())
print("y -> x", backward.to_dict())

# %%
# lagged mutual information peaks at the forcing lag
for lam in range(4):
    print(lam, round(mutual_information(a, b, lam, base=2), 4))

# %%
# coupling complexity coefficient of the three-series list
z = symbolize(rng.normal(size=n))
print("CCC(a, b, z) =", ccc([a, b, z], base=2))
