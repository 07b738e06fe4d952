"""Brute-force reference implementations used only by the tests.

Each oracle follows the defining property directly (graph search, exhaustive
enumeration, naive counting) and shares no code with the package.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, deque


def perms(L):
    return [tuple(p) for p in itertools.permutations(range(1, L + 1))]


def act(r, s):
    # functions on {1..L}: apply r first, then s
    return tuple(s[r[k] - 1] for k in range(len(r)))


def inverse(r):
    return next(x for x in perms(len(r)) if act(r, x) == tuple(range(1, len(r) + 1)))


def naive_inversions(u):
    return sum(1 for i in range(len(u)) for j in range(i + 1, len(u)) if u[i] > u[j])


def naive_cycles(u):
    left, cycles = set(range(1, len(u) + 1)), 0
    while left:
        k = left.pop()
        cycles += 1
        k = u[k - 1]
        while k in left:
            left.remove(k)
            k = u[k - 1]
    return cycles


def _swap(r, i, j):
    r = list(r)
    r[i], r[j] = r[j], r[i]
    return tuple(r)


def bfs_distances(source, generator="adjacent"):
    """Shortest-path lengths from ``source`` when swapping adjacent (or any two) positions."""
    L = len(source)
    if generator == "adjacent":
        moves = [(i, i + 1) for i in range(L - 1)]
    else:
        moves = list(itertools.combinations(range(L), 2))
    dist = {tuple(source): 0}
    queue = deque([tuple(source)])
    while queue:
        r = queue.popleft()
        for i, j in moves:
            n = _swap(r, i, j)
            if n not in dist:
                dist[n] = dist[r] + 1
                queue.append(n)
    return dist


def order_of(x, mul, e):
    k, y = 1, x
    while y != e:
        y = mul(y, x)
        k += 1
    return k


def entropy(seq_or_counts, base=math.e):
    counts = seq_or_counts if isinstance(seq_or_counts, Counter) else Counter(seq_or_counts)
    n = sum(counts.values())
    return -sum(c / n * math.log(c / n) for c in counts.values() if c) / math.log(base)


def entropy_probs(p, base=math.e):
    return -sum(x * math.log(x) for x in p if x > 0) / math.log(base)


def mutual_info(xs, ys, base=math.e):
    pairs = list(zip(xs, ys))
    return entropy(list(xs), base) + entropy(list(ys), base) - entropy(pairs, base)


def conditional_mi(x, y, z, base=math.e):
    """I(x; y | z) from the definition sum p(x,y,z) log p(x,y,z)p(z) / (p(x,z)p(y,z))."""
    n = len(x)
    xyz = Counter(zip(x, y, z))
    xz = Counter(zip(x, z))
    yz = Counter(zip(y, z))
    zc = Counter(z)
    total = 0.0
    for (a, b, c), k in xyz.items():
        total += k / n * math.log(k * zc[c] / (xz[(a, c)] * yz[(b, c)]))
    return total / math.log(base)


def kl(p, q):
    out = 0.0
    for a, b in zip(p, q):
        if a > 0:
            if b == 0:
                return math.inf
            out += a * math.log(a / b)
    return out


def js(p, q):
    m = [(a + b) / 2 for a, b in zip(p, q)]
    return entropy_probs(m) - (entropy_probs(p) + entropy_probs(q)) / 2


def de_bruijn(k, n):
    """Cyclic sequence over range(k) containing every length-n word exactly once."""
    a = [0] * k * n
    seq = []

    def db(t, p):
        if t > n:
            if n % p == 0:
                seq.extend(a[1:p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, k):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    return seq
