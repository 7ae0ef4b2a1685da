"""Brute-force path-enumeration oracles, independent of the library's DPs.

Probabilities are handled as integer path weights over a common denominator
D (the lcm of the step denominators), so every count is exact. All paths of
the requested length are enumerated explicitly with numpy integer tensors;
a guard refuses instances where int64 could overflow.
"""

import math
from fractions import Fraction

import numpy as np


def _integer_steps(m):
    items = list(m.items())
    denom = math.lcm(*(c.denominator for _, c in items))
    sites = np.array([s for s, _ in items], dtype=np.int64)
    weights = np.array([int(c * denom) for _, c in items], dtype=np.int64)
    return sites, weights, denom


def _enumerate(sites, weights, depth):
    k = len(sites)
    idx = np.indices((k,) * depth).reshape(depth, -1).T  # (k^depth, depth)
    steps = sites[idx]
    wprod = np.multiply.accumulate(weights[idx], axis=1)
    positions = np.cumsum(steps, axis=1)
    return positions, wprod


def brute_running_max(m, n_max):
    """pmf of max(0, X_1..X_d) for every d = 1..n_max, as exact Fractions."""
    sites, weights, denom = _integer_steps(m)
    assert denom ** n_max < 2**62, "instance too large for exact int64 enumeration"
    positions, wprod = _enumerate(sites, weights, n_max)
    runmax = np.maximum(np.maximum.accumulate(positions, axis=1), 0)
    lo, hi = int(runmax.min()), int(runmax.max())
    out = []
    for d in range(1, n_max + 1):
        counts = np.zeros(hi - lo + 1, dtype=np.int64)
        np.add.at(counts, runmax[:, d - 1] - lo, wprod[:, d - 1])
        # every d-prefix shows up once per suffix, i.e. k^(n_max - d) times,
        # each time with the same prefix weight
        repeats = len(sites) ** (n_max - d)
        pmf = {}
        for i, c in enumerate(counts):
            if c:
                pmf[lo + i] = Fraction(int(c), denom**d * repeats)
        out.append(pmf)
    return out


def brute_ladder(m, horizon):
    """Exact joint law of the first strict passage above 0, epoch <= horizon."""
    sites, weights, denom = _integer_steps(m)
    cells = {}
    for n in range(1, horizon + 1):
        assert denom**n < 2**62, "instance too large for exact int64 enumeration"
        positions, wprod = _enumerate(sites, weights, n)
        before = positions[:, : n - 1]
        stays = (before <= 0).all(axis=1) if n > 1 else np.ones(len(positions), bool)
        up = positions[:, n - 1] > 0
        mask = stays & up
        if not mask.any():
            continue
        heights = positions[mask, n - 1]
        wsel = wprod[mask, n - 1]
        hi = int(heights.max())
        counts = np.zeros(hi + 1, dtype=np.int64)
        np.add.at(counts, heights, wsel)
        for s in range(1, hi + 1):
            if counts[s]:
                cells[(n, s)] = Fraction(int(counts[s]), denom**n)
    defect = 1 - sum(cells.values(), Fraction(0))
    return cells, defect
