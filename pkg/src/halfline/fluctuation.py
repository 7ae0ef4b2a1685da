"""Probabilistic reformulations: positive parts, running maxima, the first
strict ascending ladder epoch/height, and the space-time Wiener-Hopf factor.

All distributions are computed by exact dynamic programming over rational
probabilities; floating point appears only in the transform evaluations.
Ladder epochs are strict (first n with the walk strictly above 0), matching
the convention that the atom at 0 belongs to the nonpositive half-line.

The two transform routes are linked by the Spitzer-Baxter identity

    1 - E[q^T w^S] = exp( - sum_{n>=1} (q^n / n) * sum_{x>0} P(X_n = x) w^x )

whose series data is exactly the half-line trace sequence, so a trace set is
enough to evaluate the factor to any tolerance the series tail allows.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientDataError, InvalidInputError
from .measures import LatticeMeasure, restrict_pos
from .traces import TraceSet, traces

__all__ = [
    "Pmf",
    "LadderTable",
    "WHPoint",
    "positive_part_dist",
    "running_max_dist",
    "ladder_joint_dist",
    "wh_factor_from_traces",
    "wh_factor_from_ladder",
    "required_trace_length",
]

_SUM_TOL = Fraction(1, 10**12)


def _check_probability(m: LatticeMeasure) -> None:
    if m.is_zero or any(c < 0 for c in m.coeffs) or m.total_mass() != 1:
        raise InvalidInputError(
            "input must be a probability measure (non-negative mass summing to 1)"
        )


@dataclass(frozen=True)
class Pmf:
    """Probability mass function on lattice sites, exact rational weights."""

    step: float
    entries: tuple  # ((site, Fraction), ...) sorted by site

    def __post_init__(self):
        entries = tuple(sorted((int(s), Fraction(p)) for s, p in self.entries))
        object.__setattr__(self, "entries", entries)
        if any(p < 0 for _, p in entries):
            raise InvalidInputError("pmf has a negative probability")
        if abs(self.total() - 1) > _SUM_TOL:
            raise InvalidInputError(f"pmf total {float(self.total())} is not 1")

    def total(self) -> Fraction:
        return sum((p for _, p in self.entries), Fraction(0))

    def prob(self, site: int) -> Fraction:
        for s, p in self.entries:
            if s == site:
                return p
        return Fraction(0)

    def support(self) -> tuple:
        return tuple(s for s, p in self.entries if p != 0)

    def as_dict(self) -> dict:
        return {s: p for s, p in self.entries if p != 0}

    def to_json_obj(self) -> dict:
        return {
            "step": float(self.step),
            "entries": [[s, str(p)] for s, p in self.entries if p != 0],
        }


@dataclass(frozen=True)
class LadderTable:
    """Joint law of the first strict ladder epoch and height up to a horizon.

    ``cells`` maps (epoch n, height site s) to P(T1 = n, S1 = s); ``defect``
    is P(T1 > horizon). Nothing is truncated: cells plus defect sum to 1.
    """

    step: float
    horizon: int
    cells: tuple  # (((n, s), Fraction), ...) sorted
    defect: Fraction

    def __post_init__(self):
        cells = tuple(sorted(((int(n), int(s)), Fraction(p)) for (n, s), p in self.cells))
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "defect", Fraction(self.defect))
        for (n, s), p in cells:
            if p < 0:
                raise InvalidInputError("ladder table has a negative probability")
            if not (1 <= n <= self.horizon):
                raise InvalidInputError(f"ladder epoch {n} outside 1..{self.horizon}")
            if s < 1:
                raise InvalidInputError(f"ladder height {s} is not positive")
        if self.defect < 0:
            raise InvalidInputError("ladder defect is negative")
        total = self.table_mass() + self.defect
        if abs(total - 1) > _SUM_TOL:
            raise InvalidInputError(f"ladder table + defect sums to {float(total)}, not 1")

    def table_mass(self) -> Fraction:
        return sum((p for _, p in self.cells), Fraction(0))

    def prob(self, n: int, s: int) -> Fraction:
        for (cn, cs), p in self.cells:
            if (cn, cs) == (n, s):
                return p
        return Fraction(0)

    def epoch_marginal(self, n: int) -> Fraction:
        return sum((p for (cn, _), p in self.cells if cn == n), Fraction(0))

    def to_json_obj(self) -> dict:
        return {
            "step": float(self.step),
            "horizon": self.horizon,
            "cells": [[n, s, str(p)] for (n, s), p in self.cells if p != 0],
            "defect": str(self.defect),
        }


@dataclass(frozen=True)
class WHPoint:
    """One evaluation of the upward space-time factor E[q^T w^S].

    ``w`` is a point on the unit circle; heights enter as powers of w in
    lattice units. ``tail_bound`` is a rigorous bound on the truncation
    error of ``value``.
    """

    q: float
    w: complex
    value: complex
    tail_bound: float
    terms: int

    def to_json_obj(self) -> dict:
        return {
            "q": self.q,
            "w": [self.w.real, self.w.imag],
            "value": [self.value.real, self.value.imag],
            "tail_bound": self.tail_bound,
            "terms": self.terms,
        }


def positive_part_dist(m: LatticeMeasure, n: int) -> Pmf:
    """Law of max(X_n, 0): the n-th trace plus the balancing atom at 0."""
    _check_probability(m)
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    t = traces(m, n).entry(n)
    entries = dict(t.items())
    entries[0] = 1 - sum(entries.values(), Fraction(0))
    return Pmf(step=m.step, entries=tuple(entries.items()))


def running_max_dist(m: LatticeMeasure, n: int) -> Pmf:
    """Law of max(0, X_1, ..., X_n) by exact DP on (position, running max)."""
    _check_probability(m)
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    steps = list(m.items())
    # state: (position, running max including the 0 start) -> probability
    state = {(0, 0): Fraction(1)}
    for _ in range(n):
        nxt: dict[tuple[int, int], Fraction] = {}
        for (pos, mx), pr in state.items():
            for jump, p in steps:
                np_ = pos + jump
                key = (np_, mx if mx >= np_ else np_)
                nxt[key] = nxt.get(key, Fraction(0)) + pr * p
        state = nxt
    out: dict[int, Fraction] = {}
    for (_, mx), pr in state.items():
        out[mx] = out.get(mx, Fraction(0)) + pr
    return Pmf(step=m.step, entries=tuple(out.items()))


def ladder_joint_dist(m: LatticeMeasure, horizon: int) -> LadderTable:
    """Joint law of (T1, S1) up to the horizon, defect = P(T1 > horizon).

    The DP carries the sub-probability law of walks still confined to
    (-inf, 0]; mass stepping above 0 at step n is recorded at its landing
    height. Reachable positions are bounded below by horizon * max down
    step, so the state space is finite and no mass is ever dropped.
    """
    _check_probability(m)
    if not isinstance(horizon, int) or horizon < 1:
        raise InvalidInputError(f"horizon must be a positive integer, got {horizon!r}")
    steps = list(m.items())
    alive = {0: Fraction(1)}  # position <= 0 -> probability, never gone above
    cells: dict[tuple[int, int], Fraction] = {}
    for n in range(1, horizon + 1):
        nxt: dict[int, Fraction] = {}
        for pos, pr in alive.items():
            for jump, p in steps:
                np_ = pos + jump
                mass = pr * p
                if np_ > 0:
                    cells[(n, np_)] = cells.get((n, np_), Fraction(0)) + mass
                else:
                    nxt[np_] = nxt.get(np_, Fraction(0)) + mass
        alive = nxt
    defect = sum(alive.values(), Fraction(0))
    return LadderTable(step=m.step, horizon=horizon, cells=tuple(cells.items()), defect=defect)


def required_trace_length(q: float, tol: float) -> int:
    """Smallest N with series tail bound q^(N+1) / ((N+1)(1-q)) <= tol."""
    if not (0 < q < 1):
        raise InvalidInputError(f"q must lie in (0, 1), got {q}")
    if not (tol > 0):
        raise InvalidInputError(f"tol must be positive, got {tol}")
    N = 1
    while _series_tail_bound(q, N) > tol:
        N += 1
    return N


def _series_tail_bound(q: float, N: int) -> float:
    # sum_{n>N} q^n / n <= q^(N+1) / ((N+1)(1-q)); trace masses are <= 1
    return q ** (N + 1) / ((N + 1) * (1.0 - q))


def wh_factor_from_traces(t: TraceSet, q: float, w: complex, tol: float = 1e-8) -> WHPoint:
    """Evaluate E[q^T w^S] from traces via the Spitzer-Baxter series.

    Requires enough trace entries that the series tail q^(N+1)/((N+1)(1-q))
    is below tol; otherwise raises InsufficientDataError naming the needed
    length. The reported tail_bound is the induced bound on the value,
    |exp(-S_N)| * (exp(tail) - 1), which is what truncating the exponent by
    at most `tail` can move 1 - exp(-S).
    """
    if not (0 < q < 1):
        raise InvalidInputError(f"q must lie in (0, 1), got {q}")
    if abs(abs(w) - 1.0) > 1e-9:
        raise InvalidInputError(f"w must lie on the unit circle, got |w| = {abs(w)}")
    needed = required_trace_length(q, tol)
    N = len(t)
    if N < needed:
        raise InsufficientDataError(
            f"trace set has {N} entries but tail bound {tol:g} at q={q} needs N >= {needed}",
            required=needed,
        )
    for n in range(1, N + 1):
        entry = t.entry(n)
        if any(c < 0 for c in entry.coeffs) or entry.total_mass() > 1:
            raise InvalidInputError(
                f"trace entry {n} is not a sub-probability; traces must come "
                "from a probability measure"
            )
    exponent = 0.0 + 0.0j
    for n in range(1, N + 1):
        transform = sum(float(c) * w**site for site, c in t.entry(n).items())
        exponent += (q**n / n) * transform
    one_minus = cmath.exp(-exponent)
    series_tail = _series_tail_bound(q, N)
    value_bound = abs(one_minus) * math.expm1(series_tail)
    return WHPoint(q=q, w=w, value=1.0 - one_minus, tail_bound=value_bound, terms=N)


def wh_factor_from_ladder(table: LadderTable, q: float, w: complex) -> WHPoint:
    """Evaluate E[q^T w^S] directly from the ladder table.

    Epochs beyond the horizon contribute at most q^horizon in total, which
    is the reported tail bound.
    """
    if not (0 < q < 1):
        raise InvalidInputError(f"q must lie in (0, 1), got {q}")
    if abs(abs(w) - 1.0) > 1e-9:
        raise InvalidInputError(f"w must lie on the unit circle, got |w| = {abs(w)}")
    value = 0.0 + 0.0j
    for (n, s), p in table.cells:
        if p != 0:
            value += q**n * w**s * float(p)
    return WHPoint(q=q, w=w, value=value, tail_bound=q**table.horizon, terms=table.horizon)
