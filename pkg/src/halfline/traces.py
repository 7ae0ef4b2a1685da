"""Positive-half-line traces of convolution powers and exact identity checks.

The n-th trace of a measure m is the restriction of its n-fold convolution
power to (0, infinity). Two exact identities are verified here:

  binomial:     m^{*n} = sum_j C(n,j) * (m_+)^{*j} * (m_-)^{*(n-j)}
  restriction:  (pi * s)_+ = (pi_+ * s)_+   whenever s is supported in (-inf, 0]

plus the consistency statement that equal traces up to N force equal positive
parts and equal mixed traces (m_+)^{*n} * (m_-)^{*k} restricted to (0, inf)
for n = 1..N-1. A failure of a conclusion while the premise holds is a
library bug and raises IdentityViolationError.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import IdentityViolationError, InvalidInputError
from .measures import LatticeMeasure, convolve, linear_combine, power, restrict_pos

__all__ = [
    "TraceSet",
    "LemmaReport",
    "traces",
    "mixed_trace",
    "verify_lemma",
    "binomial_check",
    "restriction_identity_check",
]


@dataclass(frozen=True)
class TraceSet:
    """Sequence of traces t_n = (m^{*n})_+ for n = 1..N (1-based via entry()).

    ``base_max_site``, when known, is the largest positive site of the base
    measure; entry n then must be supported in [1, n * base_max_site].
    """

    step: float
    entries: tuple
    base_max_site: int | None = None

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        for n, t in enumerate(entries, start=1):
            if not isinstance(t, LatticeMeasure):
                raise InvalidInputError(f"trace entry {n} is not a LatticeMeasure")
            if not t.is_zero:
                if t.step != self.step:
                    raise InvalidInputError(
                        f"trace entry {n} lives on step {t.step}, trace set on {self.step}"
                    )
                if t.min_site < 1:
                    raise InvalidInputError(
                        f"trace entry {n} has support at site {t.min_site} <= 0"
                    )
                if self.base_max_site is not None and t.max_site > n * self.base_max_site:
                    raise InvalidInputError(
                        f"trace entry {n} reaches site {t.max_site}, beyond "
                        f"{n} * {self.base_max_site}"
                    )

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, n: int) -> LatticeMeasure:
        """1-based access: entry(n) is the trace of the n-th convolution power."""
        if not 1 <= n <= len(self.entries):
            raise InvalidInputError(f"trace index {n} outside 1..{len(self.entries)}")
        return self.entries[n - 1]

    def to_json_obj(self) -> dict:
        obj = {
            "step": float(self.step),
            "entries": [t.to_json_obj() for t in self.entries],
        }
        if self.base_max_site is not None:
            obj["base_max_site"] = self.base_max_site
        return obj

    @classmethod
    def from_json_obj(cls, obj) -> "TraceSet":
        if not isinstance(obj, dict):
            raise InvalidInputError("trace set JSON must be an object")
        for key in ("step", "entries"):
            if key not in obj:
                raise InvalidInputError(f"trace set JSON missing field {key!r}")
        step = obj["step"]
        step = float(step)
        entries = obj["entries"]
        if not isinstance(entries, list):
            raise InvalidInputError("trace set JSON field 'entries' must be an array")
        parsed = tuple(LatticeMeasure.from_json_obj(e) for e in entries)
        base = obj.get("base_max_site")
        if base is not None:
            base = int(base)
        return cls(step=step, entries=parsed, base_max_site=base)


def traces(m: LatticeMeasure, N: int) -> TraceSet:
    """Exact traces (m^{*n})_+ for n = 1..N."""
    if not isinstance(N, int) or N < 1:
        raise InvalidInputError(f"trace count must be a positive integer, got {N!r}")
    entries = []
    p = m
    for _ in range(N):
        entries.append(restrict_pos(p))
        p = convolve(p, m)
    base_max = m.max_site if (m.max_site or 0) > 0 else 0
    return TraceSet(step=m.step, entries=tuple(entries), base_max_site=base_max)


def mixed_trace(m: LatticeMeasure, n: int, k: int) -> LatticeMeasure:
    """((m_+)^{*n} * (m_-)^{*k})_+ exactly."""
    plus = power(m.positive_part(), n)
    minus = power(m.nonpositive_part(), k)
    return restrict_pos(convolve(plus, minus))


@dataclass(frozen=True)
class LemmaReport:
    """Outcome of a trace-agreement check between two measures.

    premise_holds is False when some trace pair differs; then
    ``premise_mismatch_n`` names the first failing power and no conclusion
    is evaluated. When the premise holds, the recorded conclusions were all
    verified exactly (a violation would have raised instead).
    """

    N: int
    max_k: int
    premise_holds: bool
    premise_mismatch_n: int | None
    positive_parts_equal: bool | None
    mixed_cells_checked: int
    message: str

    def to_json_obj(self) -> dict:
        return {
            "N": self.N,
            "max_k": self.max_k,
            "premise_holds": self.premise_holds,
            "premise_mismatch_n": self.premise_mismatch_n,
            "positive_parts_equal": self.positive_parts_equal,
            "mixed_cells_checked": self.mixed_cells_checked,
            "message": self.message,
        }


def verify_lemma(
    mu: LatticeMeasure,
    nu: LatticeMeasure,
    N: int,
    max_k: int | None = None,
) -> LemmaReport:
    """Check trace agreement up to N and, when it holds, its consequences.

    Consequences verified exactly: equal positive parts, and equal mixed
    traces for n = 1..N-1, k = 1..max_k (default 2N; the full statement
    ranges over all k, which has no finite cut). A conclusion failing while
    the premise holds raises IdentityViolationError: it cannot happen for
    correct arithmetic.
    """
    if not isinstance(N, int) or N < 1:
        raise InvalidInputError(f"N must be a positive integer, got {N!r}")
    if not (mu.is_zero or nu.is_zero) and mu.step != nu.step:
        raise InvalidInputError(f"mismatched lattice steps: {mu.step} vs {nu.step}")
    if max_k is None:
        max_k = 2 * N
    if max_k < 1:
        raise InvalidInputError(f"max_k must be >= 1, got {max_k}")

    t_mu = traces(mu, N)
    t_nu = traces(nu, N)
    for n in range(1, N + 1):
        if t_mu.entry(n) != t_nu.entry(n):
            return LemmaReport(
                N=N,
                max_k=max_k,
                premise_holds=False,
                premise_mismatch_n=n,
                positive_parts_equal=None,
                mixed_cells_checked=0,
                message=f"traces differ at n={n}",
            )

    if mu.positive_part() != nu.positive_part():
        raise IdentityViolationError(
            "traces agree but positive parts differ; this is a library bug"
        )

    mu_plus, mu_minus = mu.positive_part(), mu.nonpositive_part()
    nu_plus, nu_minus = nu.positive_part(), nu.nonpositive_part()
    cells = 0
    for n in range(1, N):
        left_base = power(mu_plus, n)
        right_base = power(nu_plus, n)
        left_k = LatticeMeasure.dirac(0, 1, mu.step)
        right_k = LatticeMeasure.dirac(0, 1, nu.step)
        for k in range(1, max_k + 1):
            left_k = convolve(left_k, mu_minus)
            right_k = convolve(right_k, nu_minus)
            lhs = restrict_pos(convolve(left_base, left_k))
            rhs = restrict_pos(convolve(right_base, right_k))
            if lhs != rhs:
                raise IdentityViolationError(
                    f"mixed trace mismatch at n={n}, k={k} while traces agree; "
                    "this is a library bug"
                )
            cells += 1

    return LemmaReport(
        N=N,
        max_k=max_k,
        premise_holds=True,
        premise_mismatch_n=None,
        positive_parts_equal=True,
        mixed_cells_checked=cells,
        message=f"premise holds; positive parts equal; {cells} mixed cells verified",
    )


def binomial_check(m: LatticeMeasure, n: int) -> bool:
    """Verify m^{*n} = sum_j C(n,j) (m_+)^{*j} * (m_-)^{*(n-j)} exactly."""
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    plus = m.positive_part()
    minus = m.nonpositive_part()
    terms = []
    for j in range(n + 1):
        prod = convolve(power(plus, j), power(minus, n - j))
        terms.append((comb(n, j), prod))
    expansion = linear_combine(terms)
    return expansion == power(m, n)


def restriction_identity_check(pi: LatticeMeasure, sigma_minus: LatticeMeasure) -> bool:
    """Verify (pi * s)_+ = (pi_+ * s)_+ for s supported in (-inf, 0]."""
    if not sigma_minus.positive_part().is_zero:
        raise InvalidInputError(
            "sigma_minus has mass on (0, infinity); it must be supported in (-inf, 0]"
        )
    lhs = restrict_pos(convolve(pi, sigma_minus))
    rhs = restrict_pos(convolve(pi.positive_part(), sigma_minus))
    return lhs == rhs
