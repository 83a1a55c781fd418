"""Parameter-level bound transformations and derived enclosures.

Operations here never touch primes except through a supplied
:class:`~primebounds.prime_engine.PrimeEngine`; everything else is pure
arithmetic on bound parameters (a, b, c, x0).

* ``relax`` -- trade a smaller log power bt <= b and rate ct < c for a
  larger amplitude while keeping the envelope dominating everywhere:

      at = a * (2(b - bt) / (e (c - ct)))^(2(b - bt)),
      x_max = exp(4 (b - bt)^2 / (c - ct)^2),

  with equality of the two envelopes only at x_max.

* ``inflate_a`` -- smallest grid amplitude making the raw envelope hold at
  every prime-gap audit point below a region where an envelope of the same
  shape is already guaranteed.

* ``pi_sandwich`` -- the two-sided enclosure Li/(1 + a f) < pi(x) <
  Li/(1 - a f); the upper side is reported unbounded (not an error) when
  a f(x) >= 1, which happens for large amplitudes at small x.

* ``nth_prime_interval`` -- Li^-1(n [1 -+ a f(n ln n)]) brackets for p_n,
  with the lower side clamped to the trivial bound 2 when its argument
  falls outside the Li range.

* ``n_star_ceiling`` -- max(pi(x0), 7, pi((1 + 1/e) x_peak)), the a-priori
  ceiling for the nth-prime onset index.

* ``gap_upper_bound`` -- Li^-1(Li(p_n) + 2 a n f(n ln n)), an upper bound
  for the next prime obtained from the triangle inequality applied at both
  ends of the gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EngineRangeError, ParameterError
from .li_math import (
    LI_AT_2,
    BoundParams,
    LiConvention,
    f_kernel,
    li,
    li_array,
    li_inverse,
    x_peak,
)
from .prime_engine import PrimeEngine

__all__ = [
    "RelaxedBound",
    "PiSandwich",
    "NthPrimeInterval",
    "NStarCeiling",
    "relax",
    "inflate_a",
    "pi_sandwich",
    "nth_prime_interval",
    "n_star_ceiling",
    "gap_upper_bound",
]

E_INV = math.exp(-1.0)


@dataclass(frozen=True)
class RelaxedBound:
    """A dominating envelope derived from ``base`` by the relaxation transform."""

    base: BoundParams
    tilde_a: float
    tilde_b: float
    tilde_c: float
    x_max: float   # unique touching point of base and relaxed envelope (1.0 if degenerate)

    def as_params(self, x0: float | None = None) -> BoundParams:
        """The relaxed tuple as plain parameters; validity onset defaults to the base's."""
        return BoundParams(self.tilde_a, self.tilde_b, self.tilde_c,
                           self.base.x0 if x0 is None else x0)


@dataclass(frozen=True)
class PiSandwich:
    """Two-sided enclosure of pi(x); ``upper`` is inf when the bound is vacuous."""

    lower: float
    upper: float
    x: float
    params: BoundParams

    def __post_init__(self):
        if math.isfinite(self.upper) and not (self.lower < self.upper):
            raise ParameterError(
                f"degenerate sandwich at x={self.x}: [{self.lower}, {self.upper}]"
            )

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.upper)


@dataclass(frozen=True)
class NthPrimeInterval:
    """Bracket for the n-th prime; ``lower`` is clamped to 2 when vacuous."""

    n: int
    lower: float
    upper: float
    params: BoundParams
    lower_clamped: bool = False

    def __post_init__(self):
        if self.lower > self.upper:
            raise ParameterError(f"inverted bracket for n={self.n}")
        if self.lower < 2:
            raise ParameterError(f"bracket lower bound below 2 for n={self.n}")

    def contains(self, p: float) -> bool:
        return self.lower < p < self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class NStarCeiling:
    """A-priori ceiling for the nth-prime onset index."""

    value: int
    estimate: bool          # True when pi((1+1/e) x_peak) was estimated as y/ln y
    pi_x0: int
    pi_peak_term: int


def relax(base: BoundParams, tilde_b: float, tilde_c: float) -> RelaxedBound:
    """Relax ``base`` to log power ``tilde_b`` <= b and rate ``tilde_c`` < c.

    The returned amplitude makes the relaxed envelope dominate the base one
    for every x > 1, with equality only at ``x_max``.  When tilde_b == b the
    transform is degenerate: the amplitude is unchanged and the (open)
    touching point collapses to x -> 1.
    """
    if tilde_b > base.b:
        raise ParameterError(f"tilde_b={tilde_b} must not exceed b={base.b}")
    if not (0 < tilde_c < base.c):
        raise ParameterError(
            f"tilde_c={tilde_c} must lie in (0, c={base.c}); the bounded-factor "
            "argument fails otherwise"
        )
    db = base.b - tilde_b
    dc = base.c - tilde_c
    if db == 0:
        return RelaxedBound(base, base.a, tilde_b, tilde_c, 1.0)
    tilde_a = base.a * (2.0 * db / (math.e * dc)) ** (2.0 * db)
    xm = math.exp(4.0 * db * db / (dc * dc))
    return RelaxedBound(base, tilde_a, tilde_b, tilde_c, xm)


def _raw_envelope_shape(x: np.ndarray, b: float, c: float) -> np.ndarray:
    t = np.log(x)
    return x * t**b * np.exp(-c * np.sqrt(t))


def inflate_a(
    b: float,
    c: float,
    guaranteed_from: float,
    engine: PrimeEngine,
    target_x0: float = 2.0,
    grid: float = 1e-4,
    convention: LiConvention = LiConvention.PRINCIPAL,
) -> float:
    """Least grid amplitude making |pi - Li| < a x (ln x)^b e^(-c sqrt(ln x))
    hold at every prime-gap audit point on [target_x0, guaranteed_from).

    ``guaranteed_from`` is the abscissa above which an envelope of this shape
    is already known to hold, so the scan stops there.  The result is the
    exact pointwise requirement rounded up to the grid, bumped one step when
    rounding lands exactly on the requirement (a zero margin counts as a
    violation).  An empty scan range returns the grid floor.
    """
    if target_x0 < 2:
        raise ParameterError(f"target_x0 must be >= 2, got {target_x0}")
    if guaranteed_from > engine.limit:
        raise EngineRangeError(
            f"guaranteed_from={guaranteed_from} exceeds engine limit {engine.limit}"
        )
    if guaranteed_from <= target_x0:
        return grid

    k_lo = max(engine.prime_count(int(math.floor(target_x0))), 1)
    k_hi = engine.prime_count(int(math.floor(guaranteed_from)))  # p_{k_hi} <= gf
    if k_hi < 1:
        return grid
    ps = engine.primes_slice(k_lo, min(k_hi + 1, engine.pi_limit)).astype(np.float64)
    k = np.arange(k_lo, k_lo + len(ps))
    lhs = np.abs(li_array(ps, convention) - k)
    shape = _raw_envelope_shape(ps, b, c)

    # left audit points x = p_k on [target_x0, gf); right audit points are the
    # limits x -> p_{k+1}^- and reuse the same arrays shifted by one
    left_ok = (ps >= target_x0) & (ps < guaranteed_from)
    need = [np.max(lhs[left_ok] / shape[left_ok])] if left_ok.any() else []
    right_ok = (ps[1:] <= guaranteed_from) & (ps[1:] > target_x0)
    if right_ok.any():
        # pi stays at k across [p_k, p_{k+1}); the limit value of |pi - Li| is
        # |k - Li(p_{k+1})| while the envelope is continuous
        need.append(np.max(np.abs(li_array(ps[1:][right_ok], convention) - k[:-1][right_ok])
                           / shape[1:][right_ok]))
    if not need:
        return grid
    a_min = float(max(need))
    steps = math.ceil(a_min / grid)
    if steps * grid <= a_min:          # strict inequality required
        steps += 1
    return steps * grid


def pi_sandwich(
    x: float,
    p: BoundParams,
    convention: LiConvention = LiConvention.PRINCIPAL,
    precision: int = 15,
) -> PiSandwich:
    """Enclose pi(x) by Li(x)/(1 + a f(x)) and Li(x)/(1 - a f(x)), x >= 2."""
    p.require_pi_form()
    lix = float(li(x, convention, precision))
    af = p.a * f_kernel(x, p.b, p.c)
    lower = lix / (1.0 + af)
    upper = lix / (1.0 - af) if 1.0 - af > 0 else math.inf
    return PiSandwich(lower, upper, float(x), p)


def nth_prime_interval(
    n: int,
    p: BoundParams,
    convention: LiConvention = LiConvention.PRINCIPAL,
    precision: int = 15,
) -> NthPrimeInterval:
    """Bracket p_n between Li^-1(n [1 - a f(n ln n)]) and Li^-1(n [1 + a f(n ln n)])."""
    p.require_pi_form()
    n = int(n)
    if n < 2:
        raise ParameterError(f"nth_prime_interval needs n >= 2, got {n}")
    af = p.a * f_kernel(n * math.log(n), p.b, p.c)
    upper = float(li_inverse(n * (1.0 + af), convention, precision))
    lo_arg = n * (1.0 - af)
    domain_min = LI_AT_2 if convention is LiConvention.PRINCIPAL else 0.0
    if lo_arg > domain_min:
        lower, clamped = float(li_inverse(lo_arg, convention, precision)), False
    else:
        lower, clamped = 2.0, True
    return NthPrimeInterval(n, lower, upper, p, clamped)


def n_star_ceiling(p: BoundParams, engine: PrimeEngine) -> NStarCeiling:
    """max(pi(x0), 7, pi((1 + 1/e) x_peak)), with a flagged y/ln y estimate
    for the peak term when it lies beyond the engine limit."""
    p.require_pi_form()
    pi_x0 = engine.prime_count(int(math.floor(p.x0)))
    y = (1.0 + E_INV) * x_peak(p.b, p.c)
    if y <= engine.limit:
        peak_term, estimate = engine.prime_count(int(math.floor(y))), False
    else:
        peak_term, estimate = int(y / math.log(y)), True
    return NStarCeiling(max(pi_x0, 7, peak_term), estimate, pi_x0, peak_term)


def gap_upper_bound(
    n: int,
    p_n: int,
    p: BoundParams,
    convention: LiConvention = LiConvention.PRINCIPAL,
    precision: int = 15,
) -> float:
    """Upper bound for p_{n+1}: Li^-1(Li(p_n) + 2 a n f(n ln n)).

    The caller asserts that ``p_n`` really is the n-th prime; the bound is
    meaningful from the row's empirical onset index upward.
    """
    p.require_pi_form()
    n = int(n)
    if n < 2:
        raise ParameterError(f"gap_upper_bound needs n >= 2, got {n}")
    target = float(li(p_n, convention, precision)) + 2.0 * p.a * n * f_kernel(
        n * math.log(n), p.b, p.c
    )
    return float(li_inverse(target, convention, precision))
