"""Logarithmic-integral arithmetic and the bound kernel.

Everything downstream compares the prime count pi(x) against the logarithmic
integral Li(x) through error envelopes of the shape

    eps(x) = a * x * (ln x)^b * exp(-c * sqrt(ln x))
           = a * (x / ln x) * f(x),        f(x) = (ln x)^(b+1) * exp(-c * sqrt(ln x)).

This module provides:

* ``li`` / ``li_inverse`` -- scalar evaluation at a requested decimal
  precision.  Li is computed through the exponential integral,
  li(x) = Ei(ln x), using the convergent series

      Ei(t) = gamma + ln t + sum_{k>=1} t^k / (k * k!)

  (all series terms are positive for t > 0, so there is no cancellation)
  and, for large t, the divergent asymptotic expansion
  Ei(t) ~ e^t/t * sum_j j!/t^j truncated at its smallest term, which is
  used only when its truncation bound certifies the precision target.
  The inverse is a bracketed Newton iteration (the derivative of li is
  1/ln x) that falls back to bisection whenever a step leaves the bracket.

* ``li_array`` / ``li_inverse_array`` -- double-precision vectorized
  counterparts built on ``scipy.special.expi``, used by the bulk scans.
  Near-tie decisions are never taken on this path; callers escalate to
  the scalar high-precision routines instead.

* ``f_kernel`` / ``raw_bound`` / ``x_peak`` -- the kernel factor, the raw
  error envelope, and the kernel's global maximizer
  x_peak = exp(((2(b+1))/c)^2) (equal to 1 exactly when b = -1).

Two Li conventions are supported and differ by the additive constant
li(2) = 1.04516378...: the principal value of the integral from 0, and the
offset integral from 2.  The catalog reproduction runs identify which
convention matches the reference thresholds (the principal value does).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import mpmath
import numpy as np
from scipy.special import expi

from .errors import ConvergenceError, DomainError, ParameterError, PrecisionError

__all__ = [
    "LiConvention",
    "BoundParams",
    "LI_AT_2",
    "MIN_DIGITS",
    "MAX_DIGITS",
    "li",
    "li_hp",
    "li_array",
    "li_inverse",
    "li_inverse_hp",
    "li_inverse_array",
    "f_kernel",
    "f_kernel_hp",
    "raw_bound",
    "raw_bound_hp",
    "x_peak",
]

MIN_DIGITS = 15
MAX_DIGITS = 200
_GUARD_DIGITS = 10

#: li(2) in double precision; the high-precision value comes from ``li2_hp``.
LI_AT_2 = 1.0451637801174927848


class LiConvention(str, Enum):
    """Which Li the bounds are taken against."""

    PRINCIPAL = "principal"        # principal value of the integral from 0
    OFFSET_FROM_TWO = "offset2"    # integral from 2; equals principal - li(2)


@dataclass(frozen=True)
class BoundParams:
    """One error-envelope parameter tuple (a, b, c, x0).

    a  -- amplitude, a > 0
    b  -- log power; the pi-relative machinery additionally needs b >= -1
    c  -- exponential rate, c > 0
    x0 -- onset of guaranteed validity for the raw envelope, x0 >= 2
    """

    a: float
    b: float
    c: float
    x0: float = 2.0

    def __post_init__(self):
        if not (self.a > 0):
            raise ParameterError(f"amplitude a must be positive, got {self.a}")
        if not (self.c > 0):
            raise ParameterError(f"rate c must be positive, got {self.c}")
        if not (self.x0 >= 2):
            raise ParameterError(f"validity onset x0 must be >= 2, got {self.x0}")

    def require_pi_form(self):
        """The sandwich / nth-prime / gap machinery needs b >= -1."""
        if self.b < -1:
            raise ParameterError(
                f"b ={self.b} < -1: the pi-relative forms require b >= -1"
            )
        return self


def _check_digits(digits: int) -> int:
    digits = int(digits)
    if digits < MIN_DIGITS:
        digits = MIN_DIGITS
    if digits > MAX_DIGITS:
        raise PrecisionError(
            f"requested {digits} digits exceeds the supported maximum {MAX_DIGITS}"
        )
    return digits


# ---------------------------------------------------------------------------
# exponential integral, high precision
# ---------------------------------------------------------------------------


def _ei_series(t, digits: int):
    """Convergent series for Ei(t), t > 0.  Certifies the target by construction.

    Terms t^k/(k*k!) are all positive; the summation stops once a term drops
    below 10^-(digits+6) relative to the running sum.  The working precision
    carries `digits + _GUARD_DIGITS` decimal digits, so accumulated rounding
    stays far below the certification threshold.
    """
    with mpmath.workdps(digits + _GUARD_DIGITS):
        t = mpmath.mpf(t)
        tol = mpmath.mpf(10) ** (-(digits + 6))
        s = mpmath.mpf(0)
        term = mpmath.mpf(1)
        for k in range(1, 100000):
            term = term * t / k
            contrib = term / k
            s += contrib
            if contrib < tol * (1 + s):
                break
        else:
            raise PrecisionError(f"Ei series did not converge for t={float(t)}")
        return mpmath.euler + mpmath.log(t) + s


def _ei_asymptotic(t, digits: int):
    """Asymptotic expansion of Ei(t), truncated at the smallest term.

    Returns (value, certified).  The remainder of the alternating-free
    expansion at positive t is bounded by a small multiple of the first
    omitted term; `certified` reports whether that bound meets the target.
    """
    with mpmath.workdps(digits + _GUARD_DIGITS):
        t = mpmath.mpf(t)
        s = mpmath.mpf(1)
        term = mpmath.mpf(1)
        k = 1
        while True:
            nxt = term * k / t
            if nxt >= term or k > int(t):
                break
            term = nxt
            s += term
            k += 1
        err_rel = 2 * term * (k / t) / s
        certified = err_rel < mpmath.mpf(10) ** (-(digits + 2))
        return mpmath.exp(t) / t * s, bool(certified)


def _ei_hp(t, digits: int):
    """Ei(t) for t > 0 at `digits` certified decimal digits."""
    # the asymptotic floor ~ sqrt(2 pi t) e^-t beats the target once
    # t >~ ln(10) * digits; below that the convergent series is used.
    if t > 2.4 * (digits + 8):
        val, ok = _ei_asymptotic(t, digits)
        if ok:
            return val
    return _ei_series(t, digits)


def li2_hp(digits: int = 30):
    """li(2) at high precision (cached per digit count)."""
    digits = _check_digits(digits)
    cached = _LI2_CACHE.get(digits)
    if cached is None:
        with mpmath.workdps(digits + _GUARD_DIGITS):
            cached = _ei_hp(mpmath.log(2), digits)
        _LI2_CACHE[digits] = cached
    return cached


_LI2_CACHE: dict[int, mpmath.mpf] = {}


def li_hp(x, convention: LiConvention = LiConvention.PRINCIPAL, digits: int = 30):
    """Li(x) as an mpmath float at `digits` certified decimal digits, x >= 2."""
    digits = _check_digits(digits)
    if x < 2:
        raise DomainError(f"li requires x >= 2, got {x}")
    with mpmath.workdps(digits + _GUARD_DIGITS):
        val = _ei_hp(mpmath.log(mpmath.mpf(x)), digits)
        if convention is LiConvention.OFFSET_FROM_TWO:
            val = val - li2_hp(digits)
        return val


def li(x, convention: LiConvention = LiConvention.PRINCIPAL, precision: int = 15):
    """Li(x) under the chosen convention.

    Returns a float for precision <= 15, an mpmath float beyond.  Relative
    error is at most 10^-(precision-2); strictly increasing in x.
    """
    val = li_hp(x, convention, max(precision, MIN_DIGITS))
    return float(val) if precision <= 15 else val


def li_array(x, convention: LiConvention = LiConvention.PRINCIPAL) -> np.ndarray:
    """Vectorized double-precision Li over an array of x >= 2 (bulk-scan path)."""
    x = np.asarray(x, dtype=np.float64)
    if x.size and float(x.min()) < 2:
        raise DomainError("li_array requires all x >= 2")
    out = expi(np.log(x))
    if convention is LiConvention.OFFSET_FROM_TWO:
        out = out - LI_AT_2
    return out


# ---------------------------------------------------------------------------
# inverse
# ---------------------------------------------------------------------------


def _li_domain_min(convention: LiConvention) -> float:
    return LI_AT_2 if convention is LiConvention.PRINCIPAL else 0.0


def li_inverse_hp(
    y,
    convention: LiConvention = LiConvention.PRINCIPAL,
    digits: int = 30,
    max_iter: int = 200,
):
    """Solve Li(x) = y by safeguarded Newton iteration, returning mpmath x.

    A bracket [lo, hi] with Li(lo) <= y <= Li(hi) is maintained throughout;
    any Newton step x + (y - Li(x)) * ln x that lands outside the open
    bracket is replaced by bisection, which guarantees convergence despite
    the flat derivative 1/ln x near the left edge.
    """
    digits = _check_digits(digits)
    y = float(y)
    if y <= _li_domain_min(convention):
        raise DomainError(
            f"li_inverse argument {y} is below the {convention.value} range"
        )
    with mpmath.workdps(digits + _GUARD_DIGITS):
        target = mpmath.mpf(y)
        if convention is LiConvention.OFFSET_FROM_TWO:
            target = target + li2_hp(digits)  # solve in principal terms

        def g(x):
            return _ei_hp(mpmath.log(x), digits)

        tol = mpmath.mpf(10) ** (-(digits - 2)) * max(1.0, abs(y))
        lo = mpmath.mpf(2)
        if y >= 6:
            x = mpmath.mpf(y) * (mpmath.log(y) + mpmath.log(mpmath.log(y)))
        else:
            x = mpmath.mpf(10)
        hi = max(x, lo + 1)
        while g(hi) < target:
            hi *= 2
        x = min(max(x, lo), hi)
        for _ in range(max_iter):
            gx = g(x)
            if abs(gx - target) <= tol:
                return x
            if gx < target:
                lo = x
            else:
                hi = x
            step = x + (target - gx) * mpmath.log(x)
            x = step if lo < step < hi else (lo + hi) / 2
        raise ConvergenceError(
            f"li_inverse did not converge after {max_iter} iterations (y={y})"
        )


def li_inverse(
    y,
    convention: LiConvention = LiConvention.PRINCIPAL,
    precision: int = 15,
    max_iter: int = 200,
):
    """Inverse of ``li``: returns x with |Li(x) - y| <= 10^-(precision-2) * max(1, y)."""
    val = li_inverse_hp(y, convention, max(precision, MIN_DIGITS), max_iter)
    return float(val) if precision <= 15 else val


def li_inverse_array(
    y,
    convention: LiConvention = LiConvention.PRINCIPAL,
    rtol: float = 1e-12,
    max_iter: int = 80,
) -> np.ndarray:
    """Vectorized double-precision Li inverse (bulk-scan path).

    Entries at or below the convention's domain minimum come back as NaN;
    callers clamp those per their own contracts.  Newton from the classical
    overestimate y (ln y + ln ln y) converges monotonically from below after
    the first step because Li is concave; iterates are clamped to x >= 2.
    """
    y = np.asarray(y, dtype=np.float64)
    out = np.full(y.shape, np.nan)
    z = y + (LI_AT_2 if convention is LiConvention.OFFSET_FROM_TWO else 0.0)
    ok = z > LI_AT_2 + 1e-12
    if not ok.any():
        return out
    z = z[ok]
    zsafe = np.maximum(z, 6.0)
    x = np.where(z >= 6.0, z * (np.log(zsafe) + np.log(np.log(zsafe))), 10.0)
    x = np.maximum(x, 2.0 + 1e-9)
    for _ in range(max_iter):
        dx = (z - expi(np.log(x))) * np.log(x)
        x = np.maximum(x + dx, 2.0 + 1e-12)
        if np.all(np.abs(dx) <= rtol * np.maximum(x, 1.0)):
            break
    else:
        raise ConvergenceError("li_inverse_array did not converge")
    out[ok] = x
    return out


# ---------------------------------------------------------------------------
# kernel factor, raw envelope, peak
# ---------------------------------------------------------------------------


def f_kernel(x, b: float, c: float):
    """Kernel factor f(x) = (ln x)^(b+1) * exp(-c * sqrt(ln x)) for x > 1.

    Accepts scalars or arrays (arrays must have all entries > 1).
    """
    if np.ndim(x) == 0:
        if x <= 1:
            raise DomainError(f"f_kernel requires x > 1, got {x}")
        t = math.log(x)
        return t ** (b + 1.0) * math.exp(-c * math.sqrt(t))
    x = np.asarray(x, dtype=np.float64)
    if x.size and float(x.min()) <= 1:
        raise DomainError("f_kernel requires all x > 1")
    t = np.log(x)
    return t ** (b + 1.0) * np.exp(-c * np.sqrt(t))


def f_kernel_hp(x, b: float, c: float, digits: int = 30):
    """High-precision kernel factor (escalation path)."""
    digits = _check_digits(digits)
    if x <= 1:
        raise DomainError(f"f_kernel requires x > 1, got {x}")
    with mpmath.workdps(digits + _GUARD_DIGITS):
        t = mpmath.log(mpmath.mpf(x))
        return t ** mpmath.mpf(b + 1.0) * mpmath.exp(-mpmath.mpf(c) * mpmath.sqrt(t))


def raw_bound(x, p: BoundParams):
    """Raw envelope a * x * (ln x)^b * exp(-c sqrt(ln x)) for x > 1 (any b).

    Accepts scalars or arrays, like ``f_kernel``.
    """
    if np.ndim(x) == 0:
        if x <= 1:
            raise DomainError(f"raw_bound requires x > 1, got {x}")
        t = math.log(x)
        return p.a * x * t**p.b * math.exp(-p.c * math.sqrt(t))
    x = np.asarray(x, dtype=np.float64)
    if x.size and float(x.min()) <= 1:
        raise DomainError("raw_bound requires all x > 1")
    t = np.log(x)
    return p.a * x * t**p.b * np.exp(-p.c * np.sqrt(t))


def raw_bound_hp(x, p: BoundParams, digits: int = 30):
    """High-precision raw envelope (escalation path)."""
    digits = _check_digits(digits)
    if x <= 1:
        raise DomainError(f"raw_bound requires x > 1, got {x}")
    with mpmath.workdps(digits + _GUARD_DIGITS):
        xm = mpmath.mpf(x)
        t = mpmath.log(xm)
        return (
            mpmath.mpf(p.a)
            * xm
            * t ** mpmath.mpf(p.b)
            * mpmath.exp(-mpmath.mpf(p.c) * mpmath.sqrt(t))
        )


def x_peak(b: float, c: float) -> float:
    """Global maximizer of the kernel factor: exp(((2(b+1))/c)^2), b >= -1.

    Equals 1 exactly when b = -1 (the kernel is then strictly decreasing).
    Returns inf if the peak overflows the double range.
    """
    if b < -1:
        raise DomainError(f"x_peak requires b >= -1, got b={b}")
    if not (c > 0):
        raise ParameterError(f"rate c must be positive, got {c}")
    if b == -1:
        return 1.0
    try:
        return math.exp((2.0 * (b + 1.0) / c) ** 2)
    except OverflowError:
        return math.inf


def raw_bound_critical_points(p: BoundParams) -> list[float]:
    """Interior critical points of the raw envelope on x > 1.

    eps'(x) vanishes where s^2 - (c/2) s + b = 0 with s = sqrt(ln x).  For
    b < 0 there is exactly one root (a local minimum of eps); for b >= 0
    there are zero or two.  These matter when taking the minimum of the
    envelope over a prime gap near x < 5; elsewhere eps is monotone on any
    single gap.
    """
    disc = (p.c / 2.0) ** 2 - 4.0 * p.b
    if disc < 0:
        return []
    root = math.sqrt(disc)
    out = []
    for s in ((p.c / 2.0 - root) / 2.0, (p.c / 2.0 + root) / 2.0):
        if s > 0:
            out.append(math.exp(s * s))
    return sorted(set(out))
