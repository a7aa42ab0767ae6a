"""Certified series sums and inequality checks.

Every infinite sum in scope is returned as a SeriesResult: an exact partial
sum plus a tail bound proved by explicit geometric domination (a rational
ratio < 1 valid beyond a computed index), never by asymptotic reasoning.
The quadrant of inequality checks (Toeplitz/Schur bound, the summation
chain, the shift-norm ratios) runs in exact rational or quadratic-field
arithmetic so that a reported pass is a certificate, not an observation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import GateError
from .fusion import GrowthParam, a_param, ao_dims, growth_floor
from .scalars import QQ, Interval, Radical

__all__ = [
    "SeriesResult",
    "rd_norm_sq",
    "nonuni_norm_sq",
    "toeplitz_schur_bound",
    "truncated_toeplitz_norm",
    "orientation_chain_check",
    "ChainCheckResult",
    "s_norm_ratio",
    "dim_ratio_domination",
]


@dataclass(frozen=True)
class SeriesResult:
    """Truncated series with a certified geometric tail.

    The true sum lies in [partial, partial + tail_bound]; term ratios are
    at most `ratio` (< 1) from index `crossover` on.
    """

    partial: object
    tail_bound: object
    terms_used: int
    ratio: object
    crossover: int

    @property
    def hi(self):
        return self.partial + self.tail_bound

    @property
    def interval(self) -> Interval:
        return Interval(self.partial, self.hi)

    def __float__(self):
        return float(Fraction(self.partial))


def _even_exponent(s) -> int:
    """The decay weights (i+2)^{2s} stay rational only when 2s is a whole number."""
    s = QQ(s)
    twice = 2 * s
    if twice.denominator != 1 or twice < 0:
        raise ValueError(
            f"s = {s} not supported: need 2s to be a nonnegative integer "
            "for exact weights"
        )
    return int(twice)


def rd_norm_sq(dimq, s, radius: int) -> SeriesResult:
    """Rapid-decay norm series (2/m_1) * sum_i (i+2)^{2s} / (m_i m_{i+1}).

    Requires generator dimension >= 3 so the dimensions grow geometrically;
    the tail is dominated by ratio ((R+4)/(R+3))^{2s} / rho^2 < 1.
    """
    e = _even_exponent(s)
    dimq = QQ(dimq)
    if dimq < 3:
        raise GateError(
            f"generator quantum dimension {dimq} < 3: series convergence needs "
            "geometric dimension growth (dimension-2 generators are excluded)"
        )
    if radius < 0:
        raise ValueError("radius must be >= 0")
    rho = growth_floor(dimq)
    dims = ao_dims(dimq, radius + 4)
    m1 = dims[1]
    partial = QQ(0)
    for i in range(radius + 1):
        partial += QQ((i + 2) ** e) / (dims[i] * dims[i + 1])
    partial *= QQ(2) / m1
    ratio = QQ((radius + 4) ** e, (radius + 3) ** e) / (rho * rho)
    if ratio >= 1:
        raise ValueError(
            f"radius {radius} too small to certify the tail (ratio {ratio} >= 1); "
            "increase it"
        )
    t_next = (QQ(2) / m1) * QQ((radius + 3) ** e) / (dims[radius + 1] * dims[radius + 2])
    tail = t_next / (1 - ratio)
    return SeriesResult(partial, tail, radius + 1, ratio, radius + 1)


def nonuni_norm_sq(s, r, dimq, radius: int) -> SeriesResult:
    """Weighted variant (2/m_1) * sum_i r^{2i+2} (i+2)^{2s} / (m_i m_{i+1}).

    Admissible only when the weight base r stays strictly below the growth
    parameter a of dimq; the gate is decided exactly in the quadratic field.
    """
    e = _even_exponent(s)
    r = QQ(r)
    dimq = QQ(dimq)
    if r <= 0:
        raise ValueError("r must be positive")
    if dimq <= 2:
        raise GateError(f"dimq = {dimq} <= 2 has growth parameter <= 1; series diverges")
    growth = a_param(dimq)
    if not (growth.exact > Radical.from_rational(r)):
        raise GateError(
            f"weight base r = {r} is not below the growth parameter a of dimq = {dimq}; "
            "the weighted series is not summable"
        )
    # a rational floor strictly above r: refine the enclosure until it separates
    tol = QQ(1, 10**12)
    rho = a_param(dimq, tol).interval.lo
    while rho <= r:
        tol /= QQ(10**6)
        rho = a_param(dimq, tol).interval.lo
    if not (rho > 1 and rho + 1 / rho <= dimq):
        raise RuntimeError(f"growth floor certification failed for dimq = {dimq}")

    dims = ao_dims(dimq, radius + 4)
    m1 = dims[1]
    partial = QQ(0)
    for i in range(radius + 1):
        partial += r ** (2 * i + 2) * QQ((i + 2) ** e) / (dims[i] * dims[i + 1])
    partial *= QQ(2) / m1
    ratio = (r / rho) ** 2 * QQ((radius + 4) ** e, (radius + 3) ** e)
    if ratio >= 1:
        raise ValueError(
            f"radius {radius} too small to certify the tail (ratio {ratio} >= 1); "
            "increase it"
        )
    t_next = (QQ(2) / m1) * r ** (2 * radius + 4) * QQ((radius + 3) ** e) \
        / (dims[radius + 1] * dims[radius + 2])
    tail = t_next / (1 - ratio)
    return SeriesResult(partial, tail, radius + 1, ratio, radius + 1)


# ---------------------------------------------------------------------------
# Toeplitz decay matrix (a^{-|k-l|})
# ---------------------------------------------------------------------------

def _as_interval(a) -> Interval:
    if isinstance(a, Interval):
        return a
    if isinstance(a, GrowthParam):
        return a.interval
    if isinstance(a, Radical):
        return a.interval(96)
    return Interval.point(QQ(a))


def toeplitz_schur_bound(a) -> Interval:
    """Row-sum Schur bound (1 + 1/a) / (1 - 1/a) for the decay matrix; needs a > 1."""
    ia = _as_interval(a)
    if not ia.lo > 1:
        raise ValueError(f"need a > 1, got enclosure {ia}")
    inv = ia.inverse()
    return (Interval.point(1) + inv) / (Interval.point(1) - inv)


def truncated_toeplitz_norm(a, size: int, power_iters: int = 200) -> Interval:
    """Certified enclosure of the largest eigenvalue of (a^{-|k-l|})_{k,l < size}.

    A float power iteration supplies a candidate positive vector; the
    enclosure is then a single exact interval mat-vec (the two-sided
    eigenvalue bounds min/max of (Ax)_i / x_i for entrywise nonnegative
    symmetric matrices).
    """
    ia = _as_interval(a)
    if not ia.lo > 1:
        raise ValueError(f"need a > 1, got enclosure {ia}")
    if size < 1:
        raise ValueError("size must be >= 1")
    if size == 1:
        return Interval.point(1)
    inv = ia.inverse()
    powers = [Interval.point(1)]
    for _ in range(size - 1):
        powers.append(powers[-1] * inv)

    x = np.ones(size)
    mid = float(inv.mid)
    fmat = mid ** np.abs(np.subtract.outer(np.arange(size), np.arange(size)))
    for _ in range(power_iters):
        y = fmat @ x
        x = y / np.linalg.norm(y)
    xr = [QQ(Fraction(float(v)).limit_denominator(1 << 40)) for v in x]
    xr = [v if v > 0 else QQ(1, 1 << 40) for v in xr]

    lo = None
    hi = None
    for i in range(size):
        acc = Interval.point(0)
        for j in range(size):
            acc = acc + powers[abs(i - j)] * xr[j]
        ratio = acc / Interval.point(xr[i])
        lo = ratio.lo if lo is None else min(lo, ratio.lo)
        hi = ratio.hi if hi is None else max(hi, ratio.hi)
    return Interval(max(lo, QQ(1)), hi)  # diagonal alone forces the norm >= 1


# ---------------------------------------------------------------------------
# the summation-inequality chain
# ---------------------------------------------------------------------------

@dataclass
class ChainCheckResult:
    ok: bool
    per_k_ok: list
    aggregate_ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def orientation_chain_check(a, xs: Sequence, tighten=QQ(1)) -> ChainCheckResult:
    """Verify the geometric-weight Cauchy-Schwarz chain on nonnegative data.

    For every k:   (sum_{j>=k} a^{k-j} x_j)^2 <= C * sum_{j>=k} a^{k-j} x_j^2
    and aggregated: sum_k (sum_{j>=k} a^{k-j} x_j)^2 <= C^2 * sum_j x_j^2,
    with C = tighten / (1 - 1/a).  tighten = 1 is the valid inequality (it
    must never fail); tighten < 1 is the mutation hook for negative controls.

    All comparisons are certified (interval endpoints in the right
    direction); `a` may be rational, an Interval, a Radical or GrowthParam.
    """
    ia = _as_interval(a)
    if not ia.lo > 1:
        raise ValueError(f"need a > 1, got enclosure {ia}")
    xs = [QQ(x) for x in xs]
    if any(x < 0 for x in xs):
        raise ValueError("entries must be nonnegative")
    n = len(xs)
    inv = ia.inverse()
    one = Interval.point(1)
    constant = Interval.point(QQ(tighten)) / (one - inv)

    powers = [one]
    for _ in range(max(n - 1, 0)):
        powers.append(powers[-1] * inv)

    per_k_ok = []
    agg_lhs = Interval.point(0)
    detail = ""
    for k in range(n):
        s1 = Interval.point(0)
        s2 = Interval.point(0)
        for j in range(k, n):
            s1 = s1 + powers[j - k] * xs[j]
            s2 = s2 + powers[j - k] * (xs[j] * xs[j])
        lhs = s1 * s1
        rhs = constant * s2
        ok = lhs.hi <= rhs.lo
        if not ok and not detail:
            detail = f"per-k bound violated at k={k}: lhs in {lhs}, rhs in {rhs}"
        per_k_ok.append(ok)
        agg_lhs = agg_lhs + lhs
    agg_rhs = constant * constant * sum((x * x for x in xs), QQ(0))
    aggregate_ok = agg_lhs.hi <= agg_rhs.lo
    if not aggregate_ok and not detail:
        detail = f"aggregate bound violated: lhs in {agg_lhs}, rhs in {agg_rhs}"
    return ChainCheckResult(all(per_k_ok) and aggregate_ok, per_k_ok, aggregate_ok, detail)


# ---------------------------------------------------------------------------
# shift-norm scalars on the half line
# ---------------------------------------------------------------------------

def _half_line_dimq(source):
    from .fusion import ORTHOGONAL, QuantumGroupSpec

    spec = source if isinstance(source, QuantumGroupSpec) else source.spec
    if len(spec.factors) != 1 or spec.factors[0].kind != ORTHOGONAL:
        raise GateError("half-line scalars require a single orthogonal factor")
    return spec.factors[0].dimq


def s_norm_ratio(source, l: int, j: int) -> Radical:
    """Exact norm sqrt(m_l m_{l-1} / (m_j m_{j+1})) of the orientation shift block."""
    dimq = _half_line_dimq(source)
    if not 1 <= l <= j + 1:
        raise ValueError(f"need 1 <= l <= j+1, got l={l}, j={j}")
    dims = ao_dims(dimq, j + 2)
    return Radical.sqrt_of(dims[l] * dims[l - 1] / (dims[j] * dims[j + 1]))


def dim_ratio_domination(dimq, kmax: int, jmax: int) -> bool:
    """Exact check of m_{k-1} / m_j <= a^{-(j-k)} for 1 <= k <= kmax, k-1 <= j <= jmax.

    Decided in the quadratic field of a (no rounding): a^{-1} = dimq - a.
    """
    dimq = QQ(dimq)
    growth = a_param(dimq)
    a = growth.exact
    a_inv = Radical.from_rational(dimq) - a
    dims = ao_dims(dimq, jmax + 2)
    for k in range(1, kmax + 1):
        power = a_inv  # a^{j-k} at j = k-1
        for j in range(k - 1, jmax + 1):
            lhs = Radical.from_rational(dims[k - 1]) * power
            if not (lhs <= Radical.from_rational(dims[j])):
                return False
            power = power * a
    return True
