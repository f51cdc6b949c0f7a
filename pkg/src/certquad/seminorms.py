"""Derivative seminorm estimates consumed by the certificate formulas.

For a function f with derivative f' the bounds need, per segment or
globally, one of

    L1:   integral of norm(f'(t)) dt
    Lp:   (integral of norm(f'(t))**p dt) ** (1/p)
    Linf: ess sup of norm(f'(t))

L1/Lp values are estimated by composite Simpson on ``resolution`` panels
and are therefore never certified.  Linf values come from the function's
analytic sup-envelope when it has one (certified), otherwise from the
maximum over ``resolution + 1`` equispaced samples (not certified; the
sample grids are nested under doubling, so estimates grow monotonically
with resolution).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._simpson import simpson_scalar
from .geometry import Interval, NormRegime
from .rules import QuadratureRule, nodes_abs
from .spaces import VectorFunction

__all__ = [
    "DEFAULT_RESOLUTION",
    "SeminormEstimate",
    "SeminormProfile",
    "seminorm",
    "seminorm_profile",
]

DEFAULT_RESOLUTION = 4096


@dataclass(frozen=True)
class SeminormEstimate:
    """One derivative-seminorm value on one interval.

    ``certified`` is True only when the value is a rigorous upper bound:
    sup-envelope output or the exact zero of a degenerate interval.
    """

    value: float
    regime: NormRegime
    interval: Interval
    certified: bool
    resolution: int


@dataclass(frozen=True)
class SeminormProfile:
    """Per-segment seminorms for a rule plus an independent global value.

    ``segments`` holds n+1 estimates aligned with [a, x_1], [x_i, x_{i+1}]
    for i = 1..n-1, and [x_n, b].  The global estimate is recomputed over
    the whole interval, never aggregated from the segments.
    """

    segments: tuple[SeminormEstimate, ...]
    global_estimate: SeminormEstimate

    def __post_init__(self) -> None:
        regime = self.global_estimate.regime
        for seg in self.segments:
            if seg.regime != regime:
                raise ValueError("profile segments disagree on the norm regime")

    @property
    def regime(self) -> NormRegime:
        return self.global_estimate.regime


def _norm_of_derivative(fn: VectorFunction, t: float) -> float:
    return fn.df_norm_at(t)


def seminorm(
    fn: VectorFunction,
    interval: Interval,
    regime: NormRegime,
    resolution: int = DEFAULT_RESOLUTION,
) -> SeminormEstimate:
    """Estimate the derivative seminorm of ``fn`` on ``interval``.

    See the module docstring for the estimator used per regime.  Degenerate
    intervals yield 0 for every regime (certified; the exact value).
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    if interval.is_degenerate:
        return SeminormEstimate(0.0, regime, interval, certified=True, resolution=resolution)

    if regime.kind == "linf":
        if fn.df_sup is not None:
            value = float(fn.df_sup(interval.a, interval.b))
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(
                    f"sup-envelope of {fn.name or '<anonymous>'} returned {value!r}"
                )
            return SeminormEstimate(value, regime, interval, certified=True, resolution=resolution)
        if not fn.has_derivative_source:
            raise ValueError(
                f"function {fn.name or '<anonymous>'} has neither a sup-envelope "
                "nor a derivative source for the linf seminorm"
            )
        h = interval.length / resolution
        best = 0.0
        for k in range(resolution + 1):
            t = interval.a + k * h if k < resolution else interval.b
            v = _norm_of_derivative(fn, t)
            if v > best:
                best = v
        return SeminormEstimate(best, regime, interval, certified=False, resolution=resolution)

    power = regime.integral_exponent
    integral = simpson_scalar(
        lambda t: _norm_of_derivative(fn, t) ** power,
        interval.a,
        interval.b,
        resolution,
    )
    # tiny negative values can appear for an identically-zero integrand
    integral = max(integral, 0.0)
    value = integral if power == 1.0 else integral ** (1.0 / power)
    return SeminormEstimate(value, regime, interval, certified=False, resolution=resolution)


def seminorm_profile(
    fn: VectorFunction,
    rule: QuadratureRule,
    interval: Interval,
    regime: NormRegime,
    resolution: int = DEFAULT_RESOLUTION,
) -> SeminormProfile:
    """Per-segment estimates for ``rule`` on ``interval`` plus a global one."""
    xs = nodes_abs(rule, interval)
    cuts = (interval.a,) + xs + (interval.b,)
    segments = tuple(
        seminorm(fn, Interval(lo, hi), regime, resolution)
        for lo, hi in zip(cuts, cuts[1:])
    )
    global_estimate = seminorm(fn, interval, regime, resolution)
    return SeminormProfile(segments, global_estimate)
