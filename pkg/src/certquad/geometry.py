"""Interval geometry, norm regimes, and the weighted-distance integral ``mu``.

``mu`` is the single geometric primitive behind every certificate in this
package: for an exponent s in [1, inf] it measures the distance function
|t - c| over an interval [a, b], integrated for finite s and maximised for
s = inf. All values come from closed forms; nothing here integrates
numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "INF",
    "Interval",
    "NormRegime",
    "Partition",
    "L1",
    "LINF",
    "lp",
    "conjugate_exponent",
    "mu",
    "uniform_partition",
]


class _InfinityExponent:
    """Marker type for the sup-norm exponent accepted by :func:`mu`."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"


#: Sentinel selecting the max(|t - c|) branch of :func:`mu`.  ``float("inf")``
#: is accepted as an alias and normalised to this marker on entry, so no
#: floating-point infinity ever takes part in arithmetic.
INF = _InfinityExponent()


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[a, b]`` with ``a <= b``.

    ``a == b`` is allowed and treated as the degenerate case throughout the
    package (zero length, zero certificates).
    """

    a: float
    b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("interval endpoints must be finite")
        if self.a > self.b:
            raise ValueError(
                f"interval endpoints out of order: a={self.a!r} > b={self.b!r}"
            )

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    @property
    def is_degenerate(self) -> bool:
        return self.a == self.b

    def contains(self, t: float) -> bool:
        return self.a <= t <= self.b


@dataclass(frozen=True)
class Partition:
    """Ordered breakpoints ``a = t_0 <= t_1 <= ... <= t_m = b`` of an interval.

    The first and last breakpoints must equal the interval endpoints exactly
    (bitwise); construct breakpoints accordingly, e.g. via
    :func:`uniform_partition`.
    """

    interval: Interval
    breakpoints: tuple[float, ...]

    def __post_init__(self) -> None:
        pts = tuple(float(t) for t in self.breakpoints)
        object.__setattr__(self, "breakpoints", pts)
        if len(pts) < 2:
            raise ValueError("a partition needs at least two breakpoints")
        if pts[0] != self.interval.a or pts[-1] != self.interval.b:
            raise ValueError("partition breakpoints must start at a and end at b")
        for lo, hi in zip(pts, pts[1:]):
            if hi < lo:
                raise ValueError("partition breakpoints must be nondecreasing")

    @property
    def panel_count(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def panels(self) -> tuple[Interval, ...]:
        return tuple(
            Interval(lo, hi) for lo, hi in zip(self.breakpoints, self.breakpoints[1:])
        )

    @property
    def panel_lengths(self) -> tuple[float, ...]:
        return tuple(hi - lo for lo, hi in zip(self.breakpoints, self.breakpoints[1:]))


def uniform_partition(interval: Interval, panels: int) -> Partition:
    """Split ``interval`` into ``panels`` equal panels.

    The last breakpoint is set to ``interval.b`` exactly rather than
    accumulated, so the partition always validates.
    """
    if panels < 1:
        raise ValueError(f"panel count must be >= 1, got {panels}")
    a, b = interval.a, interval.b
    h = (b - a) / panels
    pts = [a + k * h for k in range(panels)]
    pts.append(b)
    return Partition(interval, tuple(pts))


@dataclass(frozen=True)
class NormRegime:
    """Which derivative seminorm a certificate is stated against.

    ``kind`` is one of ``"l1"``, ``"lp"`` (with finite ``p > 1``) or
    ``"linf"``.  The conjugate exponent ``q = p/(p-1)`` is exposed for the
    ``lp`` regime only.
    """

    kind: str
    p: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("l1", "lp", "linf"):
            raise ValueError(f"unknown regime kind: {self.kind!r}")
        if self.kind == "lp":
            if self.p is None:
                raise ValueError("lp regime needs an exponent p")
            p = float(self.p)
            if not math.isfinite(p) or p <= 1.0:
                raise ValueError(f"lp regime needs finite p > 1, got {self.p!r}")
            object.__setattr__(self, "p", p)
        elif self.p is not None:
            raise ValueError(f"regime {self.kind!r} takes no exponent parameter")

    @property
    def q(self) -> float:
        """Conjugate exponent of ``p`` (lp regime only)."""
        if self.kind != "lp":
            raise ValueError(f"conjugate exponent undefined for regime {self.kind!r}")
        return conjugate_exponent(self.p)

    @property
    def label(self) -> str:
        if self.kind == "lp":
            return f"lp:{self.p:g}"
        return self.kind

    @property
    def integral_exponent(self) -> float:
        """Power applied to the derivative norm in L1/Lp seminorm integrals."""
        if self.kind == "l1":
            return 1.0
        if self.kind == "lp":
            return float(self.p)
        raise ValueError("the linf regime has no integral exponent")


L1 = NormRegime("l1")
LINF = NormRegime("linf")


def lp(p: float) -> NormRegime:
    """Regime stated against the Lp norm of the derivative, ``1 < p < inf``."""
    return NormRegime("lp", p)


def conjugate_exponent(p: float) -> float:
    """Return ``q`` with ``1/p + 1/q = 1`` for finite ``p > 1``."""
    p = float(p)
    if not math.isfinite(p) or p <= 1.0:
        raise ValueError(f"conjugate exponent needs finite p > 1, got {p!r}")
    return p / (p - 1.0)


def _validate_mu_exponent(exponent):
    if exponent is INF:
        return INF
    if isinstance(exponent, _InfinityExponent):
        return INF
    try:
        p = float(exponent)
    except (TypeError, ValueError):
        raise ValueError(f"mu exponent must be a real >= 1 or INF, got {exponent!r}")
    if math.isinf(p) and p > 0:
        return INF
    if not math.isfinite(p) or p < 1.0:
        raise ValueError(f"mu exponent must be >= 1, got {exponent!r}")
    return p


def mu(exponent, a: float, c: float, b: float) -> float:
    """Closed-form weighted distance of ``c`` to the interval ``[a, b]``.

    For a finite exponent ``p >= 1`` this is the integral over [a, b] of
    ``|t - c|**p``::

        (1/(p+1)) * ((b-c)**(p+1) - (a-c)**(p+1))   if c < a
        (1/(p+1)) * ((c-a)**(p+1) + (b-c)**(p+1))   if a <= c <= b
        (1/(p+1)) * ((c-a)**(p+1) - (c-b)**(p+1))   if c > b

    For ``INF`` (``float("inf")`` is accepted as an alias) it is the maximum
    of ``|t - c|`` over [a, b]: ``b - c`` below the interval, ``c - a`` above
    it, and ``(b-a)/2 + |c - (a+b)/2|`` inside.

    The degenerate interval ``a == b`` returns 0 for every exponent.  The
    branch boundaries ``c == a`` and ``c == b`` resolve to the middle form;
    the branches agree there, so the choice is only a tie-break.
    """
    p = _validate_mu_exponent(exponent)
    a = float(a)
    c = float(c)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(c)):
        raise ValueError("mu arguments must be finite")
    if a > b:
        raise ValueError(f"mu needs a <= b, got a={a!r}, b={b!r}")
    if a == b:
        return 0.0
    if p is INF:
        if c < a:
            return b - c
        if c > b:
            return c - a
        return 0.5 * (b - a) + abs(c - 0.5 * (a + b))
    r = p + 1.0
    if c < a:
        return ((b - c) ** r - (a - c) ** r) / r
    if c > b:
        return ((c - a) ** r - (c - b) ** r) / r
    return ((c - a) ** r + (b - c) ** r) / r
