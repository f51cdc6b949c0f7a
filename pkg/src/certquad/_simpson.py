"""Composite Simpson quadrature with a pinned sample layout.

Shared by the seminorm estimators, the level-1 bound, the kernel-identity
check and the test oracle.  ``panels`` counts Simpson panels; each panel
contributes two half-steps, so ``2*panels + 1`` samples are taken.  All
sums run left to right at fixed precision, so results are reproducible
bit for bit.
"""

from __future__ import annotations

import math

__all__ = ["simpson_scalar", "simpson_element"]


def simpson_scalar(g, a: float, b: float, panels: int, check_finite: bool = False) -> float:
    """Composite Simpson estimate of the integral of ``g`` over [a, b]."""
    if panels < 1:
        raise ValueError(f"panel count must be >= 1, got {panels}")
    if a == b:
        return 0.0
    m = 2 * panels
    h = (b - a) / m
    first = g(a)
    last = g(b)
    if check_finite and not (math.isfinite(first) and math.isfinite(last)):
        raise ValueError(f"nonfinite sample in quadrature over [{a}, {b}]")
    odd = 0.0
    for k in range(1, m, 2):
        v = g(a + k * h)
        if check_finite and not math.isfinite(v):
            raise ValueError(f"nonfinite sample at t={a + k * h}")
        odd += v
    even = 0.0
    for k in range(2, m, 2):
        v = g(a + k * h)
        if check_finite and not math.isfinite(v):
            raise ValueError(f"nonfinite sample at t={a + k * h}")
        even += v
    return (h / 3.0) * (first + last + 4.0 * odd + 2.0 * even)


def simpson_element(space, f, a: float, b: float, panels: int):
    """Composite Simpson estimate of a space-valued integral.

    Accumulates ``space`` elements in sample order and applies the ``h/3``
    factor once at the end.
    """
    if panels < 1:
        raise ValueError(f"panel count must be >= 1, got {panels}")
    if a == b:
        return space.zero()
    m = 2 * panels
    h = (b - a) / m
    acc = space.add(f(a), f(b))
    for k in range(1, m, 2):
        acc = space.add(acc, space.scale(4.0, f(a + k * h)))
    for k in range(2, m, 2):
        acc = space.add(acc, space.scale(2.0, f(a + k * h)))
    return space.scale(h / 3.0, acc)
