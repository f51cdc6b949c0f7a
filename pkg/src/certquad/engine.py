"""Rule application, composite and adaptive integration, and the test oracle.

Everything here is deterministic: panel results are reduced strictly left
to right, and the adaptive driver orders its work by (bound, left endpoint)
so two runs with identical inputs produce bit-identical output.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ._simpson import simpson_element
from .bounds import ErrorCertificate, bound_level1, bound_level2, bound_level3
from .geometry import Interval, NormRegime, Partition
from .rules import QuadratureRule, nodes_abs
from .seminorms import DEFAULT_RESOLUTION, seminorm, seminorm_profile
from .spaces import Element, VectorFunction

__all__ = [
    "QuadratureResult",
    "apply_rule",
    "oracle_integral",
    "integrate_composite",
    "integrate_adaptive",
]

DEFAULT_MAX_PANELS = 1024


@dataclass(eq=False)
class QuadratureResult:
    """Outcome of an engine run.

    ``panels`` pairs each panel interval with its certificate;
    ``certificate`` aggregates them (its segment contributions are the
    per-panel bounds, summed in panel order).  ``evaluations`` counts calls
    to ``fn.f`` made for the returned approximation (derivative samples for
    the certificates are not included).  ``converged`` is always True for
    single/composite runs; adaptive runs clear it when the panel budget ran
    out before the requested tolerance was met.
    """

    approximation: Element
    certificate: ErrorCertificate
    panels: tuple[tuple[Interval, ErrorCertificate], ...]
    evaluations: int
    converged: bool = True


def apply_rule(fn: VectorFunction, rule: QuadratureRule, interval: Interval) -> Element:
    """``(b - a) * sum(p_i * f(x_i))`` with a fixed-order accumulation."""
    space = fn.space
    acc = space.zero()
    for x, w in zip(nodes_abs(rule, interval), rule.weights):
        acc = space.add(acc, space.scale(w, fn.f(x)))
    return space.scale(interval.length, acc)


def oracle_integral(fn: VectorFunction, interval: Interval, resolution: int) -> Element:
    """Reference integral by componentwise composite Simpson.

    A test oracle: certificates never consume it.  ``resolution`` counts
    Simpson panels and must be even and at least 2 so that refinement
    checks can halve it.
    """
    if resolution < 2:
        raise ValueError(f"oracle resolution must be >= 2, got {resolution}")
    if resolution % 2 != 0:
        raise ValueError(f"oracle resolution must be even, got {resolution}")
    return simpson_element(fn.space, fn.f, interval.a, interval.b, resolution)


def _panel_certificate(
    fn: VectorFunction,
    rule: QuadratureRule,
    panel: Interval,
    regime: NormRegime,
    level: int,
    resolution: int,
) -> ErrorCertificate:
    if level == 1:
        return bound_level1(fn, rule, panel, resolution, regime=regime)
    if level == 2:
        profile = seminorm_profile(fn, rule, panel, regime, resolution)
        return bound_level2(profile, rule, panel)
    if level == 3:
        estimate = seminorm(fn, panel, regime, resolution)
        return bound_level3(estimate, rule, panel)
    raise ValueError(f"certificate level must be 1, 2 or 3, got {level}")


def _aggregate(
    fn: VectorFunction,
    rule: QuadratureRule,
    interval: Interval,
    regime: NormRegime,
    level: int,
    per_panel: list[tuple[Interval, Element, ErrorCertificate]],
    converged: bool,
) -> QuadratureResult:
    space = fn.space
    approx = space.zero()
    total = 0.0
    contribs: list[float] = []
    for _, value, cert in per_panel:
        approx = space.add(approx, value)
        total += cert.bound
        contribs.append(cert.bound)
    certificate = ErrorCertificate(
        bound=total,
        level=level,
        regime=regime,
        segment_contributions=tuple(contribs),
        certified=all(cert.certified for _, _, cert in per_panel),
        rule_name=rule.name,
        interval=interval,
    )
    return QuadratureResult(
        approximation=approx,
        certificate=certificate,
        panels=tuple((panel, cert) for panel, _, cert in per_panel),
        evaluations=rule.n * len(per_panel),
        converged=converged,
    )


def integrate_composite(
    fn: VectorFunction,
    rule: QuadratureRule,
    partition: Partition,
    regime: NormRegime,
    level: int = 2,
    resolution: int = DEFAULT_RESOLUTION,
    threads: int = 1,
) -> QuadratureResult:
    """Apply the rule on every panel of ``partition`` and sum certificates.

    ``threads > 1`` evaluates panels in a thread pool; the reduction stays
    in panel order, so the result is identical to the sequential one.
    """
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    panels = partition.panels

    def work(panel: Interval) -> tuple[Interval, Element, ErrorCertificate]:
        value = apply_rule(fn, rule, panel)
        cert = _panel_certificate(fn, rule, panel, regime, level, resolution)
        return panel, value, cert

    if threads == 1 or len(panels) == 1:
        per_panel = [work(panel) for panel in panels]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_panel = list(pool.map(work, panels))

    return _aggregate(fn, rule, partition.interval, regime, level, per_panel, True)


def integrate_adaptive(
    fn: VectorFunction,
    rule: QuadratureRule,
    interval: Interval,
    regime: NormRegime,
    tol: float,
    max_panels: int = DEFAULT_MAX_PANELS,
    resolution: int = DEFAULT_RESOLUTION,
) -> QuadratureResult:
    """Worst-first bisection until the summed level-2 bounds meet ``tol``.

    The panel with the largest level-2 bound is split at its midpoint
    (ties break toward the left-most panel).  Stops when the ordered sum of
    panel bounds is at most ``tol`` or ``max_panels`` is reached; running
    out of panels returns a partial result with ``converged=False`` rather
    than raising.  Rule values are evaluated once per final panel.
    """
    if not tol > 0.0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    if max_panels < 1:
        raise ValueError(f"max_panels must be >= 1, got {max_panels}")

    def cert_for(panel: Interval) -> ErrorCertificate:
        profile = seminorm_profile(fn, rule, panel, regime, resolution)
        return bound_level2(profile, rule, panel)

    first = cert_for(interval)
    # heap orders by (-bound, left endpoint); left endpoints are unique, so
    # certificates are never compared
    heap: list[tuple[float, float, float, ErrorCertificate]] = [
        (-first.bound, interval.a, interval.b, first)
    ]
    count = 1

    def total_bound() -> float:
        entries = sorted(heap, key=lambda e: e[1])
        total = 0.0
        for entry in entries:
            total += entry[3].bound
        return total

    while total_bound() > tol and count < max_panels:
        entry = heapq.heappop(heap)
        _, lo, hi, _cert = entry
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            # panel too narrow to split; no further refinement possible
            heapq.heappush(heap, entry)
            break
        left = Interval(lo, mid)
        right = Interval(mid, hi)
        cert_left = cert_for(left)
        cert_right = cert_for(right)
        heapq.heappush(heap, (-cert_left.bound, left.a, left.b, cert_left))
        heapq.heappush(heap, (-cert_right.bound, right.a, right.b, cert_right))
        count += 1

    ordered = sorted(heap, key=lambda e: e[1])
    per_panel = []
    for _, lo, hi, cert in ordered:
        panel = Interval(lo, hi)
        per_panel.append((panel, apply_rule(fn, rule, panel), cert))
    converged = total_bound() <= tol
    return _aggregate(fn, rule, interval, regime, 2, per_panel, converged)
