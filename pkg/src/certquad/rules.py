"""Convex-combination quadrature rules and their cumulative-weight geometry.

A rule is a list of relative nodes ``0 <= u_1 <= ... <= u_n <= 1`` with
strictly positive weights summing to one.  On an interval [a, b] the rule
approximates the mean of ``f`` by ``sum(p_i * f(a + u_i*(b-a)))``.  The
cumulative weights ``P_i`` induce the comparison points

    xi_i = P_i * b + (1 - P_i) * a,      i = 1..n-1,

which drive every error bound in :mod:`certquad.bounds`.  When each ``xi_i``
lies inside ``[x_i, x_{i+1}]`` the rule is called well-placed here and the
simplified midpoint-offset forms of the bound constants apply; the general
machinery never requires this.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import Interval

__all__ = [
    "QuadratureRule",
    "CumulativeWeights",
    "make_rule",
    "nodes_abs",
    "cumulative",
    "corollary_condition_holds",
    "preset",
    "PRESET_NAMES",
]

_WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureRule:
    """Relative nodes in [0, 1] plus convex weights.

    Coincident nodes are permitted (the induced segment is degenerate and
    contributes nothing to bounds).  Weights must be strictly positive and
    sum to 1 within 1e-12.
    """

    nodes_rel: tuple[float, ...]
    weights: tuple[float, ...]
    name: str = ""

    def __post_init__(self) -> None:
        nodes = tuple(float(u) for u in self.nodes_rel)
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "nodes_rel", nodes)
        object.__setattr__(self, "weights", weights)
        if len(nodes) == 0:
            raise ValueError("a rule needs at least one node")
        if len(nodes) != len(weights):
            raise ValueError(
                f"node/weight count mismatch: {len(nodes)} vs {len(weights)}"
            )
        for u in nodes:
            if not 0.0 <= u <= 1.0:
                raise ValueError(f"relative node {u!r} outside [0, 1]")
        for lo, hi in zip(nodes, nodes[1:]):
            if hi < lo:
                raise ValueError("relative nodes must be nondecreasing")
        for w in weights:
            if not w > 0.0:
                raise ValueError(f"weights must be strictly positive, got {w!r}")
        total = 0.0
        for w in weights:
            total += w
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1 (got {total!r})")

    @property
    def n(self) -> int:
        return len(self.nodes_rel)


@dataclass(frozen=True)
class CumulativeWeights:
    """Cumulative weights and comparison points of a rule on an interval.

    ``P[i]`` is ``p_1 + ... + p_{i+1}`` (so ``P[-1]`` is 1 up to rounding),
    ``Pbar[i] = 1 - P[i]`` and ``xi`` holds the n-1 interior comparison
    points clamped into [a, b].
    """

    P: tuple[float, ...]
    Pbar: tuple[float, ...]
    xi: tuple[float, ...]


def make_rule(nodes_rel, weights, name: str = "") -> QuadratureRule:
    """Validate and build a :class:`QuadratureRule`."""
    return QuadratureRule(tuple(nodes_rel), tuple(weights), name)


def nodes_abs(rule: QuadratureRule, interval: Interval) -> tuple[float, ...]:
    """Absolute node positions ``x_i = a + u_i*(b - a)``, clamped into [a, b]."""
    a, b = interval.a, interval.b
    length = b - a
    out = []
    for u in rule.nodes_rel:
        if u == 0.0:
            x = a
        elif u == 1.0:
            x = b
        else:
            x = a + u * length
            # rounding can push a + u*(b-a) past an endpoint by one ulp
            x = min(max(x, a), b)
        out.append(x)
    return tuple(out)


def cumulative(rule: QuadratureRule, interval: Interval) -> CumulativeWeights:
    """Cumulative weights ``P_i`` and comparison points ``xi_i`` on ``interval``."""
    a, b = interval.a, interval.b
    P: list[float] = []
    total = 0.0
    for w in rule.weights:
        total += w
        P.append(total)
    Pbar = [1.0 - s for s in P]
    xi = []
    for s, sbar in zip(P[:-1], Pbar[:-1]):
        point = s * b + sbar * a
        xi.append(min(max(point, a), b))
    return CumulativeWeights(tuple(P), tuple(Pbar), tuple(xi))


def corollary_condition_holds(rule: QuadratureRule, interval: Interval) -> bool:
    """True when every comparison point xi_i lies in [x_i, x_{i+1}].

    Under this condition the simplified midpoint-offset constants coincide
    with the general ones; bounds are valid either way.
    """
    xs = nodes_abs(rule, interval)
    cum = cumulative(rule, interval)
    for i, point in enumerate(cum.xi):
        if not (xs[i] <= point <= xs[i + 1]):
            return False
    return True


def _preset_ostrowski(s_rel: float = 0.5) -> QuadratureRule:
    return make_rule((s_rel,), (1.0,), name="ostrowski")


def _preset_weighted_endpoints(t: float = 0.5) -> QuadratureRule:
    return make_rule((0.0, 1.0), (1.0 - t, t), name="weighted_endpoints")


def _preset_trapezoid() -> QuadratureRule:
    return make_rule((0.0, 1.0), (0.5, 0.5), name="trapezoid")


def _preset_quarter_points(t: float = 0.5) -> QuadratureRule:
    return make_rule((0.25, 0.75), (t, 1.0 - t), name="quarter_points")


def _preset_qt() -> QuadratureRule:
    return make_rule((0.25, 0.75), (0.5, 0.5), name="qt")


def _preset_endpoints_midpoint(alpha: float = 0.25, beta: float = 0.5) -> QuadratureRule:
    return make_rule((0.0, 0.5, 1.0), (alpha, beta, 1.0 - alpha - beta), name="endpoints_midpoint")


def _preset_qs() -> QuadratureRule:
    return make_rule((0.0, 0.5, 1.0), (0.25, 0.5, 0.25), name="qs")


def _preset_simpson() -> QuadratureRule:
    return make_rule((0.0, 0.5, 1.0), (1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0), name="simpson")


def _preset_three_point(alpha, beta, u1, u2, u3) -> QuadratureRule:
    return make_rule((u1, u2, u3), (alpha, beta, 1.0 - alpha - beta), name="three_point")


def _preset_quarter_three_point(alpha: float = 1.0 / 3.0, beta: float = 1.0 / 3.0) -> QuadratureRule:
    return make_rule(
        (0.25, 0.5, 0.75), (alpha, beta, 1.0 - alpha - beta), name="quarter_three_point"
    )


_PRESETS = {
    "ostrowski": _preset_ostrowski,
    "weighted_endpoints": _preset_weighted_endpoints,
    "trapezoid": _preset_trapezoid,
    "quarter_points": _preset_quarter_points,
    "qt": _preset_qt,
    "endpoints_midpoint": _preset_endpoints_midpoint,
    "qs": _preset_qs,
    "simpson": _preset_simpson,
    "three_point": _preset_three_point,
    "quarter_three_point": _preset_quarter_three_point,
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset(name: str, *params: float) -> QuadratureRule:
    """Build a named preset rule.

    Parametric presets and their parameters (defaults give the named best
    member of each family):

    - ``ostrowski(s_rel=0.5)``: one node at ``s_rel``, weight 1.
    - ``weighted_endpoints(t=0.5)``: nodes (0, 1), weights (1-t, t).
    - ``trapezoid``: weighted_endpoints at t = 1/2.
    - ``quarter_points(t=0.5)``: nodes (1/4, 3/4), weights (t, 1-t).
    - ``qt``: quarter_points at t = 1/2.
    - ``endpoints_midpoint(alpha=1/4, beta=1/2)``: nodes (0, 1/2, 1),
      weights (alpha, beta, 1-alpha-beta).
    - ``qs``: endpoints_midpoint at (1/4, 1/2), i.e. weights (1/4, 1/2, 1/4).
    - ``simpson``: endpoints_midpoint at (1/6, 4/6).
    - ``three_point(alpha, beta, u1, u2, u3)``: nodes (u1, u2, u3), weights
      (alpha, beta, 1-alpha-beta).
    - ``quarter_three_point(alpha=1/3, beta=1/3)``: nodes (1/4, 1/2, 3/4).

    Weight parameters that push a comparison point outside its node window
    are accepted; such rules simply report
    ``corollary_condition_holds(...) == False`` and all bounds fall back to
    the general machinery.
    """
    try:
        builder = _PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset rule {name!r}; available: {', '.join(PRESET_NAMES)}"
        ) from None
    try:
        return builder(*params)
    except TypeError:
        raise ValueError(
            f"wrong number of parameters for preset {name!r}: {params!r}"
        ) from None
