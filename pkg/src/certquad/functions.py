"""Built-in test corpus: named functions with derivatives and sup-envelopes.

Every entry carries an analytic derivative and an analytic upper bound for
``norm(f'(t))`` on an interval, so certified sup-norm certificates are
available for all of them.  ``const`` and ``affine`` can be instantiated in
any registered space; the others are tied to their natural space.
"""

from __future__ import annotations

import math

import numpy as np

from .spaces import (
    ComplexEuclideanSpace,
    EuclideanSpace,
    MatrixSpace,
    MaxNormSpace,
    NormedSpace,
    ScalarSpace,
    VectorFunction,
)

__all__ = ["SPACES", "FUNCTION_NAMES", "make_function", "space_by_label"]

SPACES: dict[str, NormedSpace] = {
    "scalar": ScalarSpace(),
    "r2": EuclideanSpace(2),
    "r3": EuclideanSpace(3),
    "r3max": MaxNormSpace(3),
    "c2": ComplexEuclideanSpace(2),
    "m22": MatrixSpace(2, 2),
}


def space_by_label(label: str) -> NormedSpace:
    key = label.strip().lower()
    try:
        return SPACES[key]
    except KeyError:
        raise ValueError(
            f"unknown space {label!r}; available: {', '.join(sorted(SPACES))}"
        ) from None


def _pattern(space: NormedSpace, offset: int = 0):
    # fixed, deterministic nonzero element; alternating signs, growing sizes
    coords = [
        ((-1.0) ** (j + offset)) * (1.0 + 0.5 * (j + offset))
        for j in range(space.flat_dim)
    ]
    return space.from_flat(coords)


def _const(space: NormedSpace) -> VectorFunction:
    value = _pattern(space)
    return VectorFunction(
        space=space,
        f=lambda t: value,
        df=lambda t: space.zero(),
        df_sup=lambda lo, hi: 0.0,
        name="const",
    )


def _affine(space: NormedSpace) -> VectorFunction:
    base = _pattern(space)
    slope = _pattern(space, offset=1)
    slope_norm = space.norm(slope)
    return VectorFunction(
        space=space,
        f=lambda t: space.add(base, space.scale(t, slope)),
        df=lambda t: slope,
        df_sup=lambda lo, hi: slope_norm,
        name="affine",
    )


_SCALAR = SPACES["scalar"]
_R2 = SPACES["r2"]
_R3 = SPACES["r3"]
_M22 = SPACES["m22"]

_KINK = 0.5  # kink location of abs_kink; the derivative takes the
# right-hand value +1 there so norm(f') == 1 everywhere


def _quadratic() -> VectorFunction:
    return VectorFunction(
        space=_SCALAR,
        f=lambda t: t * t,
        df=lambda t: 2.0 * t,
        df_sup=lambda lo, hi: 2.0 * max(abs(lo), abs(hi)),
        name="quadratic",
    )


def _exp() -> VectorFunction:
    return VectorFunction(
        space=_SCALAR,
        f=math.exp,
        df=math.exp,
        df_sup=lambda lo, hi: math.exp(hi),
        name="exp",
    )


def _trig_circle() -> VectorFunction:
    # unit-speed circle: norm(f'(t)) == 1 for every t
    return VectorFunction(
        space=_R2,
        f=lambda t: np.array([math.cos(t), math.sin(t)]),
        df=lambda t: np.array([-math.sin(t), math.cos(t)]),
        df_sup=lambda lo, hi: 1.0,
        name="trig_circle",
    )


def _poly_r3() -> VectorFunction:
    # norm(f')**2 = 1 + 4 t**2 + 9 t**4 is even and increasing in |t|,
    # so the sup over [lo, hi] sits at the endpoint of largest magnitude
    def sup(lo: float, hi: float) -> float:
        m = max(abs(lo), abs(hi))
        return math.sqrt(1.0 + 4.0 * m * m + 9.0 * m ** 4)

    return VectorFunction(
        space=_R3,
        f=lambda t: np.array([t, t * t, t ** 3]),
        df=lambda t: np.array([1.0, 2.0 * t, 3.0 * t * t]),
        df_sup=sup,
        name="poly_r3",
    )


def _matrix_path() -> VectorFunction:
    # plane rotation path; the derivative has constant Frobenius norm sqrt(2)
    def f(t: float):
        c, s = math.cos(t), math.sin(t)
        return np.array([[c, -s], [s, c]])

    def df(t: float):
        c, s = math.cos(t), math.sin(t)
        return np.array([[-s, -c], [c, -s]])

    return VectorFunction(
        space=_M22,
        f=f,
        df=df,
        df_sup=lambda lo, hi: math.sqrt(2.0),
        name="matrix_path",
    )


def _abs_kink() -> VectorFunction:
    return VectorFunction(
        space=_SCALAR,
        f=lambda t: abs(t - _KINK),
        df=lambda t: 1.0 if t >= _KINK else -1.0,
        df_sup=lambda lo, hi: 1.0,
        name="abs_kink",
    )


_FIXED_SPACE_BUILDERS = {
    "quadratic": (_quadratic, "scalar"),
    "exp": (_exp, "scalar"),
    "trig_circle": (_trig_circle, "r2"),
    "poly_r3": (_poly_r3, "r3"),
    "matrix_path": (_matrix_path, "m22"),
    "abs_kink": (_abs_kink, "scalar"),
}

_DEFAULT_SPACE = {"const": "r3", "affine": "r2"}

FUNCTION_NAMES = ("const", "affine", "quadratic", "exp", "trig_circle",
                  "poly_r3", "matrix_path", "abs_kink")


def make_function(name: str, space_label: str | None = None) -> VectorFunction:
    """Build a registry function, optionally placing it in a chosen space.

    ``const`` and ``affine`` accept any registered space label; the other
    functions have a fixed natural space, and asking for a different one is
    an error.
    """
    key = name.strip().lower()
    if key in ("const", "affine"):
        label = (space_label or _DEFAULT_SPACE[key]).strip().lower()
        space = space_by_label(label)
        return _const(space) if key == "const" else _affine(space)
    if key in _FIXED_SPACE_BUILDERS:
        builder, natural = _FIXED_SPACE_BUILDERS[key]
        if space_label is not None and space_label.strip().lower() != natural:
            raise ValueError(
                f"function {name!r} lives in the {natural!r} space, "
                f"not {space_label!r}"
            )
        return builder()
    raise ValueError(
        f"unknown function {name!r}; available: {', '.join(FUNCTION_NAMES)}"
    )
