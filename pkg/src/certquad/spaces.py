"""Finite-dimensional normed spaces and vector-valued function wrappers.

Elements are plain Python floats (scalar space) or numpy arrays (everything
else); the space object supplies the norm and the zero element.  All
reductions over elements happen in a fixed left-to-right order so repeated
runs are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

__all__ = [
    "Element",
    "NormedSpace",
    "ScalarSpace",
    "EuclideanSpace",
    "MaxNormSpace",
    "ComplexEuclideanSpace",
    "MatrixSpace",
    "VectorFunction",
    "linear_combination",
]

Element = Any


class NormedSpace:
    """Base class for the concrete spaces below.

    Subclasses define ``zero``, ``norm``, membership, and flat real
    coordinates (used for building sample elements and for report output).
    ``add``/``scale`` default to the numeric operators, which cover floats
    and numpy arrays alike.
    """

    @property
    def label(self) -> str:
        raise NotImplementedError

    @property
    def flat_dim(self) -> int:
        """Number of real coordinates of an element."""
        raise NotImplementedError

    def zero(self) -> Element:
        raise NotImplementedError

    def norm(self, x: Element) -> float:
        raise NotImplementedError

    def add(self, x: Element, y: Element) -> Element:
        return x + y

    def scale(self, lam: float, x: Element) -> Element:
        return lam * x

    def subtract(self, x: Element, y: Element) -> Element:
        return self.add(x, self.scale(-1.0, y))

    def is_element(self, x: Element) -> bool:
        raise NotImplementedError

    def from_flat(self, coords) -> Element:
        """Build an element from ``flat_dim`` real coordinates."""
        raise NotImplementedError

    def to_components(self, x: Element):
        """Nested list of plain floats for report serialisation."""
        raise NotImplementedError

    def random(self, rng: np.random.Generator) -> Element:
        """Element with coordinates uniform in [-1, 1]; used by tests."""
        return self.from_flat(rng.uniform(-1.0, 1.0, self.flat_dim))


def _is_real_scalar(x) -> bool:
    return isinstance(x, (int, float, np.floating, np.integer)) and not isinstance(
        x, bool
    )


@dataclass(frozen=True)
class ScalarSpace(NormedSpace):
    """The real line with the absolute value."""

    @property
    def label(self) -> str:
        return "scalar"

    @property
    def flat_dim(self) -> int:
        return 1

    def zero(self) -> float:
        return 0.0

    def norm(self, x) -> float:
        return abs(float(x))

    def is_element(self, x) -> bool:
        return _is_real_scalar(x)

    def from_flat(self, coords) -> float:
        return float(coords[0])

    def to_components(self, x):
        return [float(x)]


@dataclass(frozen=True)
class EuclideanSpace(NormedSpace):
    """R^dim with the Euclidean norm."""

    dim: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def label(self) -> str:
        return f"r{self.dim}"

    @property
    def flat_dim(self) -> int:
        return self.dim

    def zero(self):
        return np.zeros(self.dim)

    def norm(self, x) -> float:
        return float(np.linalg.norm(x))

    def is_element(self, x) -> bool:
        return (
            isinstance(x, np.ndarray)
            and x.shape == (self.dim,)
            and x.dtype.kind == "f"
        )

    def from_flat(self, coords):
        return np.asarray(coords, dtype=float).copy()

    def to_components(self, x):
        return [float(v) for v in x]


@dataclass(frozen=True)
class MaxNormSpace(NormedSpace):
    """R^dim with the max (sup) norm."""

    dim: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def label(self) -> str:
        return f"r{self.dim}max"

    @property
    def flat_dim(self) -> int:
        return self.dim

    def zero(self):
        return np.zeros(self.dim)

    def norm(self, x) -> float:
        return float(np.max(np.abs(x)))

    def is_element(self, x) -> bool:
        return (
            isinstance(x, np.ndarray)
            and x.shape == (self.dim,)
            and x.dtype.kind == "f"
        )

    def from_flat(self, coords):
        return np.asarray(coords, dtype=float).copy()

    def to_components(self, x):
        return [float(v) for v in x]


@dataclass(frozen=True)
class ComplexEuclideanSpace(NormedSpace):
    """C^dim with the Euclidean norm of the moduli.

    Flat coordinates interleave real and imaginary parts, so ``flat_dim``
    is ``2 * dim``.
    """

    dim: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def label(self) -> str:
        return f"c{self.dim}"

    @property
    def flat_dim(self) -> int:
        return 2 * self.dim

    def zero(self):
        return np.zeros(self.dim, dtype=complex)

    def norm(self, x) -> float:
        return float(np.linalg.norm(x))

    def is_element(self, x) -> bool:
        return (
            isinstance(x, np.ndarray)
            and x.shape == (self.dim,)
            and x.dtype.kind == "c"
        )

    def from_flat(self, coords):
        c = np.asarray(coords, dtype=float)
        return c[0::2] + 1j * c[1::2]

    def to_components(self, x):
        return [[float(v.real), float(v.imag)] for v in x]


@dataclass(frozen=True)
class MatrixSpace(NormedSpace):
    """Real rows x cols matrices with the Frobenius norm."""

    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be >= 1")

    @property
    def label(self) -> str:
        return f"m{self.rows}{self.cols}"

    @property
    def flat_dim(self) -> int:
        return self.rows * self.cols

    def zero(self):
        return np.zeros((self.rows, self.cols))

    def norm(self, x) -> float:
        # np.linalg.norm on a 2-D array is the Frobenius norm
        return float(np.linalg.norm(x))

    def is_element(self, x) -> bool:
        return (
            isinstance(x, np.ndarray)
            and x.shape == (self.rows, self.cols)
            and x.dtype.kind == "f"
        )

    def from_flat(self, coords):
        return np.asarray(coords, dtype=float).reshape(self.rows, self.cols).copy()

    def to_components(self, x):
        return [[float(v) for v in row] for row in x]


def linear_combination(space: NormedSpace, terms) -> Element:
    """Fold ``sum(lam_k * x_k)`` in the given order.

    ``terms`` is an iterable of ``(coefficient, element)`` pairs.  The
    accumulation is strictly left to right, which makes the result a pure
    function of the input order (bitwise).  An empty iterable returns the
    zero element.  Elements that do not belong to ``space`` raise
    ``ValueError``.
    """
    acc = space.zero()
    for k, (lam, x) in enumerate(terms):
        if not space.is_element(x):
            raise ValueError(
                f"term {k} is not an element of the {space.label} space: {x!r}"
            )
        acc = space.add(acc, space.scale(float(lam), x))
    return acc


@dataclass(eq=False)
class VectorFunction:
    """A function ``f: R -> space`` with optional derivative information.

    Parameters
    ----------
    space : NormedSpace
        Codomain of the function.
    f : callable
        Evaluates ``f(t)`` and returns an element of ``space``.
    df : callable, optional
        Analytic derivative ``f'(t)``.  Preferred derivative source.
    df_sup : callable, optional
        ``df_sup(lo, hi)`` returns an upper bound for the sup of
        ``norm(f'(t))`` over ``[lo, hi]``.  The only source that yields
        certified sup-norm seminorms.
    fd_step : float, optional
        Step for the central finite-difference fallback used when no
        analytic derivative is supplied.  Samples from this source are not
        certified and the function must be evaluable slightly outside the
        integration interval.
    name : str
        Display name used in reports.
    """

    space: NormedSpace
    f: Callable[[float], Element]
    df: Callable[[float], Element] | None = None
    df_sup: Callable[[float, float], float] | None = None
    fd_step: float | None = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.fd_step is not None:
            step = float(self.fd_step)
            if not math.isfinite(step) or step <= 0.0:
                raise ValueError(f"fd_step must be a positive float, got {self.fd_step!r}")
            self.fd_step = step

    @property
    def has_derivative_source(self) -> bool:
        return self.df is not None or self.fd_step is not None

    def df_at(self, t: float) -> Element:
        """Derivative sample at ``t``: analytic if available, else central
        finite differences with ``fd_step``."""
        if self.df is not None:
            return self.df(t)
        if self.fd_step is not None:
            h = self.fd_step
            return self.space.scale(
                1.0 / (2.0 * h), self.space.subtract(self.f(t + h), self.f(t - h))
            )
        raise ValueError(
            f"function {self.name or '<anonymous>'} has no derivative source "
            "(neither df nor fd_step supplied)"
        )

    def df_norm_at(self, t: float) -> float:
        """``norm(f'(t))`` with a finiteness check on the sample."""
        value = self.space.norm(self.df_at(t))
        if not math.isfinite(value):
            raise ValueError(
                f"nonfinite derivative sample for {self.name or '<anonymous>'} at t={t!r}"
            )
        return value
