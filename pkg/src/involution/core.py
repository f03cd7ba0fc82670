"""Phase-space primitives: parameter sets, points, and forward-mode duals.

Every observable is a plain Python program over its phase-space arguments.
Evaluating that program on :class:`Dual` scalars yields the exact gradient
of the program (chain rule applied term by term, no truncation error), which
is what the bracket machinery consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, DuplicateAlpha, TooFewCoordinates

__all__ = [
    "Dual",
    "Observable",
    "Parameters",
    "PhasePoint",
    "make_parameters",
    "sqrt",
    "value_and_grad_of",
]


def _innermost_value(v):
    while isinstance(v, Dual):
        v = v.val
    return v


class Dual:
    """Scalar value paired with a vector of partial derivatives.

    Supports +, -, *, / and ** against other duals and plain numbers.  The
    partials vector may itself contain duals; nesting one level gives exact
    second derivatives (used by the Jacobi-identity check in ``brackets``).
    """

    __slots__ = ("val", "eps")

    def __init__(self, val, eps):
        self.val = val
        self.eps = eps

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self.eps + other.eps)
        return Dual(self.val + other, self.eps)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val - other.val, self.eps - other.eps)
        return Dual(self.val - other, self.eps)

    def __rsub__(self, other):
        return Dual(other - self.val, -self.eps)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val * other.val, self.eps * other.val + other.eps * self.val)
        return Dual(self.val * other, self.eps * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            val = self.val / other.val
            return Dual(val, (self.eps - other.eps * val) / other.val)
        return Dual(self.val / other, self.eps / other)

    def __rtruediv__(self, other):
        val = other / self.val
        return Dual(val, self.eps * (-val / self.val))

    def __neg__(self):
        return Dual(-self.val, -self.eps)

    def __pow__(self, q):
        if isinstance(q, Dual):
            raise TypeError("dual-valued exponents are not supported")
        if isinstance(q, (int, np.integer)) or (isinstance(q, float) and q.is_integer()):
            qi = int(q)
            if qi == 0:
                return Dual(1.0, self.eps * 0.0)
            if qi == 1:
                return self
            vq1 = self.val ** (qi - 1)
            return Dual(vq1 * self.val, self.eps * (qi * vq1))
        q = float(q)
        base = _innermost_value(self.val)
        if not base > 0.0:
            raise DomainError(f"fractional power x**{q} needs x > 0, got x = {base}")
        vq1 = self.val ** (q - 1.0)
        return Dual(vq1 * self.val, self.eps * (q * vq1))

    def __repr__(self):
        return f"Dual({self.val!r}, {self.eps!r})"


def sqrt(v):
    """Square root valid for plain numbers and duals; requires a positive base."""
    if isinstance(v, Dual):
        return v ** 0.5
    v = float(v)
    if not v > 0.0:
        raise DomainError(f"sqrt needs a positive argument, got {v}")
    return math.sqrt(v)


def _seed_duals(x, p):
    n = len(x)
    width = 2 * n
    nested = any(isinstance(v, Dual) for v in x) or any(isinstance(v, Dual) for v in p)
    dtype = object if nested else float

    def unit(i):
        e = np.zeros(width, dtype=dtype)
        e[i] = 1.0
        return e

    xs = [Dual(x[i], unit(i)) for i in range(n)]
    ps = [Dual(p[i], unit(n + i)) for i in range(n)]
    return xs, ps


def value_and_grad_of(fn, x, p):
    """Evaluate ``fn(x, p)`` with seeded duals; return (value, 2N partials).

    Entries of ``x``/``p`` may themselves be duals, in which case the
    returned value and partials carry the inner duals through (exact second
    derivatives).
    """
    xs, ps = _seed_duals(x, p)
    out = fn(xs, ps)
    if isinstance(out, Dual):
        return out.val, out.eps
    return out, np.zeros(2 * len(x))


@dataclass(frozen=True, eq=False)
class PhasePoint:
    """A point (x, p) in 2N-dimensional phase space."""

    x: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        p = np.array(self.p, dtype=float)
        if x.ndim != 1 or x.shape != p.shape:
            raise ValueError("x and p must be one-dimensional and equally long")
        x.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    def __repr__(self):
        return f"PhasePoint(x={self.x.tolist()}, p={self.p.tolist()})"


@dataclass(frozen=True)
class Parameters:
    """The constants alpha_1..alpha_N (pairwise distinct) and the scalar alpha.

    Entries may be ints, exact :class:`fractions.Fraction` values or floats;
    exact variants keep the operator-algebra paths fully rational.
    """

    alphas: tuple
    alpha: object = 0

    @property
    def n(self) -> int:
        return len(self.alphas)

    def alphas_as_floats(self) -> np.ndarray:
        return np.array([float(a) for a in self.alphas])

    def alphas_as_fractions(self) -> tuple:
        return tuple(Fraction(a) for a in self.alphas)

    def alpha_as_float(self) -> float:
        return float(self.alpha)

    def alpha_as_fraction(self) -> Fraction:
        return Fraction(self.alpha)


def make_parameters(alphas: Sequence, alpha=0) -> Parameters:
    """Validate and build a :class:`Parameters` value.

    Raises ``TooFewCoordinates`` for N < 2 and ``DuplicateAlpha`` when any
    two entries coincide exactly (the differences alpha_i - alpha_j appear
    in denominators throughout).
    """
    alphas = tuple(alphas)
    if len(alphas) < 2:
        raise TooFewCoordinates(f"need at least 2 alphas, got {len(alphas)}")
    exact = [Fraction(a) for a in alphas]
    for i in range(len(exact)):
        for j in range(i + 1, len(exact)):
            if exact[i] == exact[j]:
                raise DuplicateAlpha(
                    f"alpha_{i + 1} = alpha_{j + 1} = {alphas[i]}; alphas must be pairwise distinct"
                )
    return Parameters(alphas=alphas, alpha=alpha)


@dataclass(frozen=True)
class Observable:
    """Evaluable phase-space function f(x, p) with exact gradients.

    ``fn`` must treat its arguments as indexable sequences of scalar-likes
    and combine entries with +, -, *, / and ** (or :func:`sqrt`) only, so
    the identical program runs on floats and on duals.
    """

    n: int
    fn: Callable[[Sequence, Sequence], object]
    name: str = ""

    def _check(self, pt: PhasePoint):
        if pt.n != self.n:
            raise ValueError(f"point dimension {pt.n} != observable arity {self.n}")

    def eval(self, pt: PhasePoint) -> float:
        self._check(pt)
        return float(self.fn(pt.x, pt.p))

    def __call__(self, pt: PhasePoint) -> float:
        return self.eval(pt)

    def value_and_grad(self, pt: PhasePoint):
        self._check(pt)
        v, g = value_and_grad_of(self.fn, pt.x, pt.p)
        return float(v), np.asarray(g, dtype=float)

    def grad(self, pt: PhasePoint) -> np.ndarray:
        """Exact gradient (d/dx_1..x_N, d/dp_1..p_N) of the evaluation program."""
        return self.value_and_grad(pt)[1]

    # --- algebra on observables (closures compose the evaluation programs) ---

    def _wrap(self, other, op, sym):
        if isinstance(other, Observable):
            if other.n != self.n:
                raise ValueError("arity mismatch")
            f, g = self.fn, other.fn
            return Observable(self.n, lambda x, p: op(f(x, p), g(x, p)),
                              f"({self.name}{sym}{other.name})")
        f = self.fn
        return Observable(self.n, lambda x, p: op(f(x, p), other),
                          f"({self.name}{sym}{other})")

    def __add__(self, other):
        return self._wrap(other, lambda a, b: a + b, "+")

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(other, lambda a, b: a - b, "-")

    def __mul__(self, other):
        return self._wrap(other, lambda a, b: a * b, "*")

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, Observable):
            return self._wrap(c, lambda a, b: a / b, "/")
        return self * (1.0 / c)

    def __neg__(self):
        f = self.fn
        return Observable(self.n, lambda x, p: -f(x, p), f"(-{self.name})")
