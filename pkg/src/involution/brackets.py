"""Canonical Poisson and constrained Dirac brackets, plus batch verification.

The Poisson bracket is evaluated from exact (dual-number) gradients, so the
only error in a bracket residual is floating-point rounding of the final
sum, not differentiation error.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .core import Observable, Parameters, PhasePoint, value_and_grad_of
from .errors import DegeneratePoint, DomainError, InvolutionError, SingularConstraint

__all__ = [
    "BracketReport",
    "ConstraintKind",
    "ConstraintPair",
    "dirac",
    "ellipsoid_constraint",
    "jacobi_residual",
    "poisson",
    "sample_points",
    "sphere_constraint",
    "verify_commuting_family",
]

SINGULAR_J_TOL = 1e-12


def poisson_xp(f: Observable, g: Observable, x, p):
    """Poisson bracket evaluated on raw coordinate sequences.

    Entries may be duals, in which case the returned value is a dual whose
    partials are the exact gradient of the bracket (second derivatives of
    f and g enter exactly, no finite differencing).
    """
    n = len(x)
    _, gf = value_and_grad_of(f.fn, x, p)
    _, gg = value_and_grad_of(g.fn, x, p)
    acc = 0.0
    for i in range(n):
        acc = acc + gf[i] * gg[n + i] - gf[n + i] * gg[i]
    return acc


def poisson(f: Observable, g: Observable, pt: PhasePoint) -> float:
    """{f, g}(pt) = sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i)."""
    if f.n != g.n:
        raise ValueError("arity mismatch between bracket operands")
    if pt.n != f.n:
        raise ValueError("point dimension does not match the operands")
    return float(poisson_xp(f, g, pt.x, pt.p))


class ConstraintKind(Enum):
    SPHERE = "sphere"
    ELLIPSOID = "ellipsoid"


@dataclass(frozen=True)
class ConstraintPair:
    """Second-class constraint pair (phi, Pi) defining a Dirac bracket."""

    kind: ConstraintKind
    phi: Observable
    pi: Observable
    n: int
    params: Parameters | None = None

    def project(self, pt: PhasePoint) -> PhasePoint:
        """Rescale x onto phi = 0 along the ray, then remove the Pi-component of p.

        Idempotent; raises ``DegeneratePoint`` when x cannot be rescaled.
        """
        x = np.asarray(pt.x, dtype=float)
        p = np.asarray(pt.p, dtype=float)
        if self.kind is ConstraintKind.SPHERE:
            r = np.linalg.norm(x)
            if r == 0.0:
                raise DegeneratePoint("cannot project x = 0 onto the sphere")
            xs = x / r
            ps = p - xs * (xs @ p)
            return PhasePoint(xs, ps)
        a = self.params.alphas_as_floats()
        s2 = float(np.sum(x * x / a))
        if s2 <= 0.0:
            raise DegeneratePoint("point has no ray intersection with the ellipsoid")
        xs = x / np.sqrt(s2)
        grad_phi = xs / a
        ps = p - grad_phi * (grad_phi @ p) / (grad_phi @ grad_phi)
        return PhasePoint(xs, ps)


def sphere_constraint(n: int) -> ConstraintPair:
    """phi = (|x|^2 - 1)/2 and Pi = x . p; {phi, Pi} = |x|^2 = 1 on the surface."""
    phi = Observable(n, lambda x, p: 0.5 * (sum(x[i] * x[i] for i in range(n)) - 1.0),
                     name="phi_sphere")
    pi = Observable(n, lambda x, p: sum(x[i] * p[i] for i in range(n)), name="Pi_sphere")
    return ConstraintPair(ConstraintKind.SPHERE, phi, pi, n)


def ellipsoid_constraint(params: Parameters) -> ConstraintPair:
    """phi = (sum x_i^2/alpha_i - 1)/2 and Pi = sum x_i p_i / alpha_i."""
    n = params.n
    a = [float(v) for v in params.alphas]
    if any(v == 0.0 for v in a):
        raise DomainError("ellipsoid semi-axes need nonzero alphas")
    inva = [1.0 / v for v in a]
    phi = Observable(
        n, lambda x, p: 0.5 * (sum(x[i] * x[i] * inva[i] for i in range(n)) - 1.0),
        name="phi_ellipsoid")
    pi = Observable(n, lambda x, p: sum(x[i] * p[i] * inva[i] for i in range(n)),
                    name="Pi_ellipsoid")
    return ConstraintPair(ConstraintKind.ELLIPSOID, phi, pi, n, params=params)


def dirac(f: Observable, g: Observable, c: ConstraintPair, pt: PhasePoint) -> float:
    """{f,g}_D = {f,g} + {f,phi} (1/J) {Pi,g} - {f,Pi} (1/J) {phi,g}, J = {phi,Pi}."""
    J = poisson(c.phi, c.pi, pt)
    if abs(J) < SINGULAR_J_TOL:
        raise SingularConstraint(f"|J| = {abs(J)} below {SINGULAR_J_TOL}")
    return (poisson(f, g, pt)
            + poisson(f, c.phi, pt) * poisson(c.pi, g, pt) / J
            - poisson(f, c.pi, pt) * poisson(c.phi, g, pt) / J)


def jacobi_residual(f: Observable, g: Observable, h: Observable, pt: PhasePoint) -> float:
    """{f,{g,h}} + {g,{h,f}} + {h,{f,g}} at pt.

    Inner brackets are wrapped as observables whose programs call
    :func:`poisson_xp`; evaluating them on duals nests the differentiation,
    so the second derivatives are exact rather than finite-differenced.
    """
    def nested(a, b):
        return Observable(f.n, lambda x, p: poisson_xp(a, b, x, p),
                          name=f"{{{a.name},{b.name}}}")

    return (poisson(f, nested(g, h), pt)
            + poisson(g, nested(h, f), pt)
            + poisson(h, nested(f, g), pt))


def sample_points(n: int, count: int, seed: int,
                  constraint: ConstraintPair | None = None) -> list[PhasePoint]:
    """Deterministic interior sample: x_i in (0.1, 2), p_i in (-2, 2).

    Only uniform doubles are drawn from the PCG64 stream, keeping the point
    set reproducible bit-for-bit across platforms.  With a constraint the
    raw points are projected onto phi = 0, Pi = 0.
    """
    rng = np.random.default_rng(seed)
    pts = []
    for _ in range(count):
        x = 0.1 + 1.9 * rng.random(n)
        p = -2.0 + 4.0 * rng.random(n)
        pt = PhasePoint(x, p)
        if constraint is not None:
            pt = constraint.project(pt)
        pts.append(pt)
    return pts


@dataclass(frozen=True)
class BracketReport:
    """Residual of one bracket evaluation for the family pair (i, k)."""

    i: int
    k: int
    trial: int
    residual: float
    scale: float
    tolerance: float
    passed: bool
    point: PhasePoint
    error: str | None = None


def verify_commuting_family(family, constraint: ConstraintPair | None = None,
                            trials: int = 100, seed: int = 42,
                            tol: float = 1e-10) -> list[BracketReport]:
    """Evaluate all pairwise brackets of ``family`` at seeded random points.

    Uses the canonical Poisson bracket, or the Dirac bracket of
    ``constraint`` (with points projected onto the constraint surface).
    The pass criterion is relative: |residual| <= tol * max(1, |f(pt) g(pt)|),
    since family values grow with the spread of the alphas.  Evaluation
    errors are recorded per point without aborting the batch.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    points = sample_points(family[0].n, trials, seed, constraint)
    reports = []
    for i, k in combinations(range(len(family)), 2):
        f, g = family[i], family[k]
        for t, pt in enumerate(points):
            try:
                if constraint is None:
                    res = poisson(f, g, pt)
                else:
                    res = dirac(f, g, constraint, pt)
                scale = max(1.0, abs(f.eval(pt) * g.eval(pt)))
                reports.append(BracketReport(
                    i=i, k=k, trial=t, residual=res, scale=scale, tolerance=tol,
                    passed=abs(res) <= tol * scale, point=pt))
            except InvolutionError as exc:
                reports.append(BracketReport(
                    i=i, k=k, trial=t, residual=float("nan"), scale=1.0,
                    tolerance=tol, passed=False, point=pt, error=str(exc)))
    return reports
