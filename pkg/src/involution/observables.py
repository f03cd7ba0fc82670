"""Constructors for the conserved-quantity families and related Hamiltonians.

All indices are zero-based in code; reports and the CLI print them one-based.
Each family below Poisson-commutes pairwise (verified numerically by
``brackets.verify_commuting_family`` and exactly, on the operator side, by
``operator_algebra``).
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .core import Observable, Parameters, sqrt
from .errors import DomainError

__all__ = [
    "FamilyKind",
    "HamiltonianKind",
    "cyclic_identity_residual",
    "make_F",
    "make_G",
    "make_H",
    "make_Htilde",
    "make_Jalpha",
    "make_L_tail",
    "make_angular_J",
    "make_family",
    "make_hamiltonian",
    "make_quartic_hamiltonian",
    "make_sqrtL",
]


class FamilyKind(Enum):
    """Indexed families of N observables, one constructor each."""

    F = "F"            # ellipsoid-geodesic integrals p_i^2 + tails
    G = "G"            # Neumann integrals x_i^2 + tails
    JALPHA = "Jalpha"  # dilation-deformed family alpha x_i p_i + tails
    HTILDE = "Htilde"  # x_k x_l (p_k - p_l)^2 family
    H = "H"            # p_k (x_k - x_l)^2 p_l family
    LTAIL = "Ltail"    # tails over the square-root realisation generators


class HamiltonianKind(Enum):
    ELLIPSOID_GEODESIC = "ellipsoid"
    NEUMANN = "neumann"
    QUARTIC_N2 = "quartic"


def cyclic_identity_residual(params: Parameters, i: int, k: int, l: int) -> Fraction:
    """Exact residual 1/(a_ik a_kl) + 1/(a_kl a_li) + 1/(a_li a_ik), a_xy = alpha_x - alpha_y.

    Always the zero fraction for pairwise-distinct alphas; evaluated in
    rational arithmetic so the cancellation is exact, not approximate.
    """
    if len({i, k, l}) != 3:
        raise ValueError("indices i, k, l must be distinct")
    a = params.alphas_as_fractions()
    aik = a[i] - a[k]
    akl = a[k] - a[l]
    ali = a[l] - a[i]
    return 1 / (aik * akl) + 1 / (akl * ali) + 1 / (ali * aik)


def _inverse_diffs(params: Parameters, i: int):
    """Float values of 1/(alpha_i - alpha_j), computed exactly first."""
    a = params.alphas_as_fractions()
    return [0.0 if j == i else float(1 / (a[i] - a[j])) for j in range(params.n)]


def make_F(i: int, params: Parameters) -> Observable:
    """F_i = p_i^2 + sum_{j != i} (x_i p_j - x_j p_i)^2 / (alpha_i - alpha_j)."""
    n, inv = params.n, _inverse_diffs(params, i)

    def fn(x, p):
        s = p[i] * p[i]
        for j in range(n):
            if j != i:
                jij = x[i] * p[j] - x[j] * p[i]
                s = s + jij * jij * inv[j]
        return s

    return Observable(n, fn, name=f"F{i + 1}")


def make_G(i: int, params: Parameters) -> Observable:
    """G_i = x_i^2 + sum_{j != i} (x_i p_j - x_j p_i)^2 / (alpha_i - alpha_j)."""
    n, inv = params.n, _inverse_diffs(params, i)

    def fn(x, p):
        s = x[i] * x[i]
        for j in range(n):
            if j != i:
                jij = x[i] * p[j] - x[j] * p[i]
                s = s + jij * jij * inv[j]
        return s

    return Observable(n, fn, name=f"G{i + 1}")


def make_Jalpha(i: int, params: Parameters) -> Observable:
    """J_i = alpha x_i p_i + sum_{j != i} (x_i p_j - x_j p_i)^2 / (alpha_i - alpha_j)."""
    n, inv = params.n, _inverse_diffs(params, i)
    al = params.alpha_as_float()

    def fn(x, p):
        s = al * x[i] * p[i]
        for j in range(n):
            if j != i:
                jij = x[i] * p[j] - x[j] * p[i]
                s = s + jij * jij * inv[j]
        return s

    return Observable(n, fn, name=f"J{i + 1}")


def make_Htilde(k: int, params: Parameters) -> Observable:
    """Htilde_k = sum_{l != k} x_k x_l (p_k - p_l)^2 / (alpha_k - alpha_l) + alpha x_k p_k."""
    n, inv = params.n, _inverse_diffs(params, k)
    al = params.alpha_as_float()

    def fn(x, p):
        s = al * x[k] * p[k]
        for l in range(n):
            if l != k:
                d = p[k] - p[l]
                s = s + x[k] * x[l] * d * d * inv[l]
        return s

    return Observable(n, fn, name=f"Ht{k + 1}")


def make_H(k: int, params: Parameters) -> Observable:
    """H_k = sum_{l != k} p_k (x_k - x_l)^2 p_l / (alpha_k - alpha_l) - alpha x_k p_k."""
    n, inv = params.n, _inverse_diffs(params, k)
    al = params.alpha_as_float()

    def fn(x, p):
        s = -al * x[k] * p[k]
        for l in range(n):
            if l != k:
                d = x[k] - x[l]
                s = s + p[k] * d * d * p[l] * inv[l]
        return s

    return Observable(n, fn, name=f"H{k + 1}")


def make_angular_J(i: int, j: int, params: Parameters) -> Observable:
    """Angular-momentum generator J_ij = x_i p_j - x_j p_i."""
    if i == j:
        raise ValueError("i and j must differ")
    return Observable(params.n, lambda x, p: x[i] * p[j] - x[j] * p[i],
                      name=f"Jang{i + 1}{j + 1}")


def make_sqrtL(i: int, j: int, params: Parameters) -> Observable:
    """Square-root realisation generator L_ij = -2 sqrt(x_i x_j) (p_i - p_j).

    Defined on x_i, x_j > 0; antisymmetric, L_ji = -L_ij.
    """
    if i == j:
        raise ValueError("i and j must differ")

    def fn(x, p):
        return -2.0 * sqrt(x[i] * x[j]) * (p[i] - p[j])

    return Observable(params.n, fn, name=f"L{i + 1}{j + 1}")


def make_L_tail(i: int, params: Parameters) -> Observable:
    """T_i = sum_{j != i} L_ij^2 / (alpha_i - alpha_j) over the sqrt generators.

    These commute pairwise for any generators satisfying the angular-momentum
    relations, which is exactly what the sqrt realisation provides.
    """
    n, inv = params.n, _inverse_diffs(params, i)

    def fn(x, p):
        s = 0.0
        for j in range(n):
            if j != i:
                root = sqrt(x[i] * x[j])
                d = p[i] - p[j]
                s = s + 4.0 * root * root * d * d * inv[j]
        return s

    return Observable(n, fn, name=f"T{i + 1}")


_FAMILY_BUILDERS = {
    FamilyKind.F: make_F,
    FamilyKind.G: make_G,
    FamilyKind.JALPHA: make_Jalpha,
    FamilyKind.HTILDE: make_Htilde,
    FamilyKind.H: make_H,
    FamilyKind.LTAIL: make_L_tail,
}


def make_family(kind: FamilyKind, params: Parameters) -> list[Observable]:
    """All N members of an indexed family."""
    build = _FAMILY_BUILDERS[kind]
    return [build(i, params) for i in range(params.n)]


def make_quartic_hamiltonian(mu: float, n: int = 2) -> Observable:
    """Two-particle quartic Hamiltonian (P^2/4 - p^2) q^2 / (2 mu).

    Written in the original coordinates through q = x_2 - x_1,
    p = (p_2 - p_1)/2 and P = p_1 + p_2; mu must be nonzero.
    """
    if n != 2:
        raise ValueError("the quartic reduction is a two-particle system")
    if mu == 0:
        raise DomainError("mu = alpha_1 * alpha_2 must be nonzero")
    inv2mu = 1.0 / (2.0 * mu)

    def fn(x, p):
        q = x[1] - x[0]
        prel = (p[1] - p[0]) * 0.5
        ptot = p[0] + p[1]
        return (ptot * ptot * 0.25 - prel * prel) * q * q * inv2mu

    return Observable(2, fn, name="Hq")


def make_hamiltonian(kind: HamiltonianKind, params: Parameters) -> Observable:
    """Base Hamiltonians: free motion, Neumann potential, or the N=2 quartic."""
    n = params.n
    if kind is HamiltonianKind.ELLIPSOID_GEODESIC:
        return Observable(n, lambda x, p: 0.5 * sum(p[i] * p[i] for i in range(n)),
                          name="Hgeo")
    if kind is HamiltonianKind.NEUMANN:
        a = [float(v) for v in params.alphas]

        def fn(x, p):
            s = 0.0
            for i in range(n):
                s = s + 0.5 * (p[i] * p[i] + a[i] * x[i] * x[i])
            return s

        return Observable(n, fn, name="Hneu")
    if kind is HamiltonianKind.QUARTIC_N2:
        if n != 2:
            raise ValueError("the quartic Hamiltonian needs exactly two particles")
        a = params.alphas_as_floats()
        return make_quartic_hamiltonian(float(a[0] * a[1]))
    raise ValueError(f"unknown Hamiltonian kind: {kind!r}")
