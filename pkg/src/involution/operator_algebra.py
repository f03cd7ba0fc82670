"""Exact normal-ordering engine for differential operators.

Operators are finite sums of terms

    coefficient * x_1^{e_1} ... x_N^{e_N} * d_1^{k_1} ... d_N^{k_N}

with Gaussian-rational coefficients (a + b*i, a and b exact fractions),
quarter-integer coordinate exponents (stored as integer numerators, unit
1/4) and nonnegative integer derivative orders.  Products are normal
ordered through the generalized Leibniz exchange

    d^b x^c = sum_{k=0..b} C(b,k) c(c-1)...(c-k+1) x^{c-k} d^{b-k}

valid for rational c, so every identity below is decided exactly: a
commutator either is the empty operator or it is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import DuplicateAlpha

__all__ = [
    "DiffOp",
    "GaussianRational",
    "IdentityCheck",
    "OperatorReport",
    "apply_operator_chain",
    "build_Hhat",
    "build_Jhat",
    "build_Jhat_tail",
    "build_Lhat",
    "build_dilation_quadratic",
    "build_naive_quantisation",
    "build_rho_sq",
    "commutator",
    "evaluate_power_sum",
    "verify_Hhat_commutativity",
    "verify_aux_relations",
    "verify_dilation_identity",
    "verify_naive_noncommute",
    "verify_soN",
    "verify_xpJ_symmetry",
]


class GaussianRational:
    """Exact complex number a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def _coerce(v):
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, (int, Fraction)):
            return GaussianRational(v)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational((self.re * o.re + self.im * o.im) / norm,
                                (self.im * o.re - self.re * o.im) / norm)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def render(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im} i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re} {sign} {abs(self.im)} i"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


_GR_ZERO = GaussianRational(0)
_GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def _leibniz_options(b: int, e_num: int):
    """[(k, C(b,k) * falling_factorial(e_num/4, k))] with zero factors dropped."""
    opts = []
    for k in range(b + 1):
        acc = 1
        for m in range(k):
            acc *= e_num - 4 * m
        fac = Fraction(math.comb(b, k) * acc, 4 ** k)
        if fac:
            opts.append((k, fac))
    return opts


class DiffOp:
    """Normal-ordered differential operator; an immutable value.

    Internally a mapping ``(xexp, dexp) -> coefficient`` where ``xexp`` is
    the tuple of quarter-numerators of the coordinate powers and ``dexp``
    the tuple of derivative orders.  Equality is exact term-list equality.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        cleaned = {}
        if terms:
            for key, coeff in terms.items():
                if not isinstance(coeff, GaussianRational):
                    coeff = GaussianRational(coeff)
                if coeff:
                    cleaned[key] = coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", cleaned)

    def __setattr__(self, *_):
        raise AttributeError("DiffOp is immutable")

    # --- constructors ---

    @classmethod
    def zero(cls, n: int) -> "DiffOp":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "DiffOp":
        return cls.monomial(n, 1)

    @classmethod
    def monomial(cls, n: int, coeff, xquarters=None, dorders=None) -> "DiffOp":
        """Single term; ``xquarters`` maps coord -> exponent numerator (unit 1/4)."""
        xe = [0] * n
        de = [0] * n
        for i, q in (xquarters or {}).items():
            xe[i] = q
        for i, d in (dorders or {}).items():
            if d < 0:
                raise ValueError("derivative orders must be nonnegative")
            de[i] = d
        return cls(n, {(tuple(xe), tuple(de)): coeff})

    @classmethod
    def coord(cls, n: int, i: int, quarters: int = 4) -> "DiffOp":
        """x_i^{quarters/4}; negative numerators give inverse powers."""
        return cls.monomial(n, 1, xquarters={i: quarters})

    @classmethod
    def deriv(cls, n: int, i: int, order: int = 1) -> "DiffOp":
        return cls.monomial(n, 1, dorders={i: order})

    # --- inspection ---

    @property
    def terms(self):
        return dict(self._terms)

    def term_count(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficients_are_real(self) -> bool:
        return all(c.is_real for c in self._terms.values())

    def derivative_orders(self) -> set[int]:
        """Set of total derivative orders appearing across terms."""
        return {sum(d) for _, d in self._terms}

    # --- algebra ---

    def _require_same_space(self, other):
        if self.n != other.n:
            raise ValueError("operators act on different coordinate counts")

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._require_same_space(other)
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            acc = terms.get(key, _GR_ZERO) + coeff
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return DiffOp(self.n, terms)

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DiffOp(self.n, {k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            self._require_same_space(other)
            out: dict = {}
            for (e1, d1), c1 in self._terms.items():
                for (e2, d2), c2 in other._terms.items():
                    _accumulate_product(out, self.n, e1, d1, c1, e2, d2, c2)
            return DiffOp(self.n, out)
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = other if isinstance(other, GaussianRational) else GaussianRational(other)
            return DiffOp(self.n, {k: v * c for k, v in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def formal_transpose(self, conjugate: bool = False) -> "DiffOp":
        """Transpose under d -> -d with order reversal; optionally conjugate.

        With ``conjugate=True`` this is the formal adjoint for the real
        inner product on functions of x.
        """
        out = DiffOp.zero(self.n)
        for (e, d), c in self._terms.items():
            cc = c.conjugate() if conjugate else c
            sign = -1 if sum(d) % 2 else 1
            flipped = (DiffOp(self.n, {((0,) * self.n, d): cc * sign})
                       * DiffOp(self.n, {(e, (0,) * self.n): _GR_ONE}))
            out = out + flipped
        return out

    # --- function application (independent of the product machinery) ---

    def apply_to_power(self, beta):
        """Apply to the function x^beta (componentwise rational exponents).

        Returns ``[(coefficient, exponent_tuple)]`` of the resulting sum of
        power functions.  Only falling factorials are used here, not the
        Leibniz product exchange, so this path cross-checks ``__mul__``.
        """
        beta = tuple(Fraction(b) for b in beta)
        out = []
        for (e, d), c in self._terms.items():
            fac = Fraction(1)
            for i in range(self.n):
                for m in range(d[i]):
                    fac *= beta[i] - m
                if fac == 0:
                    break
            if fac == 0:
                continue
            expo = tuple(beta[i] - d[i] + Fraction(e[i], 4) for i in range(self.n))
            out.append((c * fac, expo))
        return out

    # --- rendering ---

    def render(self) -> str:
        """Canonical text form: one term per line, sorted by (dexp, xexp)."""
        if not self._terms:
            return "0"
        lines = []
        for xe, de in sorted(self._terms, key=lambda k: (k[1], k[0])):
            coeff = self._terms[(xe, de)]
            parts = [f"({coeff.render()})"]
            for i, e in enumerate(xe):
                if e:
                    parts.append(_power_str("x", i + 1, Fraction(e, 4)))
            for i, d in enumerate(de):
                if d:
                    parts.append(_power_str("d", i + 1, Fraction(d)))
            lines.append(" ".join(parts))
        return "\n".join(lines)

    def __repr__(self):
        body = self.render().replace("\n", "  +  ")
        return f"<DiffOp n={self.n}: {body}>"


def _power_str(sym: str, index: int, q: Fraction) -> str:
    if q == 1:
        return f"{sym}{index}"
    return f"{sym}{index}^{{{q}}}"


def _accumulate_product(out: dict, n: int, e1, d1, c1, e2, d2, c2):
    """Add the normal-ordered expansion of (c1 x^e1 d^d1)(c2 x^e2 d^d2) to out."""
    coeff = c1 * c2
    active = [i for i in range(n) if d1[i] > 0]
    per_coord = [[(i, k, f) for k, f in _leibniz_options(d1[i], e2[i])] for i in active]
    for combo in product(*per_coord):
        e = list(e1)
        d = list(d2)
        fac = Fraction(1)
        for i in range(n):
            e[i] += e2[i]
            d[i] += d1[i]
        for i, k, f in combo:
            e[i] -= 4 * k
            d[i] -= k
            fac *= f
        key = (tuple(e), tuple(d))
        acc = out.get(key, _GR_ZERO) + coeff * fac
        if acc:
            out[key] = acc
        else:
            out.pop(key, None)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    """[a, b] = a b - b a in normal form."""
    return a * b - b * a


# --- independent application oracle helpers ---

def apply_operator_chain(ops, beta):
    """Apply a chain of operators (leftmost acts last) to x^beta sequentially.

    Returns a mapping ``exponent_tuple -> coefficient``.  Because each
    application goes through :meth:`DiffOp.apply_to_power` only, comparing
    against the single application of the engine product gives an oracle
    for normal ordering.
    """
    funcs = {tuple(Fraction(b) for b in beta): _GR_ONE}
    for op in reversed(list(ops)):
        new: dict = {}
        for expo, c in funcs.items():
            for c2, expo2 in op.apply_to_power(expo):
                acc = new.get(expo2, _GR_ZERO) + c * c2
                if acc:
                    new[expo2] = acc
                else:
                    new.pop(expo2, None)
        funcs = new
    return funcs


def evaluate_power_sum(funcs, point) -> complex:
    """Numeric value of ``sum c * prod x_i^{g_i}`` at a positive point."""
    total = 0j
    for expo, c in funcs.items():
        val = 1.0
        for xi, gi in zip(point, expo):
            val *= float(xi) ** float(gi)
        total += c.to_complex() * val
    return total


# --- generator builders ---

def build_rho_sq(n: int, i: int, j: int) -> DiffOp:
    """rho_ij^2 = sqrt(x_i x_j) as a multiplication operator; rho_ii^2 = x_i."""
    if i == j:
        return DiffOp.coord(n, i)
    return DiffOp.monomial(n, 1, xquarters={i: 2, j: 2})


def _rho(n: int, i: int, j: int) -> DiffOp:
    return DiffOp.monomial(n, 1, xquarters={i: 1, j: 1})


def _d_diff(n: int, i: int, j: int) -> DiffOp:
    return DiffOp.deriv(n, i) - DiffOp.deriv(n, j)


def build_Lhat(n: int, i: int, j: int) -> DiffOp:
    """L_ij = 2 (x_i x_j)^{1/4} (d_i - d_j) (x_i x_j)^{1/4}, antisymmetric in (i, j)."""
    if i == j:
        raise ValueError("i and j must differ")
    rho = _rho(n, i, j)
    return 2 * (rho * _d_diff(n, i, j) * rho)


def _Lhat_or_zero(n: int, i: int, j: int) -> DiffOp:
    return DiffOp.zero(n) if i == j else build_Lhat(n, i, j)


def build_Jhat(n: int, i: int, j: int) -> DiffOp:
    """Polynomial rotation generator x_i d_j - x_j d_i."""
    return (DiffOp.coord(n, i) * DiffOp.deriv(n, j)
            - DiffOp.coord(n, j) * DiffOp.deriv(n, i))


def _exact_diffs(alphas) -> list:
    exact = [Fraction(a) for a in alphas]
    for i in range(len(exact)):
        for j in range(i + 1, len(exact)):
            if exact[i] == exact[j]:
                raise DuplicateAlpha(f"alpha_{i + 1} = alpha_{j + 1}")
    return exact


def build_Hhat(n: int, alphas, alpha, k: int) -> DiffOp:
    """Deformed family member built on the square-root realisation:

        H_k = - sum_{l != k} rho_kl (d_k - d_l) (rho_kl^2 / a_kl) (d_k - d_l) rho_kl
              - (i alpha / 2) (x_k d_k + d_k x_k)

    with a_kl = alpha_k - alpha_l; all coefficients Gaussian rational.
    """
    a = _exact_diffs(alphas)
    alpha = Fraction(alpha)
    total = DiffOp.zero(n)
    for l in range(n):
        if l == k:
            continue
        rho = _rho(n, k, l)
        dd = _d_diff(n, k, l)
        middle = Fraction(1, 1) / (a[k] - a[l]) * build_rho_sq(n, k, l)
        total = total - rho * dd * middle * dd * rho
    dil = (DiffOp.coord(n, k) * DiffOp.deriv(n, k)
           + DiffOp.deriv(n, k) * DiffOp.coord(n, k))
    return total + GaussianRational(0, -alpha / 2) * dil


def build_Jhat_tail(n: int, alphas, i: int) -> DiffOp:
    """T_i = sum_{j != i} Jhat_ij^2 / (alpha_i - alpha_j)."""
    a = _exact_diffs(alphas)
    total = DiffOp.zero(n)
    for j in range(n):
        if j != i:
            jij = build_Jhat(n, i, j)
            total = total + Fraction(1, 1) / (a[i] - a[j]) * (jij * jij)
    return total


def build_dilation_quadratic(n: int, alphas, i: int) -> DiffOp:
    """M_i = sum_{j != i} x_ij (d_i d_j / a_ij) x_ij with x_ij = x_i - x_j."""
    a = _exact_diffs(alphas)
    total = DiffOp.zero(n)
    for j in range(n):
        if j != i:
            xij = DiffOp.coord(n, i) - DiffOp.coord(n, j)
            core = DiffOp.deriv(n, i) * DiffOp.deriv(n, j)
            total = total + Fraction(1, 1) / (a[i] - a[j]) * (xij * core * xij)
    return total


def build_naive_quantisation(n: int, alphas, i: int) -> DiffOp:
    """N_i = sum_{j != i} x_ij ((d_i - d_j)^2 / a_ij) x_ij, the coordinate ordering."""
    a = _exact_diffs(alphas)
    total = DiffOp.zero(n)
    for j in range(n):
        if j != i:
            xij = DiffOp.coord(n, i) - DiffOp.coord(n, j)
            dij = _d_diff(n, i, j)
            total = total + Fraction(1, 1) / (a[i] - a[j]) * (xij * dij * dij * xij)
    return total


# --- identity verification ---

@dataclass(frozen=True)
class IdentityCheck:
    label: str
    residual_terms: int
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class OperatorReport:
    relation: str
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def _delta(i, j):
    return 1 if i == j else 0


def verify_soN(n: int) -> OperatorReport:
    """Check [L_ij, L_kl] = -d_jk L_il + d_ik L_jl + d_jl L_ik - d_il L_jk exactly."""
    if n < 3:
        raise ValueError("the rotation-algebra sweep needs n >= 3")
    gens = list(combinations(range(n), 2))
    checks = []
    for (i, j) in gens:
        for (k, l) in gens:
            lhs = commutator(build_Lhat(n, i, j), build_Lhat(n, k, l))
            rhs = DiffOp.zero(n)
            for sign, a, b in ((-_delta(j, k), i, l), (_delta(i, k), j, l),
                               (_delta(j, l), i, k), (-_delta(i, l), j, k)):
                if sign:
                    rhs = rhs + sign * _Lhat_or_zero(n, a, b)
            res = (lhs - rhs).term_count()
            checks.append(IdentityCheck(
                label=f"[L{i + 1}{j + 1},L{k + 1}{l + 1}]",
                residual_terms=res, passed=res == 0))
    return OperatorReport("son", tuple(checks))


def verify_aux_relations(n: int) -> OperatorReport:
    """Exact checks of the scaling, coordinate and rho^2 relations of the L_ij.

    The scaling relation holds in the symmetrized half form

        [x_k d_k, L_ij] = (d_kj - d_ki) * (1/2) ((d_i + d_j) rho_ij^2
                                               + rho_ij^2 (d_i + d_j));

    the check records that the factor is 1/2 (the unhalved variant differs
    by an overall factor 2).  The rho^2 relation is verified against its
    completed four-term form, recorded in the detail string.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    checks = []
    pairs = list(combinations(range(n), 2))
    for (i, j) in pairs:
        lhat = build_Lhat(n, i, j)
        rho2 = build_rho_sq(n, i, j)
        dsum = DiffOp.deriv(n, i) + DiffOp.deriv(n, j)
        sym = dsum * rho2 + rho2 * dsum
        for k in range(n):
            # scaling relation
            lhs = commutator(DiffOp.coord(n, k) * DiffOp.deriv(n, k), lhat)
            rhs = (_delta(k, j) - _delta(k, i)) * Fraction(1, 2) * sym
            res = (lhs - rhs).term_count()
            checks.append(IdentityCheck(
                label=f"[x{k + 1} d{k + 1}, L{i + 1}{j + 1}]",
                residual_terms=res, passed=res == 0, detail="factor 1/2"))
            # coordinate relation
            lhs = commutator(lhat, DiffOp.coord(n, k))
            rhs = (2 * (_delta(i, k) - _delta(j, k))) * rho2
            res = (lhs - rhs).term_count()
            checks.append(IdentityCheck(
                label=f"[L{i + 1}{j + 1}, x{k + 1}]",
                residual_terms=res, passed=res == 0))
            # derivative relation
            lhs = commutator(DiffOp.deriv(n, k), lhat)
            inv_xk = DiffOp.coord(n, k, quarters=-4)
            rhs = Fraction(_delta(k, i) + _delta(k, j), 4) * (inv_xk * lhat + lhat * inv_xk)
            res = (lhs - rhs).term_count()
            checks.append(IdentityCheck(
                label=f"[d{k + 1}, L{i + 1}{j + 1}]",
                residual_terms=res, passed=res == 0))
    for (i, j) in pairs:
        lhat = build_Lhat(n, i, j)
        for (k, l) in pairs:
            lhs = commutator(lhat, build_rho_sq(n, k, l))
            rhs = DiffOp.zero(n)
            for sign, a, b in ((_delta(i, k), j, l), (_delta(i, l), j, k),
                               (-_delta(j, k), i, l), (-_delta(j, l), i, k)):
                if sign:
                    rhs = rhs + sign * build_rho_sq(n, a, b)
            res = (lhs - rhs).term_count()
            checks.append(IdentityCheck(
                label=f"[L{i + 1}{j + 1}, rho2_{k + 1}{l + 1}]",
                residual_terms=res, passed=res == 0,
                detail="completion + rho2_jl + rho2_jk - rho2_il - rho2_ik"))
    return OperatorReport("aux", tuple(checks))


def verify_Hhat_commutativity(n: int, alphas, alpha) -> OperatorReport:
    """[H_i, H_k] = 0 (empty normal form) for every pair."""
    hs = [build_Hhat(n, alphas, alpha, k) for k in range(n)]
    checks = []
    for i, k in combinations(range(n), 2):
        res = commutator(hs[i], hs[k]).term_count()
        checks.append(IdentityCheck(
            label=f"[H{i + 1},H{k + 1}]", residual_terms=res, passed=res == 0))
    return OperatorReport("hk", tuple(checks))


def verify_xpJ_symmetry(n: int, alphas, alpha=0) -> OperatorReport:
    """C_ik = [x_k d_k, T_i] is symmetric in (i, k); the deformed family commutes.

    T_i is the rotation-quadratic tail; the corollary checks that
    alpha x_i d_i + T_i mutually commute exactly.
    """
    alpha = Fraction(alpha)
    tails = [build_Jhat_tail(n, alphas, i) for i in range(n)]
    dil = [DiffOp.coord(n, k) * DiffOp.deriv(n, k) for k in range(n)]
    checks = []
    for i, k in combinations(range(n), 2):
        cik = commutator(dil[k], tails[i])
        cki = commutator(dil[i], tails[k])
        res = (cik - cki).term_count()
        checks.append(IdentityCheck(
            label=f"C{i + 1}{k + 1}-C{k + 1}{i + 1}", residual_terms=res, passed=res == 0))
    full = [alpha * dil[i] + tails[i] for i in range(n)]
    for i, k in combinations(range(n), 2):
        res = commutator(full[i], full[k]).term_count()
        checks.append(IdentityCheck(
            label=f"[J{i + 1},J{k + 1}]", residual_terms=res, passed=res == 0))
    return OperatorReport("xpj", tuple(checks))


def verify_dilation_identity(n: int, alphas) -> OperatorReport:
    """Antisymmetrized dilation commutator with the x_ij d_i d_j x_ij sums vanishes.

    Each individual commutator is generically nonzero; only the
    (i <-> k)-antisymmetrized combination cancels.
    """
    ms = [build_dilation_quadratic(n, alphas, i) for i in range(n)]
    dil = [DiffOp.coord(n, k) * DiffOp.deriv(n, k)
           + DiffOp.deriv(n, k) * DiffOp.coord(n, k) for k in range(n)]
    checks = []
    for i, k in combinations(range(n), 2):
        anti = commutator(dil[k], ms[i]) - commutator(dil[i], ms[k])
        res = anti.term_count()
        single = commutator(dil[k], ms[i]).term_count()
        checks.append(IdentityCheck(
            label=f"dil({i + 1},{k + 1})", residual_terms=res, passed=res == 0,
            detail=f"individual commutator terms: {single}"))
    return OperatorReport("dilation", tuple(checks))


def _naive_rhs_pattern(n: int, alphas, i: int, k: int) -> DiffOp:
    """First-order three-index pattern the coordinate-ordered commutator follows."""
    a = _exact_diffs(alphas)
    rhs = DiffOp.zero(n)
    for l in range(n):
        if l in (i, k):
            continue
        for (p, q, r) in ((i, k, l), (k, l, i), (l, i, k)):
            xpq = DiffOp.coord(n, p) - DiffOp.coord(n, q)
            dsum = DiffOp.deriv(n, p) + DiffOp.deriv(n, q) - DiffOp.deriv(n, r)
            rhs = rhs + Fraction(1, 1) / ((a[p] - a[r]) * (a[q] - a[r])) * (xpq * dsum)
    return rhs


_FACTOR_CANDIDATES = [Fraction(num, den) for num in
                      (1, -1, 2, -2, 4, -4, 8, -8, 16, -16, 3, -3, 6, -6)
                      for den in (1, 2, 4)]


def verify_naive_noncommute(n: int, alphas) -> OperatorReport:
    """The difference-squared ordering x_ij (d_i - d_j)^2 x_ij does NOT commute.

    For n >= 3 each pair commutator must be nonzero (that is the obstruction
    being verified); for n = 2 there is no third index and it must vanish.
    The detail records the exact structure found: the total derivative
    orders present and, if the commutator is an exact rational multiple of
    the first-order three-index pattern, that factor.  (Exact computation
    shows the residual carries second- and third-order terms, so no factor
    exists; the hermitian orderings of x_ij d_i d_j x_ij, by contrast,
    commute exactly — see ``build_dilation_quadratic``.)
    """
    ns = [build_naive_quantisation(n, alphas, i) for i in range(n)]
    checks = []
    for i, k in combinations(range(n), 2):
        comm = commutator(ns[i], ns[k])
        if n == 2:
            res = comm.term_count()
            checks.append(IdentityCheck(
                label=f"[N{i + 1},N{k + 1}]", residual_terms=res, passed=res == 0,
                detail="vanishes: no third index available"))
            continue
        nonzero = not comm.is_zero()
        orders = sorted(comm.derivative_orders())
        factor = None
        pattern = _naive_rhs_pattern(n, alphas, i, k)
        for c in _FACTOR_CANDIDATES:
            if comm == c * pattern:
                factor = c
                break
        detail = (f"terms={comm.term_count()}, derivative orders={orders}, "
                  f"first-order pattern factor={factor}")
        checks.append(IdentityCheck(
            label=f"[N{i + 1},N{k + 1}]", residual_terms=comm.term_count(),
            passed=nonzero, detail=detail))
    return OperatorReport("naive", tuple(checks))
