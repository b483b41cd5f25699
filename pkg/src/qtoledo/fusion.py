"""Rational fusion Frobenius algebras of the SU2/SO3 families.

The algebra attached to a root of unity has structure constants that are
signs of products of quantum integers, so construction runs on exact
integer residue arithmetic.  Once built, everything downstream (traces,
signatures, gluing checks) is plain rational linear algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import Embedding, sin_turn_sign

Vector = tuple[Fraction, ...]


def _qsign(m: int, scale: int, emb: Embedding) -> int:
    # sign of [m] where [m] = sin(2*pi*k*scale*m/N)/sin(2*pi*k*scale/N)
    k = emb.exponent
    return sin_turn_sign(k * scale * m, emb.order) * sin_turn_sign(k * scale, emb.order)


def _qfact_sign(n: int, scale: int, emb: Embedding) -> int:
    s = 1
    for m in range(1, n + 1):
        t = _qsign(m, scale, emb)
        if t == 0:
            return 0
        s *= t
    return s


def _triple_sign(x: int, y: int, z: int, scale: int, emb: Embedding) -> int:
    """Sign of the triple-point invariant of three colors, 0 if inadmissible."""
    if (x + y + z) % 2:
        return 0
    a = (y + z - x) // 2
    b = (x + z - y) // 2
    c = (x + y - z) // 2
    if a < 0 or b < 0 or c < 0:
        return 0
    sign = (-1) ** (a + b + c)
    num = (_qfact_sign(a + b + c + 1, scale, emb)
           * _qfact_sign(a, scale, emb) * _qfact_sign(b, scale, emb) * _qfact_sign(c, scale, emb))
    if num == 0:
        return 0
    den = _qfact_sign(x, scale, emb) * _qfact_sign(y, scale, emb) * _qfact_sign(z, scale, emb)
    if den == 0:
        raise ArithmeticError("vanishing quantum factorial for an in-range color")
    return sign * num * den


@dataclass(frozen=True)
class FrobeniusAlgebra:
    """Fusion Frobenius algebra over Q with diagonal form eta = diag(eps)."""

    family: str                       # "so3" | "su2"
    level: int                        # odd l for so3, 4r for su2
    embedding: Embedding
    rank: int
    eps: tuple[int, ...]
    omega03: tuple[tuple[tuple[int, ...], ...], ...]
    colors: tuple[int, ...]           # underlying color labels
    gauge: int = 1                    # +-1 basis normalization applied to e_i -> gauge^i e_i
    _mult: tuple = field(default=None, repr=False, compare=False)
    _trace_vec: Vector = field(default=None, repr=False, compare=False)
    _alpha: Vector = field(default=None, repr=False, compare=False)
    _omega_el: Vector = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        r = self.rank
        if self.eps[0] != 1:
            raise ValueError("unit sign must be +1")
        for i in range(r):
            for j in range(r):
                if self.omega03[0][i][j] != (self.eps[i] if i == j else 0):
                    raise ValueError("omega03(0,j,k) must reproduce eta")
        mult = tuple(
            tuple(tuple(Fraction(self.omega03[i][j][k] * self.eps[k]) for k in range(r)) for j in range(r))
            for i in range(r)
        )
        object.__setattr__(self, "_mult", mult)
        trace_vec = tuple(sum(mult[i][j][j] for j in range(r)) for i in range(r))
        object.__setattr__(self, "_trace_vec", trace_vec)
        self._check_axioms()

    # -- structural checks -------------------------------------------------

    def _check_axioms(self):
        r = self.rank
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    if self.omega03[i][j][k] != self.omega03[j][i][k] or \
                       self.omega03[i][j][k] != self.omega03[i][k][j]:
                        raise ValueError("omega03 is not fully symmetric")
        unit = self.basis(0)
        for i in range(r):
            if self.multiply(unit, self.basis(i)) != self.basis(i):
                raise ValueError("unit law fails")
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    lhs = self.multiply(self.multiply(self.basis(i), self.basis(j)), self.basis(k))
                    rhs = self.multiply(self.basis(i), self.multiply(self.basis(j), self.basis(k)))
                    if lhs != rhs:
                        raise ValueError(f"associativity fails at ({i},{j},{k})")
        if r > 1:
            m1 = self.mult_matrix(1)
            for i in range(r):
                for j in range(r):
                    if abs(i - j) == 1 and m1[i][j] == 0:
                        raise ValueError("multiplication by e_1 is not tridiagonal-nonzero")
                    if abs(i - j) > 1 and m1[i][j] != 0:
                        raise ValueError("multiplication by e_1 is not tridiagonal")

    # -- basic algebra -------------------------------------------------------

    def basis(self, i: int) -> Vector:
        return tuple(Fraction(1) if j == i else Fraction(0) for j in range(self.rank))

    def as_vector(self, v) -> Vector:
        if isinstance(v, int):
            return self.basis(v)
        return tuple(Fraction(c) for c in v)

    def multiply(self, u, v) -> Vector:
        u, v = self.as_vector(u), self.as_vector(v)
        r = self.rank
        out = [Fraction(0)] * r
        for i in range(r):
            if u[i]:
                for j in range(r):
                    if v[j]:
                        c = u[i] * v[j]
                        row = self._mult[i][j]
                        for k in range(r):
                            if row[k]:
                                out[k] += c * row[k]
        return tuple(out)

    def mult_matrix(self, v) -> tuple[Vector, ...]:
        """Matrix of multiplication by v, columns indexed by the basis."""
        v = self.as_vector(v)
        cols = [self.multiply(v, self.basis(j)) for j in range(self.rank)]
        return tuple(tuple(cols[j][i] for j in range(self.rank)) for i in range(self.rank))

    def eta(self, u, v) -> Fraction:
        u, v = self.as_vector(u), self.as_vector(v)
        return sum(u[i] * v[i] * self.eps[i] for i in range(self.rank))

    def counit(self, v) -> Fraction:
        return self.eta(v, self.basis(0))

    def trace(self, v) -> Fraction:
        v = self.as_vector(v)
        return sum(v[i] * self._trace_vec[i] for i in range(self.rank))

    def gram(self) -> tuple[Vector, ...]:
        r = self.rank
        return tuple(tuple(self.trace(self.multiply(i, j)) for j in range(r)) for i in range(r))

    # -- semi-simplicity and the Frobenius element --------------------------

    def semisimple_witness(self) -> Fraction:
        return _rational_det(self.gram())

    def is_semisimple(self) -> bool:
        return self.semisimple_witness() != 0

    @property
    def alpha(self) -> Vector:
        """The element with counit(x) = trace(alpha x) for all x."""
        if self._alpha is None:
            rhs = [Fraction(1)] + [Fraction(0)] * (self.rank - 1)
            sol = _solve_rational(self.gram(), rhs)
            object.__setattr__(self, "_alpha", tuple(sol))
        return self._alpha

    @property
    def omega_element(self) -> Vector:
        """Omega = alpha^{-1}, the handle element."""
        if self._omega_el is None:
            rhs = [Fraction(1)] + [Fraction(0)] * (self.rank - 1)
            sol = _solve_rational(self.mult_matrix(self.alpha), rhs)
            object.__setattr__(self, "_omega_el", tuple(sol))
        return self._omega_el

    # -- TFT values ----------------------------------------------------------

    def tft_value(self, genus: int, colors) -> Fraction:
        """sigma_{g,n}(colors) = tr(v_1 ... v_n alpha^{1-g}), multilinear."""
        if genus < 0:
            raise ValueError("genus must be nonnegative")
        prod = self.basis(0)
        for c in colors:
            prod = self.multiply(prod, self.as_vector(c))
        if genus == 0:
            prod = self.multiply(prod, self.alpha)
        else:
            for _ in range(genus - 1):
                prod = self.multiply(prod, self.omega_element)
        return self.trace(prod)

    def r_tensor(self, matrix) -> tuple[Vector, ...]:
        """R eta^{-1} as a symmetric 2-tensor, for boundary terms."""
        r = self.rank
        return tuple(tuple(matrix[i][j] * self.eps[j] for j in range(r)) for i in range(r))


def _rational_det(m) -> Fraction:
    m = [list(map(Fraction, row)) for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _solve_rational(a, b) -> list[Fraction]:
    a = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a, b)]
    n = len(a)
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c]), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        a[c], a[pivot] = a[pivot], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


# -- construction ------------------------------------------------------------


def so3_algebra(level: int, emb: Embedding) -> FrobeniusAlgebra:
    """SO3 fusion algebra at an odd level; basis e_i is the color 2i.

    The basis is normalized so that the top structure constant
    omega03(1,1,1) is +1, which fixes the sign gauge e_i -> (-1)^i e_i
    left open by the triple-point sign formula.
    """
    if level < 3 or level % 2 == 0:
        raise ValueError("level must be an odd integer >= 3")
    if emb.order != level:
        raise ValueError("embedding must have the same order as the level")
    r = (level - 1) // 2
    eps = tuple(_qsign(2 * i + 1, 1, emb) for i in range(r))
    if any(e == 0 for e in eps):
        raise ArithmeticError("degenerate embedding: vanishing eta sign")
    gauge = 1
    if r >= 2:
        base = _triple_sign(2, 2, 2, 1, emb)
        if base == 0:
            raise ArithmeticError("inadmissible (1,1,1) triple at this level")
        gauge = base  # flip e_i -> (-1)^i e_i when the raw sign is -1
    omega = tuple(
        tuple(
            tuple(_triple_sign(2 * i, 2 * j, 2 * k, 1, emb) * gauge ** (i + j + k) for k in range(r))
            for j in range(r)
        )
        for i in range(r)
    )
    return FrobeniusAlgebra("so3", level, emb, r, eps, omega, tuple(2 * i for i in range(r)), gauge)


def su2_algebra(r: int, emb: Embedding) -> FrobeniusAlgebra:
    """SU2 fusion algebra for A a primitive 4r-th root of unity; rank r-1."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if emb.order != 4 * r:
        raise ValueError("embedding must have order 4r")
    rank = r - 1
    eps = tuple((-1) ** i * _qsign(i + 1, 2, emb) for i in range(rank))
    if any(e == 0 for e in eps):
        raise ArithmeticError("degenerate embedding: vanishing eta sign")
    omega = tuple(
        tuple(tuple(_triple_sign(i, j, k, 2, emb) for k in range(rank)) for j in range(rank))
        for i in range(rank)
    )
    return FrobeniusAlgebra("su2", 4 * r, emb, rank, eps, omega, tuple(range(rank)))


def unitary_partner(algebra: FrobeniusAlgebra) -> FrobeniusAlgebra:
    """The embedding of the same family/level making all eta signs +1."""
    if algebra.family == "so3":
        level = algebra.level
        partner = so3_algebra(level, Embedding(level, (level - 1) // 2))
    else:
        r = algebra.level // 4
        partner = su2_algebra(r, Embedding(4 * r, 1))
    if any(e != 1 for e in partner.eps):
        raise ArithmeticError("no unitary embedding found for this family/level")
    return partner


# -- reports ------------------------------------------------------------------


def signature_table(algebra: FrobeniusAlgebra, g_max: int, n_max: int):
    """Grid of (p, q) data with all marked points in the nontrivial color e_1.

    Unstable (g, n) cells still carry the trace-formula value; they are
    flagged so callers can mark them.
    """
    if algebra.rank < 2:
        raise ValueError("signature table needs a nontrivial color")
    partner = unitary_partner(algebra)
    rows = []
    for g in range(g_max + 1):
        row = []
        for n in range(n_max + 1):
            sig = algebra.tft_value(g, [1] * n)
            dim = partner.tft_value(g, [1] * n)
            if (dim + sig) % 2 or (dim - sig) % 2 or dim < abs(sig):
                raise ArithmeticError(f"inconsistent (d, sigma) = ({dim}, {sig}) at {(g, n)}")
            row.append({
                "g": g, "n": n,
                "p": (dim + sig) // 2, "q": (dim - sig) // 2,
                "dim": dim, "signature": sig,
                "stable": 2 * g - 2 + n > 0,
            })
        rows.append(row)
    return rows


def verlinde_dimension(level: int, genus: int) -> Fraction:
    """Dimension of the level-l SO3 theory in genus g, with a sine-formula check."""
    import math as _math

    if level < 5 or level % 2 == 0:
        raise ValueError("the closed sine formula is stated for odd level >= 5")
    algebra = so3_algebra(level, Embedding(level, (level - 1) // 2))
    value = algebra.tft_value(genus, [])
    closed = (level / 4.0) ** (genus - 1) * sum(
        _math.sin(2 * m * _math.pi / level) ** (2 - 2 * genus) for m in range(1, (level - 1) // 2 + 1)
    )
    if abs(float(value) - closed) > 1e-9 * max(1.0, abs(closed)):
        raise ArithmeticError(f"trace and sine formulas disagree: {float(value)} vs {closed}")
    return value


def gluing_checks(algebra: FrobeniusAlgebra, samples: int = 100, seed: int = 0) -> dict:
    """Randomized check of the gluing and unit identities of the TFT values."""
    rng = random.Random(seed)
    r = algebra.rank
    failures = []
    for _ in range(samples):
        g = rng.randrange(0, 4)
        n = rng.randrange(0, 5)
        colors = [rng.randrange(r) for _ in range(n)]
        lhs = algebra.tft_value(g + 1, colors)
        rhs = sum(
            algebra.eps[m] * algebra.tft_value(g, colors + [m, m])
            for m in range(r)
        )
        if lhs != rhs:
            failures.append(("nonseparating", g, colors, lhs, rhs))
        unit_lhs = algebra.tft_value(g, colors + [0])
        unit_rhs = algebra.tft_value(g, colors)
        if unit_lhs != unit_rhs:
            failures.append(("unit", g, colors, unit_lhs, unit_rhs))
        g1, g2 = rng.randrange(0, 3), rng.randrange(0, 3)
        n1 = rng.randrange(0, 3)
        c1 = [rng.randrange(r) for _ in range(n1)]
        c2 = [rng.randrange(r) for _ in range(rng.randrange(0, 3))]
        sep_lhs = algebra.tft_value(g1 + g2, c1 + c2)
        sep_rhs = sum(
            algebra.eps[m] * algebra.tft_value(g1, c1 + [m]) * algebra.tft_value(g2, c2 + [m])
            for m in range(r)
        )
        if sep_lhs != sep_rhs:
            failures.append(("separating", (g1, g2), (c1, c2), sep_lhs, sep_rhs))
    return {"samples": samples, "failures": failures, "passed": not failures}


def conjecture_report(level: int) -> dict:
    """Diagnostics on the numerically observed number-field properties.

    Reported, never asserted: whether each SO3 algebra at the level is a
    field, which embedding pairs give isomorphic fields (tested by factoring
    one minimal polynomial over the other's field), and the ratio between
    the basis-lattice discriminant and the polynomial discriminant.
    """
    import sympy

    x = sympy.Symbol("x")
    out = {"level": level, "embeddings": [], "isomorphic_pairs": []}
    import math as _math

    polys = {}
    for k in range(1, (level - 1) // 2 + 1):
        if _math.gcd(k, level) != 1:
            continue
        algebra = so3_algebra(level, Embedding(level, k))
        m1 = algebra.mult_matrix(1) if algebra.rank > 1 else ((Fraction(0),),)
        poly = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in m1]).charpoly(x).as_expr()
        factors = sympy.factor_list(poly)[1]
        is_field = len(factors) == 1 and factors[0][1] == 1
        polys[k] = poly
        out["embeddings"].append({
            "exponent": k,
            "is_field": bool(is_field),
            "charpoly": str(poly),
            "poly_discriminant": str(sympy.discriminant(poly, x)),
            "trace_lattice_discriminant": str(algebra.semisimple_witness()),
        })
    ks = sorted(polys)
    for i, k1 in enumerate(ks):
        for k2 in ks[i + 1:]:
            try:
                root = sympy.rootof(sympy.Poly(polys[k2], x), 0)
                parts = sympy.factor_list(polys[k1], extension=[root])[1]
                iso = any(sympy.Poly(f, x).degree() == 1 for f, _ in parts)
            except Exception:
                iso = polys[k1] == polys[k2]
            if iso:
                out["isomorphic_pairs"].append((k1, k2))
    return out
