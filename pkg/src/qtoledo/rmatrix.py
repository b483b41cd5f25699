"""Degree-2 reconstruction: the first-order R-matrix and Toledo classes.

Solves the rational linear system expressing the four-point invariants
through the double commutator with the pivot multiplication operator,
recovers the trace part from the one-holed-torus invariants, and expands
the resulting degree-2 class of any (g, n, colors) over the tautological
basis.  A presentation-based coefficient pipeline cross-checks the level-5
closed formulas.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Embedding
from .fusion import FrobeniusAlgebra, so3_algebra, unitary_partner, _solve_rational
from .mgnclasses import (
    DELTA_IRR,
    KAPPA1T,
    PSI,
    H2Class,
    canonical_separating_label,
    separating_labels,
)
from .qrep import pivot_tau04_table, tau11_table

Mat = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class R1Matrix:
    """First-order R-matrix with its trace/traceless decomposition."""

    algebra: FrobeniusAlgebra
    matrix: Mat
    trace_part: tuple[Fraction, ...]       # r_1 as an algebra element
    perp_part: Mat                         # R_1' with tr(R_1' M_v) = 0 for all v

    def __post_init__(self):
        v = self.algebra
        r = v.rank
        m = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        for i in range(r):
            for j in range(r):
                if m[i][j] != v.eps[i] * v.eps[j] * m[j][i]:
                    raise ValueError("R_1 is not eta-self-adjoint")
        mr1 = v.mult_matrix(self.trace_part)
        for i in range(r):
            for j in range(r):
                if m[i][j] != mr1[i][j] + self.perp_part[i][j]:
                    raise ValueError("decomposition does not sum to R_1")
        for k in range(r):
            mk = v.mult_matrix(k)
            t = sum(self.perp_part[i][j] * mk[j][i] for i in range(r) for j in range(r))
            if t != 0:
                raise ValueError("perp part is not trace-orthogonal to multiplications")

    def apply(self, vec) -> tuple[Fraction, ...]:
        vec = self.algebra.as_vector(vec)
        r = self.algebra.rank
        return tuple(sum(self.matrix[i][j] * vec[j] for j in range(r)) for i in range(r))

    def denominator(self) -> int:
        return math.lcm(*[x.denominator for row in self.matrix for x in row])

    def to_json(self) -> dict:
        return {
            "level": self.algebra.level,
            "embedding": self.algebra.embedding.exponent,
            "matrix": [[f"{x.numerator}/{x.denominator}" for x in row] for row in self.matrix],
            "trace_part": [f"{x.numerator}/{x.denominator}" for x in self.trace_part],
        }


# -- tau from R_1 ---------------------------------------------------------------


def tau_from_r1_04(v: FrobeniusAlgebra, r1: R1Matrix | Mat, v1, v2, v3, v4) -> Fraction:
    """Degree-2 four-point invariant integrated over the moduli of spheres."""
    apply = r1.apply if isinstance(r1, R1Matrix) else lambda x: _mat_apply(r1, v.as_vector(x))
    vs = [v.as_vector(x) for x in (v1, v2, v3, v4)]
    total = Fraction(0)
    for i in range(4):
        rest = v.basis(0)
        for j, w in enumerate(vs):
            if j != i:
                rest = v.multiply(rest, w)
        total += v.eta(apply(vs[i]), rest)
    prod = v.basis(0)
    for w in vs:
        prod = v.multiply(prod, w)
    total -= v.eta(prod, apply(v.basis(0)))
    for (a, b), (c, d) in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        total -= v.eta(apply(v.multiply(vs[a], vs[b])), v.multiply(vs[c], vs[d]))
    return total


def tau_from_r1_11(v: FrobeniusAlgebra, r1: R1Matrix | Mat, vec) -> Fraction:
    """Degree-2 one-holed-torus invariant integrated over the moduli."""
    apply = r1.apply if isinstance(r1, R1Matrix) else lambda x: _mat_apply(r1, v.as_vector(x))
    matrix = r1.matrix if isinstance(r1, R1Matrix) else r1
    vec = v.as_vector(vec)
    omega = v.omega_element
    term_psi = v.eta(omega, apply(vec))
    term_kappa = v.eta(omega, v.multiply(vec, apply(v.basis(0))))
    mv = v.mult_matrix(vec)
    r = v.rank
    tr = sum(matrix[i][j] * mv[j][i] for i in range(r) for j in range(r))
    return Fraction(1, 24) * (term_psi - term_kappa) - Fraction(1, 2) * tr


def _mat_apply(m: Mat, vec):
    n = len(m)
    return tuple(sum(m[i][j] * vec[j] for j in range(n)) for i in range(n))


# -- solving for R_1 --------------------------------------------------------------


def _symmetric_basis(v: FrobeniusAlgebra) -> list[Mat]:
    r = v.rank
    out = []
    for i in range(r):
        m = [[Fraction(0)] * r for _ in range(r)]
        m[i][i] = Fraction(1)
        out.append(tuple(tuple(row) for row in m))
    for i in range(r):
        for j in range(i + 1, r):
            m = [[Fraction(0)] * r for _ in range(r)]
            m[j][i] = Fraction(1)
            m[i][j] = Fraction(v.eps[i] * v.eps[j])
            out.append(tuple(tuple(row) for row in m))
    return out


def _perp_basis(v: FrobeniusAlgebra) -> list[Mat]:
    """Basis of the trace-orthogonal complement of V inside eta-symmetric maps."""
    r = v.rank
    sym = _symmetric_basis(v)
    mults = [v.mult_matrix(k) for k in range(r)]
    rows = []
    for mk in mults:
        rows.append([sum(b[i][j] * mk[j][i] for i in range(r) for j in range(r)) for b in sym])
    # rational nullspace of the r x len(sym) constraint matrix
    ncols = len(sym)
    mat = [list(map(Fraction, row)) for row in rows]
    pivots = []
    rr = 0
    for c in range(ncols):
        piv = next((k for k in range(rr, len(mat)) if mat[k][c]), None)
        if piv is None:
            continue
        mat[rr], mat[piv] = mat[piv], mat[rr]
        inv = 1 / mat[rr][c]
        mat[rr] = [x * inv for x in mat[rr]]
        for k in range(len(mat)):
            if k != rr and mat[k][c]:
                f = mat[k][c]
                mat[k] = [x - f * y for x, y in zip(mat[k], mat[rr])]
        pivots.append(c)
        rr += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        coeffs = [Fraction(0)] * ncols
        coeffs[fc] = Fraction(1)
        for k, pc in enumerate(pivots):
            coeffs[pc] = -mat[k][fc]
        m = [[Fraction(0)] * r for _ in range(r)]
        for c, coef in enumerate(coeffs):
            if coef:
                for i in range(r):
                    for j in range(r):
                        m[i][j] += coef * sym[c][i][j]
        basis.append(tuple(tuple(row) for row in m))
    if len(basis) != r * (r - 1) // 2:
        raise ArithmeticError("unexpected dimension of the perpendicular space")
    return basis


def _commutator(a: Mat, b: Mat) -> Mat:
    n = len(a)

    def mul(x, y):
        return tuple(
            tuple(sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)) for i in range(n)
        )

    ab, ba = mul(a, b), mul(b, a)
    return tuple(tuple(ab[i][j] - ba[i][j] for j in range(n)) for i in range(n))


def _pivot_operator(v: FrobeniusAlgebra, x: Mat) -> Mat:
    """v -> [[X, M_w], M_w](v) - [[X, M_w], M_w](1) v for the pivot w."""
    r = v.rank
    mw = v.mult_matrix(r - 1)
    y = _commutator(_commutator(x, mw), mw)
    col0 = tuple(y[i][0] for i in range(r))
    m_col0 = v.mult_matrix(col0)
    return tuple(tuple(y[i][j] - m_col0[i][j] for j in range(r)) for i in range(r))


def poly_discriminant(coeffs: list[Fraction]) -> Fraction:
    """Discriminant of a monic polynomial given low-to-high coefficients."""
    n = len(coeffs) - 1
    deriv = [coeffs[k] * k for k in range(1, n + 1)]
    size = n + (n - 1)
    rows = []
    for shift in range(n - 1):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(coeffs)):
            row[shift + k] = c
        rows.append(row)
    for shift in range(n):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(deriv)):
            row[shift + k] = c
        rows.append(row)
    res = _det(rows)
    sign = (-1) ** (n * (n - 1) // 2)
    return sign * res / coeffs[-1]


def _det(rows) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((k for k in range(c, n) if m[k][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for k in range(c + 1, n):
            if m[k][c]:
                f = m[k][c] * inv
                for t in range(c, n):
                    m[k][t] -= f * m[c][t]
    return det


def _rational_charpoly(m: Mat) -> list[Fraction]:
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    acc = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        acc = [[sum(m[i][t] * acc[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -Fraction(sum(acc[i][i] for i in range(n)), k)
        coeffs[n - k] = c
        for i in range(n):
            acc[i][i] += c
    return coeffs


def _poly_gcd_degree(p: list[Fraction], q: list[Fraction]) -> int:
    a, b = [x for x in p], [x for x in q]

    def deg(u):
        d = len(u) - 1
        while d > 0 and u[d] == 0:
            d -= 1
        return d if any(u) else -1

    while deg(b) >= 0:
        da, db = deg(a), deg(b)
        if da < db:
            a, b = b, a
            continue
        f = a[deg(a)] / b[deg(b)]
        shift = da - db
        for k in range(db + 1):
            a[k + shift] -= f * b[k]
        if deg(a) < deg(b):
            a, b = b, a
    return deg(a)


def solve_r1(v: FrobeniusAlgebra, tau04: dict, tau11: list) -> R1Matrix:
    """Solve for R_1 from the pivot four-point table and the torus table.

    tau04 maps (i, j) to tau_{0,4}(w, w, e_i, e_j) for the pivot w = e_{r-1};
    tau11[i] is tau_{1,1}(e_i).  The output satisfies the self-adjointness,
    decomposition, and round-trip identities exactly; the denominator bound
    2*3*level*disc^2 is asserted entry by entry.
    """
    r = v.rank
    mw = v.mult_matrix(r - 1)
    cp = _rational_charpoly(mw)
    deriv = [cp[k] * k for k in range(1, len(cp))]
    if _poly_gcd_degree(cp, deriv + [Fraction(0)]) > 0:
        raise ArithmeticError("pivot multiplication does not have simple spectrum")

    # A_w(e_i) = sum_j tau04[(i,j)] eps_j e_j
    target = [[Fraction(tau04[(j, i)]) * v.eps[i] if (j, i) in tau04 else Fraction(0)
               for j in range(r)] for i in range(r)]
    basis = _perp_basis(v)
    columns = [_pivot_operator(v, x) for x in basis]
    rows = []
    rhs = []
    for i in range(r):
        for j in range(r):
            rows.append([col[i][j] for col in columns])
            rhs.append(target[i][j])
    coeffs = _lstsq_exact(rows, rhs)
    perp = [[Fraction(0)] * r for _ in range(r)]
    for c, x in zip(coeffs, basis):
        if c:
            for i in range(r):
                for j in range(r):
                    perp[i][j] += c * x[i][j]
    perp = tuple(tuple(row) for row in perp)

    # recover the trace part from tau_{1,1}
    gram = v.gram()
    rhs2 = []
    for i in range(r):
        col_i = tuple(perp[a][i] for a in range(r))
        col_0 = tuple(perp[a][0] for a in range(r))
        inner = v.trace(col_i) - v.trace(v.multiply(col_0, v.basis(i)))
        rhs2.append(-2 * (Fraction(tau11[i]) - Fraction(1, 24) * inner))
    r1_vec = tuple(_solve_rational(gram, rhs2))

    mr1 = v.mult_matrix(r1_vec)
    full = tuple(tuple(mr1[i][j] + perp[i][j] for j in range(r)) for i in range(r))
    out = R1Matrix(v, full, r1_vec, perp)

    # exact round trip through both reconstruction formulas
    for i in range(r):
        for j in range(r):
            got = tau_from_r1_04(v, out, r - 1, r - 1, i, j)
            if got != Fraction(tau04.get((i, j), 0)):
                raise ArithmeticError(f"tau04 round trip fails at {(i, j)}: {got}")
    for i in range(r):
        if tau_from_r1_11(v, out, i) != Fraction(tau11[i]):
            raise ArithmeticError(f"tau11 round trip fails at {i}")

    if r > 1:
        disc = poly_discriminant(_rational_charpoly(v.mult_matrix(1)))
        bound = 6 * v.level * disc.numerator * disc.numerator
        for row in out.matrix:
            for x in row:
                if bound % x.denominator:
                    raise ArithmeticError(f"denominator of {x} exceeds the bound {bound}")
    return out


def _lstsq_exact(rows, rhs):
    """Solve an overdetermined consistent rational system, asserting uniqueness."""
    n_unknowns = len(rows[0])
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    rr = 0
    for c in range(n_unknowns):
        piv = next((k for k in range(rr, len(aug)) if aug[k][c]), None)
        if piv is None:
            continue
        aug[rr], aug[piv] = aug[piv], aug[rr]
        inv = 1 / aug[rr][c]
        aug[rr] = [x * inv for x in aug[rr]]
        for k in range(len(aug)):
            if k != rr and aug[k][c]:
                f = aug[k][c]
                aug[k] = [x - f * y for x, y in zip(aug[k], aug[rr])]
        pivots.append(c)
        rr += 1
    if len(pivots) != n_unknowns:
        raise ArithmeticError("underdetermined system: pivot spectrum not simple?")
    for k in range(rr, len(aug)):
        if aug[k][n_unknowns]:
            raise ArithmeticError("inconsistent system: tau tables are not realizable")
    sol = [Fraction(0)] * n_unknowns
    for k, c in enumerate(pivots):
        sol[c] = aug[k][n_unknowns]
    return sol


def solve_level(level: int, emb: Embedding) -> R1Matrix:
    """Build the fusion algebra at (level, embedding) and solve for R_1."""
    v = so3_algebra(level, emb)
    return solve_r1(v, pivot_tau04_table(level, emb), tau11_table(level, emb, v))


# -- degree-2 classes -------------------------------------------------------------


def degree2_class(v: FrobeniusAlgebra, r1: R1Matrix, g: int, n: int, colors) -> H2Class:
    """The Toledo class tau_{g,n}(colors) over the kappa-tilde basis."""
    if 2 * g - 2 + n <= 0:
        raise ValueError("unstable moduli space")
    colors = [v.as_vector(c) for c in colors]
    if len(colors) != n:
        raise ValueError("need one color per marked point")
    coeffs: dict = {}
    kappa_term = v.tft_value(g, colors + [r1.apply(v.basis(0))])
    coeffs[(KAPPA1T,)] = -kappa_term
    for i in range(n):
        replaced = colors[:i] + [r1.apply(colors[i])] + colors[i + 1:]
        coeffs[(PSI, i + 1)] = v.tft_value(g, replaced) - kappa_term
    rt = v.r_tensor(r1.matrix)
    r = v.rank
    if g >= 1:
        total = Fraction(0)
        for mu in range(r):
            for nu in range(r):
                if rt[mu][nu]:
                    total += rt[mu][nu] * v.tft_value(g - 1, colors + [mu, nu])
        coeffs[(DELTA_IRR,)] = -total
    for label in separating_labels(g, n):
        _tag, g1, subset = label
        g2 = g - g1
        rest = tuple(p for p in range(1, n + 1) if p not in subset)
        total = Fraction(0)
        for mu in range(r):
            left_colors = [colors[p - 1] for p in subset] + [v.basis(mu)]
            left_vals = v.tft_value(g1, left_colors)
            if left_vals == 0:
                continue
            for nu in range(r):
                if rt[mu][nu]:
                    right = v.tft_value(g2, [colors[p - 1] for p in rest] + [v.basis(nu)])
                    total += rt[mu][nu] * left_vals * right
        coeffs[label] = -total
    return H2Class(g, n, coeffs)


# -- presentation-based cross-check ------------------------------------------------


def presentation_class(v: FrobeniusAlgebra, g: int, n: int) -> H2Class:
    """Level-5 Toledo class from the mapping-class-group presentation pipeline.

    All marked points carry the nontrivial color.  Coefficients over
    (lambda_1, boundary, psi) come from the lantern/chain/power relation
    values; the output is converted to the kappa-tilde basis by
    kappa_tilde = 12 lambda_1 - delta.
    """
    if v.level != 5:
        raise ValueError("the presentation table is tabulated at level 5")
    if 2 * g - 2 + n <= 0:
        raise ValueError("unstable moduli space")
    t = [1] * n
    sigma = v.tft_value(g, t)
    sigma_next = v.tft_value(g, t + [1])
    a = Fraction(-46, 45) * sigma - Fraction(4, 9) * sigma_next
    c = Fraction(-2, 15) * sigma
    coeffs: dict = {}
    # lambda_1 = (kappa_tilde + delta)/12
    coeffs[(KAPPA1T,)] = a / 12
    for i in range(1, n + 1):
        coeffs[(PSI, i)] = c
    if g >= 1:
        sig_irr = v.tft_value(g - 1, t + [1, 1])
        coeffs[(DELTA_IRR,)] = a / 12 + Fraction(-2, 15) * sig_irr
    for label in separating_labels(g, n):
        _tag, g1, subset = label
        g2 = g - g1
        n1, n2 = len(subset), n - len(subset)
        sig_split = v.tft_value(g1, [1] * (n1 + 1)) * v.tft_value(g2, [1] * (n2 + 1))
        coeffs[label] = a / 12 + Fraction(-2, 15) * sig_split
    return H2Class(g, n, coeffs)


def appendixB_crosscheck(g_max: int = 4, n_max: int = 4) -> dict:
    """Compare the closed level-5 class with the presentation pipeline."""
    emb = Embedding(5, 1)
    v = so3_algebra(5, emb)
    r1 = solve_level(5, emb)
    report = {"cases": [], "all_equal": True}
    for g in range(g_max + 1):
        for n in range(n_max + 1):
            if 2 * g - 2 + n <= 0:
                continue
            direct = degree2_class(v, r1, g, n, [1] * n)
            viaB = presentation_class(v, g, n)
            equal = direct == viaB
            report["cases"].append({
                "g": g, "n": n, "equal": equal,
                "closed": direct.to_json()["coeffs"],
                "presentation": viaB.to_json()["coeffs"],
            })
            if not equal:
                report["all_equal"] = False
    return report


def level5_sigma_recursion_checks(g_max: int = 4, n_max: int = 6) -> dict:
    """The d and sigma recursions behind the presentation coefficients."""
    emb = Embedding(5, 1)
    v = so3_algebra(5, emb)
    u = unitary_partner(v)
    failures = []
    for g in range(1, g_max + 1):
        for n in range(n_max + 1):
            t = [1] * n
            if v.tft_value(g, t + [1]) != v.tft_value(g, t) - 3 * v.tft_value(g - 1, t):
                failures.append(("sigma", g, n))
            d_irr = u.tft_value(g - 1, t + [1, 1])
            if d_irr + u.tft_value(g - 1, t) != u.tft_value(g, t):
                failures.append(("d", g, n))
    return {"failures": failures, "passed": not failures}
