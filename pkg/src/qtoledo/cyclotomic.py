"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis of Q[x]/Phi_N(x).  Mixed-order
arithmetic lifts both operands to Q(zeta_lcm).  Real elements (fixed by
zeta -> 1/zeta) get a certified sign under a chosen complex embedding:
an exact zero test first, then adaptive-precision interval evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

#: hard cap for adaptive interval refinement, in bits
MAX_SIGN_BITS = 16384


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # exact division of integer polynomials, used only where it is known exact
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        c, r = divmod(num[len(den) - 1 + k], den[-1])
        if r:
            raise ArithmeticError("non-exact polynomial division")
        q[k] = c
        for j, d in enumerate(den):
            num[j + k] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return (-1, 1)
    poly = [0] * n + [1]
    poly[0] = -1  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            if rem != [0]:
                raise ArithmeticError("cyclotomic recursion failed")
    return tuple(poly)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """x^m mod Phi_n for m = 0, ..., n-1, as integer coefficient rows."""
    phi = euler_phi(n)
    mod = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        shifted = [0] + cur[: phi - 1]
        lead = cur[phi - 1]
        if lead:
            # x^phi = -(mod[0] + ... + mod[phi-1] x^{phi-1}), Phi is monic
            for j in range(phi):
                shifted[j] -= lead * mod[j]
        cur = shifted
    return tuple(rows)


class CycloNum:
    """An element of Q(zeta_N) in the power basis of Q[x]/Phi_N."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        phi = euler_phi(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"need {phi} coefficients for order {order}, got {len(coeffs)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *args):
        raise AttributeError("CycloNum is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(value) -> "CycloNum":
        return CycloNum(1, (Fraction(value),))

    @staticmethod
    def zeta(order: int, power: int = 1) -> "CycloNum":
        row = _power_table(order)[power % order]
        return CycloNum(order, row)

    # -- order management ---------------------------------------------

    def lift(self, order: int) -> "CycloNum":
        """Rewrite in Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("can only lift to a multiple of the current order")
        step = order // self.order
        table = _power_table(order)
        phi = euler_phi(order)
        out = [Fraction(0)] * phi
        for j, c in enumerate(self.coeffs):
            if c:
                row = table[(j * step) % order]
                for k in range(phi):
                    if row[k]:
                        out[k] += c * row[k]
        return CycloNum(order, out)

    @staticmethod
    def unify(a: "CycloNum", b: "CycloNum") -> tuple["CycloNum", "CycloNum"]:
        if a.order == b.order:
            return a, b
        n = math.lcm(a.order, b.order)
        return a.lift(n), b.lift(n)

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> "CycloNum":
        other = _coerce(other)
        a, b = CycloNum.unify(self, other)
        return CycloNum(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "CycloNum":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "CycloNum":
        return _coerce(other) - self

    def __mul__(self, other) -> "CycloNum":
        other = _coerce(other)
        a, b = CycloNum.unify(self, other)
        n, phi = a.order, len(a.coeffs)
        table = _power_table(n)
        out = [Fraction(0)] * phi
        for i, ca in enumerate(a.coeffs):
            if not ca:
                continue
            for j, cb in enumerate(b.coeffs):
                if not cb:
                    continue
                c = ca * cb
                m = i + j
                if m < phi:
                    out[m] += c
                else:
                    row = table[m % n]
                    for k in range(phi):
                        if row[k]:
                            out[k] += c * row[k]
        return CycloNum(n, out)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Field inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero cyclotomic element")
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = mod, _trimmed(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _degree(r1) > 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if _degree(r1) != 0 or not r1[0]:
            raise ArithmeticError("element not invertible (Phi_N should be irreducible)")
        inv_lead = 1 / r1[0]
        phi = len(self.coeffs)
        out = [c * inv_lead for c in s1][:phi]
        out += [Fraction(0)] * (phi - len(out))
        return CycloNum(self.order, out)

    def __truediv__(self, other) -> "CycloNum":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "CycloNum":
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "CycloNum":
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloNum.rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, (CycloNum, int, Fraction)):
            return NotImplemented
        return (self - _coerce(other)).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        terms = [f"{c}*z{self.order}^{j}" for j, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def is_conjugation_fixed(self) -> bool:
        return (self - conjugate(self)).is_zero()


def _coerce(value) -> CycloNum:
    if isinstance(value, CycloNum):
        return value
    if isinstance(value, (int, Fraction)):
        return CycloNum.rational(value)
    raise TypeError(f"cannot coerce {type(value)!r} into a cyclotomic number")


# -- bare polynomial helpers over Fraction ------------------------------

def _trimmed(coeffs) -> list[Fraction]:
    out = [Fraction(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _degree(p) -> int:
    return len(p) - 1


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trimmed(out)


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trimmed(out)


def _poly_divmod(num, den):
    num = [Fraction(c) for c in num]
    dn = _degree(den)
    if dn == 0:
        return [c / den[0] for c in num], [Fraction(0)]
    q = [Fraction(0)] * max(len(num) - dn, 1)
    while _degree(num) >= dn and any(num):
        shift = _degree(num) - dn
        c = num[-1] / den[-1]
        q[shift] += c
        for j, d in enumerate(den):
            num[j + shift] -= c * d
        num = _trimmed(num)
        if num == [Fraction(0)]:
            break
    return _trimmed(q), _trimmed(num)


# -- Galois action -------------------------------------------------------

def galois(a: CycloNum, k: int) -> CycloNum:
    """Apply zeta -> zeta^k; k must be coprime to the order."""
    n = a.order
    if math.gcd(k, n) != 1:
        raise ValueError(f"exponent {k} is not coprime to the order {n}")
    table = _power_table(n)
    phi = len(a.coeffs)
    out = [Fraction(0)] * phi
    for j, c in enumerate(a.coeffs):
        if c:
            row = table[(j * k) % n]
            for m in range(phi):
                if row[m]:
                    out[m] += c * row[m]
    return CycloNum(n, out)


def conjugate(a: CycloNum) -> CycloNum:
    """The involution zeta -> 1/zeta (complex conjugation in any embedding)."""
    return galois(a, a.order - 1) if a.order > 1 else a


def galois_group_exponents(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if math.gcd(k, n) == 1]


def galois_orbit(a: CycloNum) -> list[CycloNum]:
    """Distinct Galois conjugates of a (one per coset of its stabilizer)."""
    seen: list[CycloNum] = []
    for k in galois_group_exponents(a.order):
        img = galois(a, k)
        if not any(img == s for s in seen):
            seen.append(img)
    return seen


def trace_to_Q(a: CycloNum, fixing_exponents=None) -> Fraction:
    """Trace of a over Q relative to the subfield it generates.

    By default the subfield is Q(a) itself, so the result is the sum of the
    distinct conjugates of a.  Passing `fixing_exponents` (the Galois
    exponents fixing a larger reference subfield K with a in K) computes
    tr_{K/Q}(a) instead; a must be fixed by every listed exponent.
    """
    n = a.order
    if fixing_exponents is None:
        total = CycloNum.rational(0)
        for conj in galois_orbit(a):
            total = total + conj
        return total.rational_value()
    fix = {k % n for k in fixing_exponents}
    for k in fix:
        if galois(a, k) != a:
            raise ValueError("element does not lie in the requested subfield")
    # sum over coset representatives of the fixing subgroup
    units = galois_group_exponents(n)
    if len(units) % len(fix):
        raise ValueError("fixing exponents do not form a subgroup of the right size")
    reps, covered = [], set()
    for k in units:
        if k not in covered:
            reps.append(k)
            covered.update((k * h) % n for h in fix)
    total = CycloNum.rational(0)
    for k in reps:
        total = total + galois(a, k)
    return total.rational_value()


# -- quantum integers -----------------------------------------------------

def quantum_int(n: int, q: CycloNum) -> CycloNum:
    """[n] = (q^n - q^-n)/(q - q^-1), computed by the telescoped sum."""
    if n == 0:
        return CycloNum.rational(0)
    if n < 0:
        return -quantum_int(-n, q)
    total = CycloNum.rational(0)
    power = q ** (n - 1)
    qinv2 = (q * q).inverse()
    for _ in range(n):
        total = total + power
        power = power * qinv2
    return total


def quantum_factorial(n: int, q: CycloNum) -> CycloNum:
    total = CycloNum.rational(1)
    for m in range(1, n + 1):
        total = total * quantum_int(m, q)
    return total


# -- embeddings and certified signs ---------------------------------------

@dataclass(frozen=True)
class Embedding:
    """zeta_order -> exp(2*pi*i*exponent/order)."""

    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "exponent", self.exponent % self.order if self.order > 1 else 0)
        k = self.exponent if self.order > 1 else 1
        if math.gcd(k if k else self.order, self.order) != 1:
            raise ValueError(f"exponent {self.exponent} not coprime to {self.order}")

    def extend(self, order: int) -> "Embedding":
        """An embedding of Q(zeta_order) restricting to this one (order multiple)."""
        if order % self.order:
            raise ValueError("extension order must be a multiple")
        if order == self.order:
            return self
        k = self.exponent if self.order > 1 else 1
        while math.gcd(k, order) != 1:
            k += self.order
        return Embedding(order, k)

    def compose_galois(self, k: int) -> "Embedding":
        return Embedding(self.order, (self.exponent * k) % self.order)


def embed_complex(a: CycloNum, emb: Embedding) -> complex:
    """Floating-point image of a under the embedding (for oracles only)."""
    if emb.order != a.order:
        lcm = math.lcm(a.order, emb.order)
        a = a.lift(lcm)
        emb = emb.extend(lcm)
    k = emb.exponent if emb.order > 1 else 0
    z = complex(math.cos(2 * math.pi * k / a.order), math.sin(2 * math.pi * k / a.order)) if a.order > 1 else 1.0
    total, power = 0j, 1 + 0j
    for c in a.coeffs:
        total += float(c) * power
        power *= z
    return total


def _interval_real(a: CycloNum, emb: Embedding, bits: int):
    iv = mpmath.iv
    old = iv.prec
    try:
        iv.prec = bits
        n = a.order
        k = emb.exponent if n > 1 else 0
        total = iv.mpf(0)
        two_pi = 2 * iv.pi
        for j, c in enumerate(a.coeffs):
            if c:
                angle = two_pi * iv.mpf(j * k % n) / n
                total += iv.mpf(c.numerator) / c.denominator * iv.cos(angle)
        return total
    finally:
        iv.prec = old


def sign_real(a: CycloNum, emb: Embedding) -> int:
    """Certified sign of a real cyclotomic number under the embedding.

    Exact zero test first; otherwise interval arithmetic with doubling
    precision, so a nonzero answer is a proof.
    """
    if not a.is_conjugation_fixed():
        raise ValueError("sign_real requires a conjugation-fixed element")
    if a.is_zero():
        return 0
    if a.is_rational():
        v = a.coeffs[0]
        return (v > 0) - (v < 0)
    if emb.order != a.order:
        lcm = math.lcm(a.order, emb.order)
        a = a.lift(lcm)
        emb = emb.extend(lcm)
    bits = 64
    while bits <= MAX_SIGN_BITS:
        box = _interval_real(a, emb, bits)
        if box > 0:
            return 1
        if box < 0:
            return -1
        bits *= 2
    raise ArithmeticError("sign undecided at maximal precision (nonzero was certified exactly)")


def sin_turn_sign(numerator: int, denominator: int) -> int:
    """Exact sign of sin(2*pi*numerator/denominator)."""
    r = numerator % denominator
    if r == 0 or 2 * r == denominator:
        return 0
    return 1 if 2 * r < denominator else -1


def quantum_int_sign(n: int, emb: Embedding) -> int:
    """Sign of [n] at q = exp(2*pi*i*k/N), by exact residue arithmetic."""
    k, big_n = emb.exponent, emb.order
    return sin_turn_sign(n * k, big_n) * sin_turn_sign(k, big_n)


# -- JSON encoding ---------------------------------------------------------

def cyclo_to_json(a: CycloNum) -> dict:
    return {"order": a.order, "coeffs": [f"{c.numerator}/{c.denominator}" for c in a.coeffs]}


def cyclo_from_json(data: dict) -> CycloNum:
    return CycloNum(int(data["order"]), [Fraction(s) for s in data["coeffs"]])
