"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A value is stored as a rational coefficient vector of length m over the powers
1, zeta_m, ..., zeta_m^(m-1), kept in canonical form: coefficients of powers
zeta_m^k with k >= phi(m) are eliminated by reducing modulo the m-th cyclotomic
polynomial, so the support lies in the chosen transversal 0..phi(m)-1 and equal
values have equal vectors.  Values with different conductors are compared and
combined by embedding both into Q(zeta_lcm); the lcm is capped.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ConductorCapExceeded

CONDUCTOR_CAP = 10_000

_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(maxsize=None)
def _cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low degree first."""
    # Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact polynomial division.
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divide_exact(num, _cyclotomic_poly(d))
    return tuple(num)


def _poly_divide_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c == 0:
            continue
        q, r = divmod(c, den[dd])
        assert r == 0
        out[k - dd] = q
        for j in range(dd + 1):
            num[k - dd + j] -= q * den[j]
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k-phi(m) expresses zeta_m^k (phi(m) <= k < m) over powers 0..phi(m)-1."""
    phi = len(_cyclotomic_poly(m)) - 1
    # zeta^phi = -(c_0 + c_1 zeta + ... + c_{phi-1} zeta^{phi-1}) / c_phi; c_phi = 1.
    poly = _cyclotomic_poly(m)
    rows: list[tuple[Fraction, ...]] = []
    cur = [Fraction(-poly[j]) for j in range(phi)]
    rows.append(tuple(cur))
    for _ in range(phi + 1, m):
        top = cur[phi - 1]
        cur = [_ZERO] + cur[: phi - 1]
        if top:
            base = rows[0]
            cur = [cur[j] + top * base[j] for j in range(phi)]
        rows.append(tuple(cur))
    return tuple(rows)


def _phi(m: int) -> int:
    return len(_cyclotomic_poly(m)) - 1


def _canonical(m: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    phi = _phi(m)
    if all(c == 0 for c in coeffs[phi:]):
        return tuple(coeffs)
    out = coeffs[:phi]
    rows = _reduction_rows(m)
    for k in range(phi, m):
        c = coeffs[k]
        if c:
            row = rows[k - phi]
            for j in range(phi):
                out[j] += c * row[j]
    return tuple(out) + (_ZERO,) * (m - phi)


class Cyclotomic:
    """An element of Q(zeta_m), exact."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs, *, _canon: bool = False):
        if m < 1:
            raise ValueError("conductor must be positive")
        if m > CONDUCTOR_CAP:
            raise ConductorCapExceeded(f"conductor {m} exceeds cap {CONDUCTOR_CAP}")
        vec = [Fraction(c) for c in coeffs]
        if len(vec) != m:
            raise ValueError(f"expected {m} coefficients, got {len(vec)}")
        self.m = m
        self.coeffs = tuple(vec) if _canon else _canonical(m, vec)

    # -- constructors ------------------------------------------------------
    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        return Cyclotomic(1, [Fraction(q)], _canon=True)

    @staticmethod
    def zero() -> "Cyclotomic":
        return Cyclotomic.from_rational(0)

    @staticmethod
    def one() -> "Cyclotomic":
        return Cyclotomic.from_rational(1)

    @staticmethod
    def root_of_unity(m: int, k: int = 1) -> "Cyclotomic":
        """zeta_m^k."""
        coeffs = [_ZERO] * m
        coeffs[k % m] = _ONE
        return Cyclotomic(m, coeffs)

    # -- conductor handling -------------------------------------------------
    def embedded(self, big: int) -> "Cyclotomic":
        """The same value expressed in Q(zeta_big); big must be a multiple of m."""
        if big == self.m:
            return self
        if big % self.m:
            raise ValueError(f"{big} is not a multiple of conductor {self.m}")
        step = big // self.m
        coeffs = [_ZERO] * big
        for k, c in enumerate(self.coeffs):
            if c:
                coeffs[k * step] = c
        return Cyclotomic(big, coeffs)

    @staticmethod
    def _common(a: "Cyclotomic", b: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if a.m == b.m:
            return a, b
        big = a.m * b.m // gcd(a.m, b.m)
        if big > CONDUCTOR_CAP:
            raise ConductorCapExceeded(
                f"lcm of conductors {a.m}, {b.m} exceeds cap {CONDUCTOR_CAP}"
            )
        return a.embedded(big), b.embedded(big)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Cyclotomic._common(self, other)
        return Cyclotomic(
            a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)], _canon=True
        )

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.m, [-c for c in self.coeffs], _canon=True)

    def __sub__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Cyclotomic._common(self, other)
        m = a.m
        out = [_ZERO] * m
        for i, ci in enumerate(a.coeffs):
            if not ci:
                continue
            for j, cj in enumerate(b.coeffs):
                if cj:
                    out[(i + j) % m] += ci * cj
        return Cyclotomic(m, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse, by solving self * x = 1 over the power basis."""
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        m, phi = self.m, _phi(self.m)
        # Column j of the multiplication matrix is self * zeta^j on the basis.
        cols = []
        zeta = Cyclotomic.root_of_unity(m) if m > 1 else Cyclotomic.one()
        cur = self
        for _ in range(phi):
            cols.append(cur.coeffs[:phi])
            cur = cur * zeta
        # Solve sum_j x_j * cols[j] = e_0 by Gaussian elimination over Q.
        aug = [[cols[j][i] for j in range(phi)] + [_ONE if i == 0 else _ZERO]
               for i in range(phi)]
        x = _solve_fraction_system(aug, phi)
        coeffs = list(x) + [_ZERO] * (m - phi)
        return Cyclotomic(m, coeffs, _canon=True)

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugate (zeta -> zeta^{-1})."""
        m = self.m
        out = [_ZERO] * m
        for k, c in enumerate(self.coeffs):
            if c:
                out[(-k) % m] += c
        return Cyclotomic(m, out)

    # -- predicates / conversions -------------------------------------------
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        from cmath import exp, pi

        z = exp(2j * pi / self.m)
        total = 0j
        for k, c in enumerate(self.coeffs):
            if c:
                total += float(c) * z**k
        return total

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Cyclotomic._common(self, other)
        return a.coeffs == b.coeffs

    __hash__ = None  # values of equal worth can live at different conductors

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z{self.m}")
            else:
                terms.append(f"{c}*z{self.m}^{k}")
        return " + ".join(terms) if terms else "0"

    def json_value(self) -> dict:
        return {
            "conductor": self.m,
            "coefficients": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(x)
    return NotImplemented


def _solve_fraction_system(aug: list[list[Fraction]], n: int) -> list[Fraction]:
    """Solve an n x n augmented rational system in place; raises if singular."""
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def cyclo_sum(values) -> Cyclotomic:
    total = Cyclotomic.zero()
    for v in values:
        total = total + v
    return total
