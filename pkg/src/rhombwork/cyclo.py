"""Exact arithmetic in Z[zeta], zeta = exp(i*pi/n), for odd n >= 3.

Points and direction vectors of the tiling plane are integer combinations
of the 2n unit vectors e_k = (cos(k*pi/n), sin(k*pi/n)).  Working modulo
the minimal polynomial of zeta gives every point a unique coordinate
vector, so equality, adjacency and symmetry tests are exact integer
comparisons; floats are derived output only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class ExactnessError(RuntimeError):
    """A numeric comparison was too close to call and no exact rule applied."""


def _poly_divide(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficients low-to-high)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        coeff = num[shift + len(den) - 1]
        if coeff % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = coeff // den[-1]
        out[shift] = q
        for j, d in enumerate(den):
            num[shift + j] -= q * d
    if any(num):
        raise ArithmeticError("non-zero remainder in polynomial division")
    return out


@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> tuple[int, ...]:
    """Coefficients (low-to-high) of the m-th cyclotomic polynomial."""
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divide(poly, list(_cyclotomic(d)))
    return tuple(poly)


@dataclass(frozen=True)
class RingSpec:
    """The ring Z[zeta] for one fixed odd n, with its reduction table.

    zeta_powers[k] holds zeta^k expressed in the power basis
    1, zeta, ..., zeta^(degree-1) for every k in [0, 2n); the rows at
    k >= degree are the reduction table proper.
    """

    n: int
    degree: int
    zeta_powers: tuple[tuple[int, ...], ...]
    _cos: tuple[float, ...]
    _sin: tuple[float, ...]

    def __repr__(self) -> str:
        return f"RingSpec(n={self.n})"

    def __hash__(self) -> int:
        return hash(("RingSpec", self.n))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RingSpec) and other.n == self.n


@lru_cache(maxsize=None)
def ring(n: int) -> RingSpec:
    """Build (once per n) the ring data for a primitive 2n-th root of unity."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    minpoly = _cyclotomic(2 * n)
    degree = len(minpoly) - 1
    # zeta^degree = -(lower coefficients); march upward once per power.
    rows: list[tuple[int, ...]] = []
    for k in range(degree):
        row = [0] * degree
        row[k] = 1
        rows.append(tuple(row))
    top = tuple(-c for c in minpoly[:degree])
    rows.append(top)
    for _ in range(degree + 1, 2 * n):
        prev = rows[-1]
        shifted = [0] + list(prev[:-1])
        carry = prev[-1]
        if carry:
            shifted = [s + carry * t for s, t in zip(shifted, top)]
        rows.append(tuple(shifted))
    cos = tuple(math.cos(k * math.pi / n) for k in range(2 * n))
    sin = tuple(math.sin(k * math.pi / n) for k in range(2 * n))
    return RingSpec(n=n, degree=degree, zeta_powers=tuple(rows), _cos=cos, _sin=sin)


class Cyclo:
    """An element of Z[zeta]; immutable, hashable, exact."""

    __slots__ = ("spec", "coeffs", "_hash", "_xy")

    def __init__(self, spec: RingSpec, coeffs: tuple[int, ...]):
        if len(coeffs) != spec.degree:
            raise ValueError("coefficient vector has wrong length")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", hash(coeffs))
        object.__setattr__(self, "_xy", None)

    def __setattr__(self, *_):  # pragma: no cover - guard only
        raise AttributeError("Cyclo is immutable")

    # -- ring operations ------------------------------------------------
    def __add__(self, other: Cyclo) -> Cyclo:
        return Cyclo(self.spec, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Cyclo) -> Cyclo:
        return Cyclo(self.spec, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Cyclo:
        return Cyclo(self.spec, tuple(-a for a in self.coeffs))

    def __mul__(self, other: Cyclo | int) -> Cyclo:
        if isinstance(other, int):
            return Cyclo(self.spec, tuple(a * other for a in self.coeffs))
        spec = self.spec
        d = spec.degree
        conv = [0] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        conv[i + j] += a * b
        out = list(conv[:d])
        table = spec.zeta_powers
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = table[k]
                for j in range(d):
                    out[j] += c * row[j]
        return Cyclo(spec, tuple(out))

    def __rmul__(self, other: int) -> Cyclo:
        return self.__mul__(other)

    def mul_zeta(self, k: int) -> Cyclo:
        """Multiply by zeta^k, i.e. rotate by k*pi/n about the origin."""
        spec = self.spec
        k %= 2 * spec.n
        if k == 0:
            return self
        d = spec.degree
        out = [0] * d
        table = spec.zeta_powers
        for i, a in enumerate(self.coeffs):
            if a:
                row = table[(i + k) % (2 * spec.n)]
                for j in range(d):
                    out[j] += a * row[j]
        return Cyclo(spec, tuple(out))

    def conj(self) -> Cyclo:
        """Complex conjugate (zeta -> zeta^(2n-1)), exact in the ring."""
        spec = self.spec
        d = spec.degree
        out = list(self.coeffs[0:1]) + [0] * (d - 1)
        table = spec.zeta_powers
        for i in range(1, d):
            a = self.coeffs[i]
            if a:
                row = table[2 * spec.n - i]
                for j in range(d):
                    out[j] += a * row[j]
        return Cyclo(spec, tuple(out))

    # -- predicates ------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Cyclo)
            and self.spec.n == other.spec.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return self._hash

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_real(self) -> bool:
        return self == self.conj()

    # -- numeric output ---------------------------------------------------
    def to_xy(self) -> tuple[float, float]:
        cached = self._xy
        if cached is not None:
            return cached
        spec = self.spec
        x = 0.0
        y = 0.0
        for j, a in enumerate(self.coeffs):
            if a:
                x += a * spec._cos[j]
                y += a * spec._sin[j]
        object.__setattr__(self, "_xy", (x, y))
        return (x, y)

    @property
    def x(self) -> float:
        return self.to_xy()[0]

    @property
    def y(self) -> float:
        return self.to_xy()[1]

    def __repr__(self) -> str:
        return f"Cyclo(n={self.spec.n}, {list(self.coeffs)})"


def zero(spec: RingSpec) -> Cyclo:
    return Cyclo(spec, (0,) * spec.degree)


def one(spec: RingSpec) -> Cyclo:
    return direction(spec, 0)


def direction(spec: RingSpec, k: int) -> Cyclo:
    """The unit vector e_k = (cos(k*pi/n), sin(k*pi/n)) as a ring element."""
    return Cyclo(spec, spec.zeta_powers[k % (2 * spec.n)])


def to_cartesian(x: Cyclo) -> tuple[float, float]:
    """Numeric evaluation at zeta = exp(i*pi/n); presentation only."""
    return x.to_xy()


# Strict sign decisions below mix a fast float estimate with the exact
# zero test; the guard band flags (never observed) borderline cases
# instead of silently guessing.
_SIGN_GUARD = 1e-9


def sign_of_real(x: Cyclo) -> int:
    """Sign of a real ring element: exact zero test, numeric otherwise."""
    if x.is_zero():
        return 0
    if not x.is_real():
        raise ValueError("sign_of_real on a non-real element")
    re, _ = x.to_xy()
    if abs(re) < _SIGN_GUARD:
        raise ExactnessError(f"sign too close to zero: {re!r}")
    return 1 if re > 0 else -1


def cross_sign(u: Cyclo, v: Cyclo) -> int:
    """Sign of the 2D cross product u x v (0 iff u, v exactly parallel)."""
    w = u.conj() * v
    # cross = Im(w); w - conj(w) = 2i Im(w)
    diff = w - w.conj()
    if diff.is_zero():
        return 0
    _, im2 = diff.to_xy()
    if abs(im2) < _SIGN_GUARD:
        raise ExactnessError(f"cross sign too close to zero: {im2!r}")
    return 1 if im2 > 0 else -1


def dot_sign(u: Cyclo, v: Cyclo) -> int:
    """Sign of the 2D dot product u . v (0 iff exactly orthogonal)."""
    w = u.conj() * v
    s = w + w.conj()  # 2 Re(w)
    if s.is_zero():
        return 0
    re2, _ = s.to_xy()
    if abs(re2) < _SIGN_GUARD:
        raise ExactnessError(f"dot sign too close to zero: {re2!r}")
    return 1 if re2 > 0 else -1
