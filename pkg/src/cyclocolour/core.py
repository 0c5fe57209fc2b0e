"""Exact arithmetic in the cyclotomic integers Z[xi_n].

Elements are stored in the power basis 1, xi, ..., xi^(phi(n)-1) with fully
reduced, arbitrary-precision integer coefficients, so equality is a plain
tuple comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from math import gcd

import numpy as np

__all__ = [
    "CLASS_NUMBER_ONE",
    "CycloElem",
    "ElementSyntaxError",
    "FieldContext",
    "InvalidFieldError",
    "build_field",
    "conjugate",
    "cyclotomic_poly",
    "euler_phi",
    "format_element",
    "galois",
    "parse_element",
    "poly_divmod",
    "reduce",
    "root_of_unity",
    "root_power",
    "shift",
    "times_root_of_unity",
]

CLASS_NUMBER_ONE = (
    3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 17, 19, 20, 21, 24,
    25, 27, 28, 32, 33, 35, 36, 40, 44, 45, 48, 60, 84,
)


class InvalidFieldError(ValueError):
    """Raised for an index n that does not name a ring in our convention."""


class ElementSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact long division by a monic integer polynomial (ascending coefficients)."""
    if not den or den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    dd = len(den) - 1
    if len(rem) <= dd:
        return [0], rem + [0] * (dd - len(rem))
    quot = [0] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c:
            quot[k - dd] = c
            for i in range(dd + 1):
                rem[k - dd + i] -= c * den[i]
    return quot, rem[:dd]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Phi_n as ascending integer coefficients, by dividing x^n - 1 by Phi_d for d | n, d < n."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = poly_divmod(num, list(cyclotomic_poly(d)))
            if any(r):
                raise ArithmeticError(f"Phi_{d} does not divide x^{n}-1")
            num = q
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


@dataclass(frozen=True, eq=False)
class FieldContext:
    n: int
    euler_phi: int
    cyclo_poly: tuple[int, ...]
    galois_exponents: tuple[int, ...]
    point_group_order_half: int
    class_number_one: bool

    def __repr__(self) -> str:
        return f"FieldContext(n={self.n})"

    @property
    def N(self) -> int:
        return self.point_group_order_half

    @cached_property
    def powers(self) -> tuple[tuple[int, ...], ...]:
        """Reduced power-basis vectors of xi^k for 0 <= k < n."""
        phi = self.euler_phi
        den = list(self.cyclo_poly)
        table = []
        for k in range(self.n):
            if k < phi:
                v = [0] * phi
                v[k] = 1
            else:
                _, v = poly_divmod([0] * k + [1], den)
            table.append(tuple(v))
        return tuple(table)

    @cached_property
    def shift_matrices(self):
        """Integer matrices S[k] with S[k] @ v the coefficients of xi^k * v, shape (n, phi, phi)."""
        phi, n = self.euler_phi, self.n
        table = np.array(self.powers, dtype=np.int64)
        out = np.empty((n, phi, phi), dtype=np.int64)
        for k in range(n):
            out[k] = table[(np.arange(phi) + k) % n].T
        return out

    @cached_property
    def fold_matrix(self):
        """Columns are the reduced vectors of xi^phi, ..., xi^(2 phi - 2)."""
        phi, n = self.euler_phi, self.n
        rows = [self.powers[k % n] for k in range(phi, 2 * phi - 1)]
        return np.array(rows, dtype=np.int64).T.reshape(phi, phi - 1)

    @cached_property
    def fold_weight(self) -> int:
        """1 + the largest absolute row sum of fold_matrix, bounding growth under reduction."""
        return 1 + int(abs(self.fold_matrix).sum(axis=1).max(initial=0))

    def zero(self) -> CycloElem:
        return CycloElem((0,) * self.euler_phi, self)

    def one(self) -> CycloElem:
        return self.from_int(1)

    def from_int(self, c: int) -> CycloElem:
        return CycloElem((c,) + (0,) * (self.euler_phi - 1), self)

    def element(self, coeffs) -> CycloElem:
        return reduce(self, coeffs)

    @property
    def xi(self) -> CycloElem:
        return root_power(self, 1)


@lru_cache(maxsize=None)
def build_field(n: int) -> FieldContext:
    """Precompute the data of Z[xi_n]; n must be >= 3 and not 2 mod 4."""
    if not isinstance(n, int) or n < 3:
        raise InvalidFieldError(f"n={n} is not admissible: need n >= 3")
    if n % 4 == 2:
        raise InvalidFieldError(
            f"n={n} is 2 mod 4 and gives the same ring as n={n // 2}; use n={n // 2}"
        )
    phi = euler_phi(n)
    poly = cyclotomic_poly(n)
    assert len(poly) == phi + 1 and poly[-1] == 1
    return FieldContext(
        n=n,
        euler_phi=phi,
        cyclo_poly=poly,
        galois_exponents=tuple(k for k in range(1, n) if gcd(k, n) == 1),
        point_group_order_half=n if n % 2 == 0 else 2 * n,
        class_number_one=n in CLASS_NUMBER_ONE,
    )


@dataclass(frozen=True)
class CycloElem:
    coeffs: tuple[int, ...]
    field: FieldContext = dc_field(compare=False, repr=False)

    def __post_init__(self):
        if len(self.coeffs) != self.field.euler_phi:
            raise ValueError("coefficient vector length must equal phi(n)")

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.field.from_int(other)
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.field.n == other.field.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.n, self.coeffs))

    def __repr__(self):
        return f"CycloElem(n={self.field.n}, {format_element(self)!r})"

    def __str__(self):
        return format_element(self)

    def _coerce(self, other) -> CycloElem:
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, CycloElem):
            if other.field.n != self.field.n:
                raise ValueError(
                    f"elements of different rings: n={self.field.n} vs n={other.field.n}"
                )
            return other
        raise TypeError(f"cannot combine CycloElem with {type(other).__name__}")

    def __add__(self, other):
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, neg(self._coerce(other)))

    def __rsub__(self, other):
        return add(self._coerce(other), neg(self))

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not ring elements")
        result, base = self.field.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def galois(self, k: int) -> CycloElem:
        return galois(self, k)

    def conjugate(self) -> CycloElem:
        return conjugate(self)


def reduce(fld: FieldContext, poly) -> CycloElem:
    """Canonical representative of an integer polynomial modulo Phi_n.

    Exponents are first folded modulo n (Phi_n divides x^n - 1), then each
    monomial is replaced by its precomputed remainder.
    """
    phi = fld.euler_phi
    out = [0] * phi
    powers = fld.powers
    n = fld.n
    for k, c in enumerate(poly):
        if not c:
            continue
        if k < phi:
            out[k] += c
        else:
            row = powers[k % n]
            for i, r in enumerate(row):
                if r:
                    out[i] += c * r
    return CycloElem(tuple(out), fld)


def _check_same(a: CycloElem, b: CycloElem) -> None:
    if a.field.n != b.field.n:
        raise ValueError(f"elements of different rings: n={a.field.n} vs n={b.field.n}")


def add(a: CycloElem, b: CycloElem) -> CycloElem:
    _check_same(a, b)
    return CycloElem(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.field)


def neg(a: CycloElem) -> CycloElem:
    return CycloElem(tuple(-x for x in a.coeffs), a.field)


def mul(a: CycloElem, b: CycloElem) -> CycloElem:
    _check_same(a, b)
    ac, bc = a.coeffs, b.coeffs
    fld = a.field
    bound = max(map(abs, ac)) * max(map(abs, bc)) * len(ac) * fld.fold_weight
    if bound < 2**62:
        prod = np.convolve(np.array(ac, dtype=np.int64), np.array(bc, dtype=np.int64))
        phi = fld.euler_phi
        out = prod[:phi] + fld.fold_matrix @ prod[phi:]
        return CycloElem(tuple(out.tolist()), fld)
    prod = [0] * (2 * len(ac) - 1)
    bnz = [(j, y) for j, y in enumerate(bc) if y]
    for i, x in enumerate(ac):
        if x:
            for j, y in bnz:
                prod[i + j] += x * y
    return reduce(fld, prod)


def galois(a: CycloElem, k: int) -> CycloElem:
    """Image of a under the automorphism xi -> xi^k."""
    fld = a.field
    n = fld.n
    if gcd(k, n) != 1:
        raise ValueError(f"k={k} is not coprime to n={n}")
    poly = [0] * n
    for i, c in enumerate(a.coeffs):
        if c:
            poly[(i * k) % n] += c
    return reduce(fld, poly)


def conjugate(a: CycloElem) -> CycloElem:
    return galois(a, a.field.n - 1)


def root_power(fld: FieldContext, j: int) -> CycloElem:
    """xi_n^j in the power basis."""
    return CycloElem(fld.powers[j % fld.n], fld)


def shift(a: CycloElem, k: int) -> CycloElem:
    """a * xi_n^k, cheaper than a general product."""
    fld = a.field
    k %= fld.n
    return reduce(fld, [0] * k + list(a.coeffs))


def times_root_of_unity(a: CycloElem, j: int) -> CycloElem:
    """a * zeta_N^j."""
    fld = a.field
    n, N = fld.n, fld.N
    j %= N
    if N == n:
        return shift(a, j)
    r = shift(a, j * (n + 1) // 2)
    return -r if j % 2 else r


def root_of_unity(fld: FieldContext, j: int) -> CycloElem:
    """zeta_N^j where N = lcm(2, n); for odd n, zeta_2n = -xi_n^((n+1)/2)."""
    n, N = fld.n, fld.N
    j %= N
    if N == n:
        return root_power(fld, j)
    r = root_power(fld, j * (n + 1) // 2)
    return -r if j % 2 else r


_TERM = re.compile(
    r"""
    (?P<sign>[+-])?
    (?:
        (?P<coef>\d+)(?:\*(?P<var1>x)(?:\^(?P<exp1>\d+))?)?
      | (?P<var2>x)(?:\^(?P<exp2>\d+))?
    )
    """,
    re.VERBOSE,
)


def parse_element(fld: FieldContext, text: str) -> CycloElem:
    """Parse e.g. ``"1+x-x^3"`` or ``"2*x^12"``; ``x`` stands for xi_n."""
    s = "".join(text.split())
    if not s:
        raise ElementSyntaxError(text, 0, "empty element")
    terms: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (not first and m.group("sign") is None):
            raise ElementSyntaxError(text, pos, "unexpected character")
        if m.group("coef") is None and m.group("var2") is None:
            raise ElementSyntaxError(text, pos, "expected a term")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = int(m.group("coef"))
            e = 0
            if m.group("var1"):
                e = int(m.group("exp1")) if m.group("exp1") else 1
        else:
            c = 1
            e = int(m.group("exp2")) if m.group("exp2") else 1
        terms[e] = terms.get(e, 0) + sign * c
        pos = m.end()
        first = False
    poly = [0] * (max(terms) + 1)
    for e, c in terms.items():
        poly[e] += c
    return reduce(fld, poly)


def format_element(a: CycloElem) -> str:
    parts = []
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = "x" if i == 1 else f"x^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts) if parts else "0"
