"""Norms, divisibility and ideal comparison in Z[xi_n].

Divisibility is decided without leaving the integers: for nonzero a,
b / a = b * cof(a) / N(a) where cof(a) is the product of the nontrivial
Galois conjugates of a, so b lies in (a) exactly when every coefficient of
b * cof(a) is divisible by N(a).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import CycloElem, FieldContext, conjugate, galois, root_power

__all__ = [
    "IdealSpec",
    "cofactor",
    "divides",
    "ideal_equal",
    "is_balanced",
    "is_unit",
    "norm",
    "ramified_generator",
]


@lru_cache(maxsize=65536)
def _cofactor_and_norm(a: CycloElem) -> tuple[CycloElem, int]:
    fld = a.field
    cof = fld.one()
    for k in fld.galois_exponents:
        if k != 1:
            cof = cof * galois(a, k)
    full = cof * a
    if not full.is_rational():
        raise AssertionError(f"norm of {a!r} is not a rational integer")
    return cof, full.coeffs[0]


def cofactor(a: CycloElem) -> CycloElem:
    """Product of sigma_k(a) over the Galois exponents k != 1."""
    return _cofactor_and_norm(a)[0]


def norm(a: CycloElem) -> int:
    """Algebraic norm, the product of all Galois conjugates of a."""
    value = _cofactor_and_norm(a)[1]
    # phi(n) is even for n >= 3, so conjugate pairs make the norm nonnegative
    assert value >= 0
    return value


def divides(a: CycloElem, b: CycloElem) -> CycloElem | None:
    """Return b / a if it lies in Z[xi_n], else None."""
    if a.is_zero():
        raise ZeroDivisionError("divisor must be nonzero")
    cof, nrm = _cofactor_and_norm(a)
    if b.is_zero():
        return b
    num = b * cof
    if any(c % nrm for c in num.coeffs):
        return None
    return CycloElem(tuple(c // nrm for c in num.coeffs), a.field)


def is_unit(a: CycloElem) -> bool:
    return not a.is_zero() and norm(a) == 1


def ideal_equal(a: CycloElem, b: CycloElem) -> bool:
    if a.is_zero() or b.is_zero():
        raise ValueError("ideal comparison needs nonzero generators")
    if norm(a) != norm(b):
        return False
    return divides(a, b) is not None and divides(b, a) is not None


def is_balanced(q: CycloElem) -> bool:
    """True iff (q) equals (conj q)."""
    if q.is_zero():
        raise ValueError("zero generates no colouring")
    return ideal_equal(q, conjugate(q))


def _prime_power_part(n: int, p: int) -> int:
    pt = 1
    while n % p == 0:
        n //= p
        pt *= p
    return pt


def ramified_generator(fld: FieldContext, p: int) -> CycloElem:
    """1 - xi_{p^t} inside Z[xi_n], where p^t exactly divides n."""
    if fld.n % p:
        raise ValueError(f"p={p} does not divide n={fld.n}")
    pt = _prime_power_part(fld.n, p)
    return fld.one() - root_power(fld, fld.n // pt)


@dataclass(frozen=True)
class IdealSpec:
    generator: CycloElem
    norm_abs: int

    @classmethod
    def of(cls, q: CycloElem) -> IdealSpec:
        if q.is_zero():
            raise ValueError("zero ideal has no finite index")
        return cls(q, abs(norm(q)))

    def __eq__(self, other):
        if not isinstance(other, IdealSpec):
            return NotImplemented
        return ideal_equal(self.generator, other.generator)

    __hash__ = None
