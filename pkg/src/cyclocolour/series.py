"""Formal Dirichlet coefficients of the Dedekind zeta function of Q(xi_n).

``full`` mode counts all ideals of each norm; ``perfect`` mode keeps only the
Euler-factor terms whose exponent j is a multiple of m, which generates exactly
the indices admitting a perfect colouring (with the binomial coefficient kept as
the count of all colourings at that index).
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from importlib import resources
from typing import Literal

from sympy import integer_nthroot, primefactors, primerange

from .core import FieldContext
from .splitting import euler_factor_coeffs, perfect_euler_factor_coeffs, split_prime

__all__ = [
    "DirichletCoeffs",
    "dirichlet_coefficients",
    "load_table_h",
    "perfect_index_test_via_series",
    "table_row",
    "verify_table_h",
]

Mode = Literal["full", "perfect"]


@dataclass(frozen=True)
class DirichletCoeffs:
    n: int
    limit: int
    mode: Mode
    coeffs: dict[int, int]

    def __getitem__(self, ell: int) -> int:
        if ell > self.limit:
            raise ValueError(f"index {ell} beyond computed limit {self.limit}")
        return self.coeffs.get(ell, 0)

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def terms(self) -> list[tuple[int, int]]:
        return [(ell, self.coeffs[ell]) for ell in self.support()]


def _candidate_primes(fld: FieldContext, limit: int, mode: Mode):
    if mode == "full":
        yield from primerange(2, limit + 1)
        return
    # unramified p first contributes at p^phi(n); ramified p at p^phi(r)
    bound = integer_nthroot(limit, fld.euler_phi)[0]
    ramified = primefactors(fld.n)
    for p in primerange(2, bound + 1):
        if p not in ramified:
            yield p
    yield from ramified


def dirichlet_coefficients(fld: FieldContext, limit: int, mode: Mode = "full") -> DirichletCoeffs:
    """Truncated coefficients a_n(ell), ell <= limit, of the Euler product."""
    if limit < 1:
        raise ValueError("limit must be positive")
    if mode not in ("full", "perfect"):
        raise ValueError(f"unknown mode {mode!r}")
    if not fld.class_number_one:
        raise ValueError(f"Z[xi_{fld.n}] does not have class number one")
    factor = perfect_euler_factor_coeffs if mode == "perfect" else euler_factor_coeffs
    keys = [1]
    vals = {1: 1}
    for p in _candidate_primes(fld, limit, mode):
        terms = factor(split_prime(fld, p), limit)[1:]
        if not terms:
            continue
        new = dict(vals)
        for idx, c in terms:
            # indices from distinct primes are coprime, so every product is new
            for a in keys[: bisect_right(keys, limit // idx)]:
                new[a * idx] = vals[a] * c
        vals = new
        keys = sorted(vals)
    return DirichletCoeffs(fld.n, limit, mode, vals)


def perfect_index_test_via_series(series: DirichletCoeffs, ell: int) -> bool:
    if series.mode != "perfect":
        raise ValueError("needs perfect-mode coefficients")
    if ell > series.limit:
        raise ValueError(f"index {ell} beyond computed limit {series.limit}")
    return ell in series.coeffs


def table_row(fld: FieldContext, term_count: int) -> list[tuple[int, int]]:
    """First ``term_count`` nonzero terms of the perfect-mode series."""
    limit = 1 << 7
    while True:
        terms = dirichlet_coefficients(fld, limit, "perfect").terms()
        if len(terms) >= term_count:
            return terms[:term_count]
        limit <<= 3


def load_table_h() -> dict:
    """Transcribed reference rows: ``{"rows": {n: [[ell, count], ...]}, "suspect": {...}}``."""
    text = resources.files("cyclocolour.data").joinpath("table_h.json").read_text()
    return json.loads(text)


def verify_table_h(fld: FieldContext, printed: list[list[int]] | None = None) -> list[dict]:
    """Compare the printed row for n against the computed perfect-mode series.

    One ``term`` record per printed (ell, count), matching when the computed
    coefficient at that ell equals the printed count. Computed terms below the
    largest printed ell that the row leaves out get an ``omitted`` record,
    which always counts as a diff.
    """
    if printed is None:
        printed = load_table_h()["rows"][str(fld.n)]
    limit = max(ell for ell, _ in printed)
    computed = dirichlet_coefficients(fld, limit, "perfect")
    out = []
    for pos, (ell, count) in enumerate(printed):
        got = computed.coeffs.get(ell, 0)
        out.append({
            "n": fld.n,
            "kind": "term",
            "position": pos,
            "ell": ell,
            "printed": count,
            "computed": got,
            "status": "match" if got == count else "diff",
        })
    listed = {ell for ell, _ in printed}
    for ell, count in computed.terms():
        if ell not in listed:
            out.append({
                "n": fld.n,
                "kind": "omitted",
                "position": None,
                "ell": ell,
                "printed": None,
                "computed": count,
                "status": "diff",
            })
    return out
