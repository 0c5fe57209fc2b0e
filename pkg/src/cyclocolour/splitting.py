"""Splitting of rational primes in Z[xi_n] and generators of the primes above them."""

from __future__ import annotations

import itertools
import json
import logging
import os
import tempfile
from dataclasses import dataclass
from math import comb
from pathlib import Path

import numpy as np
from sympy import factorint, isprime

from .core import CycloElem, FieldContext, euler_phi, galois
from .ideals import ideal_equal, norm, ramified_generator

__all__ = [
    "CACHE_ENV",
    "GeneratorCache",
    "GeneratorNotFoundError",
    "RationalPrimeSplit",
    "SearchBudget",
    "euler_factor_coeffs",
    "find_prime_generator",
    "multiplicative_order",
    "perfect_euler_factor_coeffs",
    "split_prime",
]

log = logging.getLogger(__name__)

CACHE_ENV = "CYCLOCOLOUR_CACHE"


class GeneratorNotFoundError(RuntimeError):
    def __init__(self, n: int, p: int, l: int, budget: SearchBudget):
        super().__init__(
            f"generator not found within bound: n={n}, p={p}, norm {p}^{l} "
            f"(max coefficient {budget.max_bound}, {budget.max_candidates} candidates)"
        )
        self.n, self.p, self.l = n, p, l


def multiplicative_order(a: int, r: int) -> int:
    """Order of a in (Z/rZ)^x; 1 when r <= 2."""
    if r <= 2:
        return 1
    order = euler_phi(r)
    for q in factorint(order):
        while order % q == 0 and pow(a, order // q, r) == 1:
            order //= q
    return order


@dataclass(frozen=True)
class RationalPrimeSplit:
    p: int
    r: int
    t: int
    e: int
    l: int
    m: int

    @property
    def basic_index(self) -> int:
        return self.p**self.l

    @property
    def kind(self) -> str:
        if self.e > 1:
            return "ramified"
        return "inert" if self.m == 1 else "split"


def split_prime(fld: FieldContext, p: int) -> RationalPrimeSplit:
    if not isprime(p):
        raise ValueError(f"p={p} is not prime")
    r, t = fld.n, 0
    while r % p == 0:
        r //= p
        t += 1
    phi_r = euler_phi(r)
    l = multiplicative_order(p, r)
    m = phi_r // l
    e = fld.euler_phi // phi_r
    return RationalPrimeSplit(p=p, r=r, t=t, e=e, l=l, m=m)


def euler_factor_coeffs(split: RationalPrimeSplit, limit: int) -> list[tuple[int, int]]:
    """Pairs (p^(l j), C(j+m-1, m-1)) for all j >= 0 with p^(l j) <= limit."""
    return _factor_terms(split, limit, step=1)


def perfect_euler_factor_coeffs(split: RationalPrimeSplit, limit: int) -> list[tuple[int, int]]:
    """As euler_factor_coeffs, keeping only j divisible by m."""
    return _factor_terms(split, limit, step=split.m)


def _factor_terms(split: RationalPrimeSplit, limit: int, step: int) -> list[tuple[int, int]]:
    if limit < 1:
        raise ValueError("limit must be positive")
    base = split.basic_index
    out = []
    j, idx = 0, 1
    stride = base**step
    while idx <= limit:
        out.append((idx, comb(j + split.m - 1, split.m - 1)))
        j += step
        idx *= stride
    return out


@dataclass(frozen=True)
class SearchBudget:
    max_bound: int | None = None
    max_support: int | None = None
    max_candidates: int = 20_000_000


class GeneratorCache:
    """JSON file of found generators, ``{"<n>": {"<p>": [[c0, c1, ...], ...]}}``.

    With ``path=None`` the cache lives in memory only. Writes replace the whole
    file atomically.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self.entries: dict[str, dict[str, list[list[int]]]] = {}
        self._checked: dict[tuple[int, int], list[CycloElem]] = {}
        if self.path is not None and self.path.exists():
            try:
                self.entries = json.loads(self.path.read_text())
            except (OSError, ValueError):
                log.warning("unreadable generator cache %s, rebuilding", self.path)
                self.entries = {}

    @classmethod
    def default(cls, path: str | os.PathLike | None = None) -> GeneratorCache:
        """Flag value, then $CYCLOCOLOUR_CACHE, then ~/.cache/cyclocolour/generators.json."""
        if path is None:
            path = os.environ.get(CACHE_ENV)
        if path is None:
            path = Path.home() / ".cache" / "cyclocolour" / "generators.json"
        return cls(path)

    def get(self, n: int, p: int) -> list[list[int]] | None:
        return self.entries.get(str(n), {}).get(str(p))

    def put(self, n: int, p: int, vectors: list[list[int]]) -> None:
        self._checked.pop((n, p), None)
        self.entries.setdefault(str(n), {})[str(p)] = [list(v) for v in vectors]
        self.save()

    def save(self) -> None:
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".gencache-")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(self.entries, fh, sort_keys=True)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


_MEMORY_CACHE = GeneratorCache()


def _modulus_for(n: int) -> tuple[int, int]:
    """A prime P = 1 mod n below 2^31 and an element of exact order n mod P."""
    P = (2**31 - 1) // n * n + 1
    while P >= 2**31 or not isprime(P):
        P -= n
    qs = list(factorint(n))
    g = 2
    while True:
        w = pow(g, (P - 1) // n, P)
        if all(pow(w, n // q, P) != 1 for q in qs):
            return P, w
        g += 1


def _search_norm(fld: FieldContext, target: int, budget: SearchBudget) -> CycloElem | None:
    """First element of norm ``target`` in the canonical search order.

    Order: coefficient bound B = 1, 2, ... (vectors whose largest |c| is B),
    then support size, then support set, then value pattern (first nonzero
    coefficient positive), both lexicographic. Norms are screened modulo a
    prime P = 1 mod n, where Phi_n splits and the norm is the product of the
    values at the primitive roots; survivors are confirmed exactly.
    """
    phi = fld.euler_phi
    P, w = _modulus_for(fld.n)
    evals = np.array(
        [[pow(w, k * i, P) for k in fld.galois_exponents] for i in range(phi)], dtype=np.int64
    )
    tgt = target % P
    seen = 0
    max_support = budget.max_support or phi
    B = 0
    while budget.max_bound is None or B < budget.max_bound:
        B += 1
        for s in range(1, max_support + 1):
            n_patterns = _count_patterns(B, s)
            if n_patterns <= _CHUNK:
                patterns = np.array(list(_patterns(B, s)), dtype=np.int64)
                per_block = max(1, _CHUNK // n_patterns)
                for sup in _support_chunks(phi, s, per_block):
                    if seen >= budget.max_candidates:
                        return None
                    seen += len(sup) * n_patterns
                    hit = _screen(fld, evals, P, tgt, sup, patterns, target)
                    if hit is not None:
                        return hit
            else:
                for sup in _support_chunks(phi, s, 1):
                    for patterns in _pattern_chunks(B, s):
                        if seen >= budget.max_candidates:
                            return None
                        seen += len(patterns)
                        hit = _screen(fld, evals, P, tgt, sup, patterns, target)
                        if hit is not None:
                            return hit
        if seen >= budget.max_candidates:
            return None
    return None


_CHUNK = 1 << 16


def _count_patterns(B: int, s: int) -> int:
    # nonzero values in [-B, B], first one positive, some |v| == B
    return ((2 * B) ** s - (2 * B - 2) ** s) // 2


def _patterns(B: int, s: int):
    values = [v for v in range(-B, B + 1) if v]
    for first in range(1, B + 1):
        for rest in itertools.product(values, repeat=s - 1):
            if first == B or any(abs(v) == B for v in rest):
                yield (first,) + rest


def _pattern_chunks(B: int, s: int):
    it = _patterns(B, s)
    while True:
        block = list(itertools.islice(it, _CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def _support_chunks(phi: int, s: int, size: int):
    it = itertools.combinations(range(phi), s)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def _screen(fld, evals, P, tgt, supports, patterns, target) -> CycloElem | None:
    """Check every (support, pattern) pair of a block, support-major."""
    phi = fld.euler_phi
    # acc[c, v, k] = sum_t patterns[v, t] * evals[supports[c, t], k]
    acc = np.einsum("vt,ctk->cvk", patterns, evals[supports]) % P
    acc = acc.reshape(-1, acc.shape[-1])
    prod = acc[:, 0].copy()
    for j in range(1, acc.shape[1]):
        prod = (prod * acc[:, j]) % P
    nv = len(patterns)
    for h in np.flatnonzero(prod == tgt):
        c, v = divmod(int(h), nv)
        coeffs = [0] * phi
        for pos in range(supports.shape[1]):
            coeffs[int(supports[c, pos])] = int(patterns[v, pos])
        cand = CycloElem(tuple(coeffs), fld)
        if norm(cand) == target:
            return cand
    return None


def _valid_cached(fld: FieldContext, split: RationalPrimeSplit, vectors) -> list[CycloElem] | None:
    try:
        gens = [CycloElem(tuple(int(c) for c in v), fld) for v in vectors]
    except (TypeError, ValueError):
        return None
    if len(gens) != split.m or any(norm(g) != split.basic_index for g in gens):
        return None
    for i, a in enumerate(gens):
        if any(ideal_equal(a, b) for b in gens[i + 1:]):
            return None
    return gens


def find_prime_generator(
    fld: FieldContext,
    p: int,
    cache: GeneratorCache | None = None,
    budget: SearchBudget | None = None,
) -> list[CycloElem]:
    """One generator for each of the m prime ideals above p."""
    if not fld.class_number_one:
        raise ValueError(f"Z[xi_{fld.n}] does not have class number one")
    split = split_prime(fld, p)
    if split.m == 1:
        if split.e == 1:
            return [fld.from_int(p)]
        return [ramified_generator(fld, p)]

    cache = _MEMORY_CACHE if cache is None else cache
    if (fld.n, p) in cache._checked:
        return list(cache._checked[(fld.n, p)])
    cached = cache.get(fld.n, p)
    if cached is not None:
        gens = _valid_cached(fld, split, cached)
        if gens is not None:
            cache._checked[(fld.n, p)] = gens
            return list(gens)
        log.warning("discarding invalid cache entry for n=%d p=%d", fld.n, p)

    budget = budget or SearchBudget()
    g = _search_norm(fld, split.basic_index, budget)
    if g is None:
        raise GeneratorNotFoundError(fld.n, p, split.l, budget)
    gens = [g]
    for k in fld.galois_exponents:
        if len(gens) == split.m:
            break
        h = galois(g, k)
        if not any(ideal_equal(h, x) for x in gens):
            gens.append(h)
    assert len(gens) == split.m
    cache.put(fld.n, p, [list(x.coeffs) for x in gens])
    cache._checked[(fld.n, p)] = gens
    return list(gens)
