"""Colour symmetry of ideal colourings: H (perfect or chirally perfect) and K.

A point operation of the dihedral group D_N (N = lcm(2, n)) is written
``PointOp(shift, reflect)``: x -> zeta_N^shift * x, or x -> zeta_N^shift * conj(x)
when ``reflect`` is set. It preserves every colour of the colouring induced by
q iff zeta_N^shift * f(xi^i) - xi^i lies in (q) for all i, which reduces to
q dividing differences of roots of unity.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import NamedTuple

import numpy as np
from sympy import factorint

from .core import CycloElem, FieldContext, conjugate, root_of_unity, shift, times_root_of_unity
from .ideals import cofactor, divides, ideal_equal, is_balanced, norm, ramified_generator
from .splitting import (
    GeneratorCache,
    GeneratorNotFoundError,
    SearchBudget,
    find_prime_generator,
    split_prime,
)

__all__ = [
    "BudgetExceededError",
    "ColouringAtlas",
    "HKind",
    "PerfectWitness",
    "PointGroupDescriptor",
    "PointOp",
    "SymmetryReport",
    "apply_op",
    "classify_H",
    "compose_ops",
    "enumerate_colourings",
    "is_perfect_index",
    "load_table_k",
    "perfect_generator",
    "point_group_K",
    "star_prediction",
    "symmetry_report",
    "verify_table_K",
]


class HKind(str, Enum):
    G = "G"
    GPRIME = "G'"

    def __str__(self) -> str:
        return self.value


class BudgetExceededError(RuntimeError):
    def __init__(self, n: int, ell: int, missing: list[tuple[int, int]]):
        listed = ", ".join(f"(p={p}, l={l})" for p, l in missing)
        super().__init__(f"cannot enumerate {ell}-colourings of n={n}: missing generators {listed}")
        self.missing = missing


class PointOp(NamedTuple):
    shift: int
    reflect: bool


def compose_ops(h: PointOp, g: PointOp, N: int) -> PointOp:
    """The operation h after g."""
    s = h.shift - g.shift if h.reflect else h.shift + g.shift
    return PointOp(s % N, h.reflect != g.reflect)


def apply_op(fld: FieldContext, op: PointOp, x: CycloElem) -> CycloElem:
    y = conjugate(x) if op.reflect else x
    return root_of_unity(fld, op.shift) * y


def all_ops(fld: FieldContext) -> list[PointOp]:
    N = fld.N
    return [PointOp(j, r) for r in (False, True) for j in range(N)]


@dataclass(frozen=True)
class PointGroupDescriptor:
    """Colour-preserving point operations, a subgroup of D_N.

    ``reflection_axes`` holds the shifts j (mod N) of the preserved
    reflections x -> zeta_N^j conj(x); the mirror line is at angle pi j / N.
    """

    rotation_order: int
    reflection_axes: frozenset[int]
    N: int

    @property
    def reflection_present(self) -> bool:
        return bool(self.reflection_axes)

    @property
    def kind(self) -> str:
        return "D" if self.reflection_axes else "C"

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rotation_order}"

    @property
    def group_order(self) -> int:
        return self.rotation_order * (2 if self.reflection_axes else 1)

    @property
    def is_trivial(self) -> bool:
        return self.group_order == 1

    def operations(self) -> list[PointOp]:
        step = self.N // self.rotation_order
        ops = [PointOp(j, False) for j in range(0, self.N, step)]
        ops += [PointOp(j, True) for j in sorted(self.reflection_axes)]
        return ops

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.rotation_order,
            "rotation_order": self.rotation_order,
            "reflections": sorted(self.reflection_axes),
            "label": self.label,
        }


def trivial_group(fld: FieldContext) -> PointGroupDescriptor:
    return PointGroupDescriptor(1, frozenset(), fld.N)


@dataclass(frozen=True)
class SymmetryReport:
    n: int
    generator: CycloElem
    ell: int
    h_kind: HKind
    point_group: PointGroupDescriptor

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": str(self.generator),
            "ell": self.ell,
            "H": self.h_kind.value,
            "K": self.point_group.to_json(),
        }


@dataclass(frozen=True)
class AtlasEntry:
    generator: CycloElem
    report: SymmetryReport
    # prime p -> exponents over the generators returned by find_prime_generator
    pattern: dict[int, tuple[int, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class ColouringAtlas:
    n: int
    ell: int
    entries: tuple[AtlasEntry, ...]

    @property
    def count(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ell": self.ell,
            "count": self.count,
            "colourings": [
                {**e.report.to_json(), "pattern": {str(p): list(x) for p, x in e.pattern.items()}}
                for e in self.entries
            ],
        }


def _require_cls1(fld: FieldContext) -> None:
    if not fld.class_number_one:
        raise ValueError(f"Z[xi_{fld.n}] does not have class number one")


def classify_H(fld: FieldContext, q: CycloElem) -> HKind:
    """G (perfect) iff (q) = (conj q), otherwise G' (chirally perfect)."""
    _require_cls1(fld)
    if q.is_zero():
        raise ValueError("zero generates no colouring")
    return HKind.G if is_balanced(q) else HKind.GPRIME


@dataclass(frozen=True)
class PerfectWitness:
    """ell = d^(phi(n) * s0) * prod p_i^(phi(r_i) * s_i) with p_i | n."""

    d: int
    s0: int
    ramified: tuple[tuple[int, int], ...]


def is_perfect_index(fld: FieldContext, ell: int) -> PerfectWitness | None:
    if ell < 1:
        raise ValueError("index must be positive")
    phi = fld.euler_phi
    d = 1
    ramified = []
    for p, v in sorted(factorint(ell).items()):
        if fld.n % p == 0:
            # phi(r) divides phi(n), so the d-part can be absorbed here
            step = phi // split_prime(fld, p).e
            if v % step:
                return None
            ramified.append((p, v // step))
        else:
            if v % phi:
                return None
            d *= p ** (v // phi)
    return PerfectWitness(d, 1 if d > 1 else 0, tuple(ramified))


def perfect_generator(fld: FieldContext, ell: int) -> CycloElem:
    """The generator of the unique perfect ell-colouring."""
    _require_cls1(fld)
    w = is_perfect_index(fld, ell)
    if w is None:
        raise ValueError(f"no perfect {ell}-colouring of n={fld.n}")
    q = fld.from_int(w.d**w.s0)
    for p, s in w.ramified:
        q = q * ramified_generator(fld, p) ** s
    # an alternative witness moves whole powers of p into d
    for p, s in w.ramified:
        e = split_prime(fld, p).e
        if s >= e:
            alt = fld.from_int(w.d**w.s0 * p)
            for p2, s2 in w.ramified:
                alt = alt * ramified_generator(fld, p2) ** (s2 - e if p2 == p else s2)
            assert ideal_equal(q, alt)
    return q


def _root_kernel(fld: FieldContext, q: CycloElem) -> list[bool]:
    """kernel[j] is True iff zeta_N^j - 1 lies in (q)."""
    cof = cofactor(q)
    nrm = norm(q)
    S = fld.shift_matrices
    if nrm * int(np.abs(S).max()) * fld.euler_phi < 2**62:
        c = np.array([x % nrm for x in cof.coeffs], dtype=np.int64)
        images = (S @ c) % nrm
        n, N = fld.n, fld.N
        out = []
        for j in range(N):
            if N == n:
                img = images[j]
            else:
                img = images[(j * (n + 1) // 2) % n]
                if j % 2:
                    img = -img
            out.append(not np.any((img - c) % nrm))
        return out
    out = []
    for j in range(fld.N):
        # (zeta^j - 1) / q = (zeta^j - 1) cof(q) / N(q)
        num = times_root_of_unity(cof, j) - cof
        out.append(all(c % nrm == 0 for c in num.coeffs))
    return out


def point_group_K(fld: FieldContext, q: CycloElem) -> PointGroupDescriptor:
    """Scan all 2N operations of D_N for the colour-preserving ones."""
    _require_cls1(fld)
    if q.is_zero():
        raise ValueError("zero generates no colouring")
    N, n = fld.N, fld.n
    kernel = _root_kernel(fld, q)
    rotations = [j for j in range(N) if kernel[j]]
    # xi^(-2i) = zeta_N^(-2i * N/n)
    step = 2 * (N // n)
    axes = frozenset(
        j for j in range(N) if all(kernel[(j - step * i) % N] for i in range(n))
    )
    desc = PointGroupDescriptor(len(rotations), axes, N)

    assert N % desc.rotation_order == 0
    assert rotations == list(range(0, N, N // desc.rotation_order))
    assert not axes or len(axes) == desc.rotation_order
    if n % 2 and norm(q) != 1:
        # the 2n-fold rotation would force q | zeta_2n - 1, a unit
        assert not kernel[1]
    ops = set(desc.operations())
    for g, h in itertools.product(ops, repeat=2):
        assert compose_ops(h, g, N) in ops
    return desc


def _distinct_primes(ell: int) -> int:
    return len(factorint(ell))


def symmetry_report(fld: FieldContext, q: CycloElem, verify_fast_path: bool = False) -> SymmetryReport:
    _require_cls1(fld)
    if q.is_zero():
        raise ValueError("zero generates no colouring")
    ell = norm(q)
    h = classify_H(fld, q)
    if ell > 1 and _distinct_primes(ell) >= 2:
        pg = trivial_group(fld)
        if verify_fast_path:
            assert point_group_K(fld, q) == pg
    else:
        pg = point_group_K(fld, q)
    return SymmetryReport(fld.n, q, ell, h, pg)


def canonical_associate(q: CycloElem) -> CycloElem:
    """Lexicographically least coefficient vector among +-xi^k q."""
    fld = q.field
    S = fld.shift_matrices
    big = max(abs(c) for c in q.coeffs)
    if big * int(np.abs(S).max()) * fld.euler_phi < 2**62:
        imgs = (S @ np.array(q.coeffs, dtype=np.int64)).tolist()
        best_vec = min(min(v, [-x for x in v]) for v in imgs)
        return CycloElem(tuple(best_vec), fld)
    best = None
    for k in range(fld.n):
        cand = shift(q, k)
        for c in (cand, -cand):
            if best is None or c.coeffs < best.coeffs:
                best = c
    return best


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_colourings(
    fld: FieldContext,
    ell: int,
    cache: GeneratorCache | None = None,
    budget: SearchBudget | None = None,
    verify_fast_path: bool = False,
    verify_distinct: bool = False,
) -> ColouringAtlas:
    """All distinct ell-colourings with their symmetry reports.

    Distinct exponent patterns over pairwise distinct primes give distinct
    ideals, so no deduplication is needed; ``verify_distinct`` re-checks
    this pairwise with ideal_equal.
    """
    _require_cls1(fld)
    if ell < 1:
        raise ValueError("index must be positive")
    per_prime = []
    missing = []
    for p, a in sorted(factorint(ell).items()):
        sp = split_prime(fld, p)
        if a % sp.l:
            return ColouringAtlas(fld.n, ell, ())
        try:
            gens = find_prime_generator(fld, p, cache, budget)
        except GeneratorNotFoundError:
            missing.append((p, sp.l))
            continue
        per_prime.append((p, gens, list(_compositions(a // sp.l, sp.m))))
    if missing:
        raise BudgetExceededError(fld.n, ell, missing)

    choices = []
    for p, gens, comps in per_prime:
        powers: dict[tuple[int, int], CycloElem] = {}
        opts = []
        for comp in comps:
            elem = fld.one()
            for i, x in enumerate(comp):
                if x:
                    if (i, x) not in powers:
                        powers[(i, x)] = gens[i] ** x
                    elem = elem * powers[(i, x)]
            opts.append((p, comp, elem))
        choices.append(opts)

    entries: list[AtlasEntry] = []
    for combo in itertools.product(*choices):
        q = fld.one()
        for _, _, elem in combo:
            q = q * elem
        q = canonical_associate(q)
        if verify_distinct:
            assert not any(ideal_equal(q, e.generator) for e in entries)
        rep = symmetry_report(fld, q, verify_fast_path)
        assert rep.ell == ell
        entries.append(AtlasEntry(q, rep, {p: comp for p, comp, _ in combo}))
    entries.sort(key=lambda e: e.generator.coeffs)
    return ColouringAtlas(fld.n, ell, tuple(entries))


def load_table_k() -> dict:
    text = resources.files("cyclocolour.data").joinpath("table_k.json").read_text()
    return json.loads(text)


def star_prediction(fld: FieldContext, ell: int, pattern: dict[int, tuple[int, ...]]) -> str | None:
    """Point group label the refined rules predict for one colouring, if any rule applies.

    Rules, over the two conjugate primes (a, b) above p:
      * p = 2, n odd, 2 splits in two: (1,0), (1,1) give C2; (2,0) trivial.
      * p odd, (1 - xi_p) splits in two: (1,0), (1,1) give C_p; (2,0) trivial.
      * p = 2, (1 - xi_4) splits in two: with q4^i (1-xi_4)^j = (i+j, j),
        (1,0), (1,1) give C4; (2,0), (2,2), (2,1) give C2; (3,0), (3,1), (4,0) trivial.
    """
    if len(pattern) != 1:
        return None
    (p, comp), = pattern.items()
    sp = split_prime(fld, p)
    if sp.m != 2:
        return None
    key = tuple(sorted(comp, reverse=True))
    if p == 2 and fld.n % 2:
        rule = {(1, 0): "C2", (1, 1): "C2", (2, 0): "C1"}
    elif p == 2 and fld.n % 4 == 0 and sp.e > 1:
        rule = {
            (1, 0): "C4", (1, 1): "C4",
            (2, 0): "C2", (2, 2): "C2", (2, 1): "C2",
            (3, 0): "C1", (3, 1): "C1", (4, 0): "C1",
        }
    elif p % 2 and fld.n % p == 0:
        rule = {(1, 0): f"C{p}", (1, 1): f"C{p}", (2, 0): "C1"}
    else:
        return None
    return rule.get(key)


def verify_table_K(
    fld: FieldContext,
    cache: GeneratorCache | None = None,
    budget: SearchBudget | None = None,
    printed: list[dict] | None = None,
    scan_limit: int = 0,
) -> list[dict]:
    """Compare the printed (ell, P_n) entries for n against enumeration.

    Unstarred entries match when every ell-colouring has the printed group.
    Starred entries match when the printed group occurs and each colouring
    has the group the refined rules predict (or the printed one where no rule
    applies). Afterwards prime powers p^a with p | 2n and a <= phi(n) + l,
    and every ell <= scan_limit, are scanned: any unlisted ell with a
    nontrivial group is reported.
    """
    _require_cls1(fld)
    if printed is None:
        printed = load_table_k()["rows"].get(str(fld.n), [])
    rows = []
    listed = set()
    for entry in printed:
        ell, want, star = entry["ell"], entry["label"], entry.get("star", False)
        listed.add(ell)
        row = {"n": fld.n, "ell": ell, "printed": want, "star": star}
        try:
            atlas = enumerate_colourings(fld, ell, cache, budget)
        except BudgetExceededError as exc:
            rows.append({**row, "status": "unverifiable", "reason": str(exc)})
            continue
        computed = []
        ok = atlas.count > 0
        for e in atlas.entries:
            got = e.report.point_group.label
            expect = want
            if star:
                pred = star_prediction(fld, ell, e.pattern)
                expect = pred if pred is not None else want
            computed.append({"q": str(e.generator), "K": got, "expected": expect})
            ok = ok and got == expect
        if star:
            ok = ok and any(c["K"] == want for c in computed)
        rows.append({**row, "computed": computed, "status": "match" if ok else "diff"})

    scan = set()
    for p in factorint(2 * fld.n):
        sp = split_prime(fld, p)
        a = sp.l
        while a <= fld.euler_phi + sp.l:
            scan.add(p**a)
            a += sp.l
    scan.update(range(2, scan_limit + 1))
    for ell in sorted(scan - listed):
        try:
            atlas = enumerate_colourings(fld, ell, cache, budget)
        except BudgetExceededError as exc:
            rows.append({"n": fld.n, "ell": ell, "printed": None, "status": "unverifiable",
                         "reason": str(exc)})
            continue
        nontrivial = [e for e in atlas.entries if not e.report.point_group.is_trivial]
        if nontrivial:
            rows.append({
                "n": fld.n, "ell": ell, "printed": None, "star": False,
                "computed": [{"q": str(e.generator), "K": e.report.point_group.label}
                             for e in atlas.entries],
                "status": "diff",
            })
    return rows
