"""Brute-force coset oracle.

The ideal (q) is realised as the sublattice of Z^phi(n) spanned by the
coefficient vectors of q, q*xi, ..., q*xi^(phi-1). Cosets are labelled through
a Smith normal form U M V = diag(d_1, ..., d_phi): x and y share a coset iff
U x = U y modulo each d_i. Nothing here uses norms, cofactors or the
divisibility test of the ideal module, so agreement with it is a real check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import CycloElem, FieldContext, conjugate, root_of_unity, root_power
from .symmetry import HKind, PointGroupDescriptor, PointOp, all_ops, compose_ops

__all__ = [
    "CosetTable",
    "brute_force_H",
    "brute_force_K",
    "build_coset_table",
    "count_ideals_bruteforce",
    "hermite_normal_form",
    "homomorphism_spot_check",
    "op_matrix",
    "smith_normal_form",
    "verify_colour_action",
]

Matrix = list[list[int]]


def _identity(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def _det(m: Matrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    a = [row[:] for row in m]
    k = len(a)
    sign, prev = 1, 1
    for i in range(k - 1):
        if a[i][i] == 0:
            for r in range(i + 1, k):
                if a[r][i]:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[-1][-1]


def smith_normal_form(m: Matrix) -> tuple[list[int], Matrix, Matrix]:
    """Return (diag, U, V) with U m V = diag, U and V unimodular, d_i | d_(i+1).

    Pivots on the entry of least absolute value. Requires m nonsingular.
    """
    k = len(m)
    a = [row[:] for row in m]
    U, V = _identity(k), _identity(k)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        a[dst] = [x - c * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x - c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] -= c * row[src]
        for row in V:
            row[dst] -= c * row[src]

    for t in range(k):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, k) for j in range(t, k) if a[i][j]]
            if not nz:
                raise ValueError("matrix is singular")
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, k):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, k):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            # the pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, k) for j in range(t + 1, k) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return [a[i][i] for i in range(k)], U, V


def hermite_normal_form(m: Matrix) -> Matrix:
    """Lower-triangular column HNF of a nonsingular matrix.

    Columns span the same lattice; h[i][i] > 0, h[i][j] = 0 for j > i, and
    0 <= h[i][j] < h[i][i] for j < i.
    """
    k = len(m)
    cols = [[m[i][j] for i in range(k)] for j in range(k)]
    for i in range(k):
        # gcd-combine the columns i..k-1 so that only column i is nonzero in row i
        while True:
            live = [j for j in range(i, k) if cols[j][i]]
            if not live:
                raise ValueError("matrix is singular")
            j0 = min(live, key=lambda j: abs(cols[j][i]))
            cols[i], cols[j0] = cols[j0], cols[i]
            done = True
            for j in range(i + 1, k):
                c = cols[j][i] // cols[i][i]
                if c:
                    cols[j] = [x - c * y for x, y in zip(cols[j], cols[i])]
                if cols[j][i]:
                    done = False
            if done:
                break
        if cols[i][i] < 0:
            cols[i] = [-x for x in cols[i]]
        for j in range(i):
            c = cols[j][i] // cols[i][i]
            if c:
                cols[j] = [x - c * y for x, y in zip(cols[j], cols[i])]
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def _box(h: Matrix) -> np.ndarray:
    """Every integer vector with 0 <= x_i < h[i][i], one per coset."""
    sizes = [h[i][i] for i in range(len(h))]
    grids = np.indices(sizes, dtype=np.int64).reshape(len(sizes), -1)
    return grids.T.copy()


def op_matrix(fld: FieldContext, op: PointOp) -> Matrix:
    """Matrix of a point operation on the power-basis coordinates."""
    cols = []
    rot = root_of_unity(fld, op.shift)
    for i in range(fld.euler_phi):
        b = root_power(fld, i)
        if op.reflect:
            b = conjugate(b)
        cols.append((rot * b).coeffs)
    return [[cols[j][i] for j in range(fld.euler_phi)] for i in range(fld.euler_phi)]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


@dataclass(frozen=True, eq=False)
class CosetTable:
    n: int
    generator: CycloElem
    mult_matrix: Matrix
    snf_diag: tuple[int, ...]
    transform: tuple[Matrix, Matrix]
    index: int
    hnf: Matrix
    seed: int = 0

    @property
    def field(self) -> FieldContext:
        return self.generator.field

    @cached_property
    def _label_rows(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Rows of U with d_i > 1, reduced mod d_i, plus moduli and radices."""
        U = self.transform[0]
        keep = [i for i, d in enumerate(self.snf_diag) if d > 1]
        mods = np.array([self.snf_diag[i] for i in keep], dtype=np.int64)
        rows = np.array([[c % self.snf_diag[i] for c in U[i]] for i in keep], dtype=np.int64)
        radix = np.ones(len(keep), dtype=np.int64)
        for t in range(len(keep) - 2, -1, -1):
            radix[t] = radix[t + 1] * mods[t + 1]
        # a unit generator keeps no rows at all
        return rows.reshape(len(keep), len(U)), mods, radix

    def labels(self, xs: np.ndarray, pre: Matrix | None = None) -> np.ndarray:
        """Coset labels in [0, index) of the rows of xs (after applying ``pre``)."""
        rows, mods, radix = self._label_rows
        if not len(mods):
            return np.zeros(len(xs), dtype=np.int64)
        if pre is not None:
            rows = _reduce_rows(_matmul(rows.tolist(), pre), mods)
        xs = np.asarray(xs)
        bound = int(np.abs(xs).max(initial=0)) * int(mods.max()) * xs.shape[1]
        if bound < 2**62:
            v = (xs.astype(np.int64) @ rows.T) % mods
        else:
            v = (xs.astype(object) @ rows.T.astype(object)) % mods.astype(object)
            v = v.astype(np.int64)
        return v @ radix

    def label(self, x: CycloElem | list[int]) -> int:
        coeffs = x.coeffs if isinstance(x, CycloElem) else x
        return int(self.labels(np.array([coeffs], dtype=object))[0])

    @cached_property
    def representatives(self) -> np.ndarray:
        return _box(self.hnf)

    @cached_property
    def shifted_representatives(self) -> np.ndarray:
        """The box shifted by random lattice vectors, an independent residue system."""
        rng = random.Random(self.seed)
        k = len(self.mult_matrix)
        reps = self.representatives
        shifts = np.array(
            [[rng.randint(-3, 3) for _ in range(k)] for _ in range(len(reps))], dtype=np.int64
        )
        M = np.array(self.mult_matrix, dtype=object)
        out = reps.astype(object) + shifts.astype(object) @ M.T
        if int(np.abs(out).max(initial=0)) < 2**40:
            return out.astype(np.int64)
        return out


def _reduce_rows(rows: Matrix, mods: np.ndarray) -> np.ndarray:
    return np.array([[c % int(m) for c in row] for row, m in zip(rows, mods)], dtype=np.int64)


def build_coset_table(fld: FieldContext, q: CycloElem, seed: int = 0) -> CosetTable:
    if q.is_zero():
        raise ValueError("zero generates no colouring")
    k = fld.euler_phi
    cols = [(q * root_power(fld, i)).coeffs for i in range(k)]
    M = [[cols[j][i] for j in range(k)] for i in range(k)]
    diag, U, V = smith_normal_form(M)
    index = 1
    for d in diag:
        index *= d
    assert _matmul(_matmul(U, M), V) == [[diag[i] if i == j else 0 for j in range(k)] for i in range(k)]
    assert all(diag[i + 1] % diag[i] == 0 for i in range(k - 1))
    assert abs(_det(M)) == index
    H = hermite_normal_form(M)
    h_index = 1
    for i in range(k):
        h_index *= H[i][i]
    assert h_index == index
    return CosetTable(fld.n, q, M, tuple(diag), (U, V), index, H, seed)


def verify_colour_action(table: CosetTable, op: PointOp) -> dict[int, int] | None:
    """The label permutation induced by ``op``, or None when op does not map cosets to cosets."""
    A = op_matrix(table.field, op)
    # op preserves the lattice iff it sends each basis vector q*xi^i into it
    images = np.array(_matmul(A, table.mult_matrix), dtype=object).T
    if np.any(table.labels(images) != 0):
        return None
    reps = table.representatives
    before = table.labels(reps)
    after = table.labels(reps, pre=A)
    perm = dict(zip(before.tolist(), after.tolist()))
    assert len(perm) == table.index
    assert sorted(perm.values()) == list(range(table.index))
    shifted = table.shifted_representatives
    before2 = table.labels(shifted)
    after2 = table.labels(shifted, pre=A)
    assert all(perm[b] == a for b, a in zip(before2.tolist(), after2.tolist()))
    return perm


def brute_force_H(table: CosetTable) -> HKind:
    perm = verify_colour_action(table, PointOp(0, True))
    return HKind.G if perm is not None else HKind.GPRIME


def brute_force_K(table: CosetTable) -> PointGroupDescriptor:
    """Point operations fixing every coset label."""
    fld = table.field
    kept = []
    for op in all_ops(fld):
        perm = verify_colour_action(table, op)
        if perm is not None and all(k == v for k, v in perm.items()):
            kept.append(op)
    rot = [op for op in kept if not op.reflect]
    axes = frozenset(op.shift for op in kept if op.reflect)
    return PointGroupDescriptor(len(rot), axes, fld.N)


def homomorphism_spot_check(table: CosetTable, ops: list[PointOp]) -> bool:
    """pi_(h g) = pi_h pi_g for every ordered pair drawn from ``ops``."""
    N = table.field.N
    perms = {}
    for op in ops:
        perms[op] = verify_colour_action(table, op)
        if perms[op] is None:
            raise ValueError(f"{op} does not act on the cosets")
    for h in ops:
        for g in ops:
            hg = compose_ops(h, g, N)
            if hg not in perms:
                perms[hg] = verify_colour_action(table, hg)
            composed = {x: perms[h][perms[g][x]] for x in perms[g]}
            if perms[hg] != composed:
                return False
    return True


def _is_ideal_lattice(fld: FieldContext, H: Matrix) -> bool:
    # closed under multiplication by xi: the xi-image of each column reduces into the box at 0
    k = fld.euler_phi
    xi = [[root_power(fld, j + 1).coeffs[i] for j in range(k)] for i in range(k)]
    images = _matmul(xi, H)
    for j in range(k):
        v = [images[i][j] for i in range(k)]
        for i in range(k):
            c = v[i] // H[i][i]
            if v[i] - c * H[i][i]:
                return False
            for r in range(i, k):
                v[r] -= c * H[r][i]
    return True


def count_ideals_bruteforce(fld: FieldContext, ell: int) -> int:
    """Number of ideals of index ell, by enumerating every sublattice in HNF (phi(n) = 2 only)."""
    if fld.euler_phi != 2:
        raise ValueError("sublattice enumeration is only implemented for rank 2")
    count = 0
    for a in range(1, ell + 1):
        if ell % a:
            continue
        c = ell // a
        for b in range(c):
            if _is_ideal_lattice(fld, [[a, 0], [b, c]]):
                count += 1
    return count
