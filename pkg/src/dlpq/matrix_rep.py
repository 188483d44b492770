"""Faithful matrix representation of DL(p,q) on 2**n x 2**n real matrices.

Generator e_j maps to a Kronecker product of n two-by-two factors with
``J = [[0,1],[1,0]]`` (square +1) or ``J = [[0,-1],[1,0]]`` (square -1) in
slot j and identities elsewhere; slot 1 is the leftmost tensor factor, and
``A (x) B`` is the block matrix with blocks ``b_ij * A``.  Blade images are
matrix products of generator images, and a general element maps to the
coefficient-weighted sum of blade images.

This module is deliberately independent of the algebra's own product: it is
the brute-force oracle for the determinant, trace, characteristic
polynomial, and kernel-based zero-divisor witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import Element, Signature
from .char_ops import CharPoly, is_singular_det
from .scalars import backend_of, scalar_json, scalar_str

# Dense blade-image tables cost O(4**n) memory; past this the representation
# is not materializable at desk scale anyway.
MATRIX_N_CAP = 12

_I2 = np.array([[1, 0], [0, 1]], dtype=np.int8)
_J_PLUS = np.array([[0, 1], [1, 0]], dtype=np.int8)
_J_MINUS = np.array([[0, -1], [1, 0]], dtype=np.int8)


@dataclass(frozen=True)
class RepMatrix:
    """Dense square matrix image of an element, row-major scalar rows."""

    dim: int
    rows: tuple

    def entry(self, r: int, c: int):
        return self.rows[r][c]

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.dim):
            acc = acc + self.rows[i][i]
        return acc

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.rows])

    def to_csv(self) -> str:
        return "\n".join(",".join(scalar_str(x) for x in row) for row in self.rows)

    def to_json_obj(self) -> list:
        return [[scalar_json(x) for x in row] for row in self.rows]


def _tensor_slot(sig: Signature, j: int) -> np.ndarray:
    """Dense image of generator e_j (1-based) as the slot-j Kronecker product."""
    factors = [_I2] * sig.n
    factors[j - 1] = _J_PLUS if sig.square(j) > 0 else _J_MINUS
    # Leftmost slot varies fastest under the b_ij*A block convention, so the
    # dense build folds factors left to right through the swapped kron call.
    m = factors[0]
    for f in factors[1:]:
        m = np.kron(f, m)
    return m


@lru_cache(maxsize=8)
def _blade_tables(sig: Signature) -> tuple[np.ndarray, np.ndarray]:
    """(perms, signs): for blade a, column c of its image holds signs[a][c]
    at row perms[a][c] and zeros elsewhere (blade images are signed
    permutation matrices, so this is the whole matrix)."""
    if sig.n > MATRIX_N_CAP:
        raise ValueError(
            f"dense representation supports n <= {MATRIX_N_CAP}, got n = {sig.n}"
        )
    dim = sig.dim
    cols = np.arange(dim)
    gen_perm = []
    gen_sign = []
    for j in range(1, sig.n + 1):
        m = _tensor_slot(sig, j)
        rows = np.abs(m).argmax(axis=0)
        gen_perm.append(rows)
        gen_sign.append(m[rows, cols].astype(np.int8))
    perms = np.empty((dim, dim), dtype=np.int64)
    signs = np.empty((dim, dim), dtype=np.int8)
    perms[0] = cols
    signs[0] = 1
    for mask in range(1, dim):
        j = (mask & -mask).bit_length() - 1  # lowest generator in the blade
        rest = mask ^ (1 << j)
        pq, sq = perms[rest], signs[rest]
        # matrix product (gen image) @ (rest image) in permutation form
        perms[mask] = gen_perm[j][pq]
        signs[mask] = gen_sign[j][pq] * sq
    perms.setflags(write=False)
    signs.setflags(write=False)
    return perms, signs


def represent(u: Element) -> RepMatrix:
    """Image of u: the coefficient-weighted sum of all blade images."""
    sig = u.sig
    dim = sig.dim
    perms, signs = _blade_tables(sig)
    if isinstance(u.coeffs[0], float):
        m = np.zeros((dim, dim))
        cols = np.arange(dim)
        for a, ua in enumerate(u.coeffs):
            if ua:
                m[perms[a], cols] += signs[a] * ua
        return RepMatrix(dim, tuple(map(tuple, m.tolist())))
    zero_s = u.coeffs[0] * 0
    grid = [[zero_s] * dim for _ in range(dim)]
    for a, ua in enumerate(u.coeffs):
        if not ua:
            continue
        pa = perms[a].tolist()
        sa = signs[a].tolist()
        nua = -ua
        for c in range(dim):
            r = pa[c]
            grid[r][c] = grid[r][c] + (ua if sa[c] > 0 else nua)
    return RepMatrix(dim, tuple(tuple(row) for row in grid))


# ---------------------------------------------------------------------------
# exact fraction-free elimination
# ---------------------------------------------------------------------------


def _exact_div(a: int, b: int) -> int:
    quot, rem = divmod(a, b)
    if rem:
        raise ArithmeticError("fraction-free elimination produced a non-integer")
    return quot


def _int_rows(rows) -> tuple[list[list[int]], object]:
    """Clear denominators row by row; returns (integer rows, product of scales)."""
    out = []
    total = 1
    for row in rows:
        dens = [int(x.denominator) for x in row]
        lcm = math.lcm(*dens)
        out.append([int(x.numerator) * (lcm // int(x.denominator)) for x in row])
        total *= lcm
    return out, total


def _bareiss_echelon(m: list[list[int]]) -> tuple[list[int], int]:
    """In-place fraction-free row echelon; returns (pivot columns, swap sign)."""
    n_rows = len(m)
    n_cols = len(m[0])
    piv_cols: list[int] = []
    r = 0
    prev = 1
    sign = 1
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        pivot = m[r][c]
        for i in range(r + 1, n_rows):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, n_cols):
                row_i[j] = _exact_div(pivot * row_i[j] - mic * row_r[j], prev)
        prev = pivot
        piv_cols.append(c)
        r += 1
        if r == n_rows:
            break
    return piv_cols, sign


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def oracle_det(u: Element):
    """det(represent(u)): LU for floats, fraction-free elimination exactly."""
    rep = represent(u)
    if isinstance(u.coeffs[0], float):
        return float(np.linalg.det(rep.to_numpy()))
    be = backend_of(u.coeffs[0])
    rows, scale_total = _int_rows(rep.rows)
    piv_cols, sign = _bareiss_echelon(rows)
    if len(piv_cols) < rep.dim:
        return be.zero
    return be.cast(sign * rows[rep.dim - 1][rep.dim - 1]) / scale_total


def oracle_trace(u: Element):
    """Sum of the diagonal of represent(u)."""
    return represent(u).trace()


def oracle_charpoly(u: Element) -> CharPoly:
    """Characteristic polynomial of represent(u) via the matrix
    Faddeev-LeVerrier recursion; coefficients of det(B - lambda I), degree
    N = 2**n, leading coefficient (-1)**N = +1."""
    rep = represent(u)
    dim = rep.dim
    if isinstance(u.coeffs[0], float):
        a = rep.to_numpy()
        s = float(np.abs(a).max()) or 1.0
        a /= s
        cs = [0.0] * (dim + 1)
        cs[dim] = 1.0
        m = np.zeros_like(a)
        eye = np.eye(dim)
        for k in range(1, dim + 1):
            m = a @ m + cs[dim - k + 1] * eye
            cs[dim - k] = -float(np.einsum("ij,ji->", a, m)) / k
        for k in range(dim):
            cs[k] *= s ** (dim - k)
        return CharPoly(tuple(cs))
    be = backend_of(u.coeffs[0])
    a = [list(row) for row in rep.rows]
    zero_s, one_s = be.zero, be.one
    cs = [zero_s] * (dim + 1)
    cs[dim] = one_s
    m = [[zero_s] * dim for _ in range(dim)]
    for k in range(1, dim + 1):
        ck = cs[dim - k + 1]
        nxt = []
        for i in range(dim):
            ai = a[i]
            row = []
            for j in range(dim):
                acc = sum(ai[t] * m[t][j] for t in range(dim) if ai[t])
                if i == j:
                    acc = acc + ck
                row.append(acc)
            nxt.append(row)
        m = nxt
        tr = sum(
            a[i][j] * m[j][i] for i in range(dim) for j in range(dim) if a[i][j]
        )
        cs[dim - k] = -be.cast(tr) / k
    return CharPoly(tuple(cs))


# ---------------------------------------------------------------------------
# kernel witness
# ---------------------------------------------------------------------------


def _kernel_vector_exact(rep: RepMatrix, be):
    rows, _ = _int_rows(rep.rows)
    piv_cols, _ = _bareiss_echelon(rows)
    pivot_set = set(piv_cols)
    free = next((c for c in range(rep.dim) if c not in pivot_set), None)
    if free is None:
        return None
    v = [be.zero] * rep.dim
    v[free] = be.one
    for r in range(len(piv_cols) - 1, -1, -1):
        c = piv_cols[r]
        acc = sum(rows[r][j] * v[j] for j in range(c + 1, rep.dim) if v[j])
        v[c] = -be.cast(acc) / rows[r][c]
    # scale to a primitive integer vector with positive leading entry
    lcm = math.lcm(*(int(x.denominator) for x in v))
    ints = [int(x.numerator) * (lcm // int(x.denominator)) for x in v]
    g = math.gcd(*ints)
    if g:
        ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return [be.cast(x) for x in ints]


def _kernel_vector_float(rep: RepMatrix):
    m = rep.to_numpy()
    dim = rep.dim
    tol = 1e-9 * (float(np.abs(m).max()) or 1.0)
    piv_cols: list[int] = []
    r = 0
    for c in range(dim):
        i = r + int(np.abs(m[r:, c]).argmax())
        if abs(m[i, c]) <= tol:
            continue
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] /= m[r, c]
        for t in range(dim):
            if t != r and m[t, c]:
                m[t] -= m[t, c] * m[r]
        piv_cols.append(c)
        r += 1
        if r == dim:
            break
    pivot_set = set(piv_cols)
    free = next((c for c in range(dim) if c not in pivot_set), None)
    if free is None:
        return None
    v = np.zeros(dim)
    v[free] = 1.0
    for row, c in enumerate(piv_cols):
        v[c] = -m[row, free]
    return v.tolist()


def kernel_witness(u: Element, rel_tol: float = 1e-9):
    """A nonzero V with u*V = 0, or None when represent(u) is nonsingular.

    The representation is the regular one: column m of represent(u) holds
    the coefficients of u times blade m, so a kernel vector of the matrix
    read back as coefficients annihilates u inside the algebra.  Extraction
    is row reduction with partial pivoting; the first free column generates
    the witness.
    """
    d = oracle_det(u)
    if not is_singular_det(d, u, rel_tol):
        return None
    rep = represent(u)
    if isinstance(u.coeffs[0], float):
        v = _kernel_vector_float(rep)
    else:
        v = _kernel_vector_exact(rep, backend_of(u.coeffs[0]))
    if v is None:
        return None
    return Element(u.sig, tuple(v))
