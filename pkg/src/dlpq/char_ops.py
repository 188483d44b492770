"""Determinant, trace, characteristic polynomial, adjoint and inverse of
DL(p,q) elements, computed entirely inside the algebra.

Everything here rests on the conjugation involutions: the determinant of U
is the product of all 2**n conjugates of U, the trace is N times the
scalar part (equivalently the sum of all conjugates), the characteristic
polynomial is the expansion of the product of (conjugate - lambda) factors,
and the adjoint -- the product of the 2**n - 1 nontrivial conjugates --
yields the inverse as adjoint/determinant.  A matrix-free
Faddeev-LeVerrier recursion reproduces all of these as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .algebra import (
    Element,
    Signature,
    _conj_coeffs,
    _mul_coeffs,
    conjugate,
    mul,
    one,
    scalar_part,
    scale,
    sub,
)
from .scalars import Scalar, backend_of, cast_like, scalar_json, scalar_str


class GradeLeakError(ArithmeticError):
    """A conjugate product failed to collapse to grade 0.

    Mathematically impossible; raised only when an implementation bug (or a
    float tolerance far out of range) corrupts a product of all conjugates.
    """


class NotInvertibleError(ArithmeticError):
    """Element has zero (or numerically negligible) determinant."""

    def __init__(self, det: Scalar):
        super().__init__(f"element is not invertible (determinant = {scalar_str(det)})")
        self.det = det


@dataclass(frozen=True)
class CharPoly:
    """Characteristic polynomial coefficients c_0 .. c_N, ascending powers.

    For n >= 1 the degree N = 2**n is even, the leading coefficient is 1,
    c_0 is the determinant and c_{N-1} is minus the trace.
    """

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, v: Element) -> Element:
        """Horner evaluation of the polynomial at an algebra element."""
        be = backend_of(v.coeffs[0])
        acc = scale(one(v.sig, be), self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = mul(acc, v)
            acc = _add_scalar(acc, cast_like(acc.coeffs[0], c))
        return acc

    def isclose(self, other: "CharPoly", rel_tol: float = 1e-9) -> bool:
        if len(self.coeffs) != len(other.coeffs):
            return False
        if self.coeffs == other.coeffs:
            return True
        scale_ = max(
            max(abs(c) for c in self.coeffs), max(abs(c) for c in other.coeffs)
        )
        return all(
            abs(a - b) <= rel_tol * scale_
            for a, b in zip(self.coeffs, other.coeffs)
        )

    def to_json(self) -> list:
        return [scalar_json(c) for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = scalar_str(abs(c))
            if k == 0:
                body = mag
            else:
                lam = "λ" if k == 1 else f"λ^{k}"
                body = lam if mag == "1" else f"{mag}*{lam}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms) if terms else "0"


class CharPolyFL(NamedTuple):
    """Output of the in-algebra Faddeev-LeVerrier recursion."""

    charpoly: CharPoly
    adjoint: Element
    det: Scalar


def _add_scalar(u: Element, s: Scalar) -> Element:
    return Element(u.sig, (u.coeffs[0] + s,) + u.coeffs[1:])


def _sub_scalar(u: Element, s: Scalar) -> Element:
    return Element(u.sig, (u.coeffs[0] - s,) + u.coeffs[1:])


def _pow_or_inf(base: float, exp: int) -> float:
    try:
        return base**exp
    except OverflowError:
        return math.inf


def is_singular_det(det: Scalar, u: Element, rel_tol: float = 1e-9) -> bool:
    """Whether a determinant value counts as zero for ``u``.

    Exact scalars compare against zero; floats use the scale-aware cutoff
    ``|det| <= rel_tol * max_norm(u)**N``.
    """
    if not isinstance(det, float):
        return det == 0
    return abs(det) <= rel_tol * _pow_or_inf(float(u.max_norm()), u.sig.dim)


# Float-backend leak threshold, relative to the largest intermediate
# coefficient.  Roundoff residues stay orders of magnitude below this
# (observed <= ~1e-4 of the running scale at n = 6); a sign-rule bug
# leaves residue at the full coefficient scale.
LEAK_TOL = 1e-2


def _require_scalar(u: Element, leak_scale, leak_tol: float, what: str) -> Scalar:
    residue = [c for c in u.coeffs[1:] if c]
    if residue:
        if not isinstance(u.coeffs[0], float):
            raise GradeLeakError(f"{what}: exact non-scalar residue {residue[:3]}")
        worst = max(abs(c) for c in residue)
        if worst > leak_tol * leak_scale:
            raise GradeLeakError(
                f"{what}: non-scalar residue {worst:g} exceeds {leak_tol:g} * {leak_scale:g}"
            )
    return u.coeffs[0]


# ---------------------------------------------------------------------------
# trace
# ---------------------------------------------------------------------------


def trace(u: Element) -> Scalar:
    """N times the scalar part, N = 2**n."""
    return u.sig.dim * scalar_part(u)


def trace_by_conjugates(u: Element) -> Element:
    """Sum of all 2**n conjugates; lands in grade 0 and equals trace(u)*1."""
    acc = list(u.coeffs)
    for mask in range(1, u.sig.dim):
        for m, c in enumerate(_conj_coeffs(u.coeffs, mask)):
            acc[m] += c
    return Element(u.sig, tuple(acc))


# ---------------------------------------------------------------------------
# determinant
# ---------------------------------------------------------------------------


def det_full_product(u: Element, leak_tol: float = LEAK_TOL) -> Scalar:
    """Product of all 2**n conjugates of u, taken in increasing mask order.

    The product is necessarily grade-0; its scalar part is the determinant.
    The float-backend leak check is scaled by the largest intermediate
    coefficient: roundoff inherits the magnitude of the partial products,
    not the product of the factor norms.
    """
    sig = u.sig
    prod = list(u.coeffs)
    leak_scale = float(u.max_norm())
    for mask in range(1, sig.dim):
        prod = _mul_coeffs(prod, _conj_coeffs(u.coeffs, mask), sig.n, sig.qmask)
        if isinstance(prod[0], float):
            leak_scale = max(leak_scale, max(abs(c) for c in prod))
    return _require_scalar(Element(sig, tuple(prod)), leak_scale, leak_tol, "det_full_product")


def det_recursive(u: Element) -> Scalar:
    """Determinant by repeated generator elimination.

    Multiplying by the top-generator conjugate removes e_n from the element;
    the survivor lives in the algebra on n-1 generators, where the same
    determinant is taken.  Descending from e_n to e_1 leaves a single scalar.
    """
    coeffs = list(u.coeffs)
    p, q = u.sig.p, u.sig.q
    exact = not isinstance(coeffs[0], float)
    n = p + q
    while n:
        half = 1 << (n - 1)
        qmask = ((1 << q) - 1) << p
        prod = _mul_coeffs(coeffs, _conj_coeffs(coeffs, half), n, qmask)
        if exact:
            assert not any(prod[half:]), "generator elimination left residue"
        coeffs = prod[:half]
        if q:
            q -= 1
        else:
            p -= 1
        n -= 1
    return coeffs[0]


# ---------------------------------------------------------------------------
# adjoint and inverse
# ---------------------------------------------------------------------------


def _adjoint_coeffs(coeffs: list, p: int, q: int) -> list:
    # Product of all conjugates with nonzero mask, grouped recursively:
    # with W = U * U^(top), the masks not containing the top generator give
    # Adj(W) over the remaining generators, and a final factor U^(top)
    # collects the rest.  Same multiset of factors, far fewer multiplies.
    n = p + q
    if n == 0:
        return [cast_like(coeffs[0], 1)]
    half = 1 << (n - 1)
    qmask = ((1 << q) - 1) << p
    cj = _conj_coeffs(coeffs, half)
    w = _mul_coeffs(coeffs, cj, n, qmask)[:half]
    p2, q2 = (p, q - 1) if q else (p - 1, 0)
    inner = _adjoint_coeffs(w, p2, q2)
    zero_s = coeffs[0] * 0
    return _mul_coeffs(inner + [zero_s] * half, cj, n, qmask)


def adjoint(u: Element) -> Element:
    """Product of the 2**n - 1 conjugates of u with nonzero mask.

    Satisfies ``u * adjoint(u) == det(u) * 1``.
    """
    return Element(u.sig, tuple(_adjoint_coeffs(list(u.coeffs), u.sig.p, u.sig.q)))


def inverse(u: Element, rel_tol: float = 1e-9) -> Element:
    """``adjoint(u) / det(u)``; raises NotInvertibleError on zero determinant."""
    d = det_recursive(u)
    if is_singular_det(d, u, rel_tol):
        raise NotInvertibleError(d)
    return scale(adjoint(u), 1 / d)


def inverse_of_conjugate_check(u: Element, mask: int, rel_tol: float = 1e-9) -> bool:
    """Whether inverse(conjugate(u)) equals conjugate(inverse(u)) for the mask."""
    lhs = inverse(conjugate(u, mask), rel_tol)
    rhs = conjugate(inverse(u, rel_tol), mask)
    if not isinstance(lhs.coeffs[0], float):
        return lhs.coeffs == rhs.coeffs
    return lhs.isclose(rhs, rel_tol)


# ---------------------------------------------------------------------------
# characteristic polynomial
# ---------------------------------------------------------------------------


def charpoly_symmetric(u: Element, leak_tol: float = LEAK_TOL) -> CharPoly:
    """Coefficients as signed elementary symmetric functions of the conjugates.

    Expands the product of (conjugate - lambda) over all 2**n conjugates one
    factor at a time, carrying polynomial coefficients that are themselves
    algebra elements; each final coefficient collapses to grade 0.
    """
    sig = u.sig
    be = backend_of(u.coeffs[0])
    poly: list[Element] = [one(sig, be)]
    leak_scale = 1.0
    for mask in range(sig.dim):
        f = conjugate(u, mask)
        nxt = [mul(poly[0], f)]
        for t in range(1, len(poly)):
            nxt.append(sub(mul(poly[t], f), poly[t - 1]))
        nxt.append(-poly[-1])
        poly = nxt
        if not be.exact:
            leak_scale = max(leak_scale, max(float(p.max_norm()) for p in poly))
    coeffs = tuple(
        _require_scalar(pk, leak_scale, leak_tol, f"charpoly coefficient {k}")
        for k, pk in enumerate(poly)
    )
    return CharPoly(coeffs)


# The plain float recursion loses roughly a decimal digit per few dimensions
# to cancellation in U_(k) - c_k (measured: fine through 2**4, ~1e2 relative
# at 2**5, hopeless at 2**6, for any input distribution).  Past this cutoff
# the float backend runs the recursion in software floats wide enough to
# absorb the blow-up and rounds the outputs back to binary64.
_FL_PLAIN_FLOAT_MAX_N = 4


def charpoly_fl(u: Element) -> CharPolyFL:
    """Matrix-free Faddeev-LeVerrier recursion inside the algebra.

    Iterates U_(1) = U, U_(k+1) = U*(U_(k) - c_k) with c_k = (N/k) times the
    scalar part of U_(k).  Then det = -c_N, the adjoint is c_{N-1} - U_(N-1),
    and the characteristic polynomial is lambda**N - sum c_k lambda**(N-k).
    """
    sig = u.sig
    dim = sig.dim
    be = backend_of(u.coeffs[0])
    if not be.exact and sig.n > _FL_PLAIN_FLOAT_MAX_N:
        return _charpoly_fl_widened(u)

    cs: list = [None] * (dim + 1)  # the recursion's c_1 .. c_N
    u_k = u
    u_prev = u
    for k in range(1, dim + 1):
        if be.exact:
            ck = be.cast(f"{dim}/{k}") * scalar_part(u_k)
        else:
            ck = (dim / k) * scalar_part(u_k)
        cs[k] = ck
        if k == dim - 1:
            u_prev = u_k
        if k < dim:
            u_k = mul(u, _sub_scalar(u_k, ck))

    det_v = -cs[dim]
    adj_v = -_sub_scalar(u_prev, cs[dim - 1])
    # psi_k = -c_{N-k} in the recursion's numbering; the leading term is +1.
    psi = tuple(-cs[dim - k] for k in range(dim)) + (be.one,)
    return CharPolyFL(CharPoly(psi), adj_v, det_v)


def _charpoly_fl_widened(u: Element) -> CharPolyFL:
    import gmpy2

    from .algebra import _parity, _xor_rows

    sig = u.sig
    dim = sig.dim
    qmask = sig.qmask
    ctx = gmpy2.context()
    # 1.5 bits per dimension absorbs the measured cancellation depth
    # (about 140 bits at dim 64) with wide margin
    ctx.precision = (3 * dim) // 2 + 96
    saved = gmpy2.get_context()
    gmpy2.set_context(ctx)
    try:
        work = [gmpy2.mpfr(c) for c in u.coeffs]
        par = _parity(dim)
        rows = _xor_rows(dim)
        neg_work = [-x for x in work]
        # every multiplication in the recursion has `work` as one factor:
        # pre-sign it once per distinct minus-generator overlap
        signed = {}
        for i in range(dim):
            iq = i & qmask
            if iq not in signed:
                signed[iq] = [
                    neg_work[j] if par[iq & j] else wj for j, wj in enumerate(work)
                ]
        zero_hp = work[0] * 0
        sel_by_i = [signed[i & qmask] for i in range(dim)]

        cs = [None] * (dim + 1)
        u_k = list(work)
        u_prev = u_k
        ratio = gmpy2.mpfr(dim)
        for k in range(1, dim + 1):
            ck = ratio / k * u_k[0]
            cs[k] = ck
            if k == dim - 1:
                u_prev = list(u_k)
            if k < dim:
                u_k[0] = u_k[0] - ck
                out = [zero_hp] * dim
                for i, ai in enumerate(u_k):
                    if ai:
                        for t, bj in zip(rows[i], sel_by_i[i]):
                            out[t] += ai * bj
                u_k = out
        det_v = float(-cs[dim])
        c_last = cs[dim - 1]
        adj_v = Element(
            sig,
            (float(c_last - u_prev[0]),) + tuple(float(-c) for c in u_prev[1:]),
        )
        psi = tuple(float(-cs[dim - k]) for k in range(dim)) + (1.0,)
        return CharPolyFL(CharPoly(psi), adj_v, det_v)
    finally:
        gmpy2.set_context(saved)
