"""Core arithmetic of the commutative Clifford algebra DL(p,q).

DL(p,q) is the commutative, associative, unital real algebra on generators
``e_1 .. e_n`` (``n = p + q``) with ``e_i**2 = +1`` for ``i <= p`` and
``e_i**2 = -1`` for ``i > p``, and ``e_i e_j = e_j e_i`` throughout.

An element is stored as ``2**n`` coefficients indexed by basis-blade
bitmask: bit ``i-1`` of the index is set exactly when generator ``e_i``
appears in the blade.  With that layout a product of blades lands on the
XOR of their masks, the sign is a popcount of the shared minus-generators,
and each of the ``2**n`` conjugation involutions is a per-coefficient sign
flip.

All values here are immutable; every operation returns a fresh Element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .scalars import FLOAT64, Scalar, ScalarBackend, cast_like

N_MAX = 16  # hard cap on generator count; multiplication is O(4**n)


class SignatureMismatchError(ValueError):
    """Raised when combining elements that live in different algebras."""


@dataclass(frozen=True)
class Signature:
    """The pair (p, q): counts of generators squaring to +1 and to -1."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise ValueError(f"signature counts must be non-negative, got {self}")
        if not 1 <= self.p + self.q <= N_MAX:
            raise ValueError(
                f"need 1 <= p+q <= {N_MAX}, got p+q = {self.p + self.q}"
            )

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        """Number of basis blades, 2**n."""
        return 1 << self.n

    @property
    def qmask(self) -> int:
        """Bitmask of the generators squaring to -1 (bits p .. n-1)."""
        return ((1 << self.q) - 1) << self.p

    def square(self, i: int) -> int:
        """Square of generator e_i (i is 1-based): +1 or -1."""
        if not 1 <= i <= self.n:
            raise ValueError(f"generator index {i} outside 1..{self.n}")
        return 1 if i <= self.p else -1

    def __str__(self) -> str:
        return f"DL({self.p},{self.q})"


@dataclass(frozen=True)
class Element:
    """An element of DL(p,q): 2**n scalar coefficients in blade-mask order."""

    sig: Signature
    coeffs: tuple

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.sig.dim:
            raise ValueError(
                f"expected {self.sig.dim} coefficients for {self.sig}, "
                f"got {len(self.coeffs)}"
            )

    # -- arithmetic operators ------------------------------------------------

    def __add__(self, other: "Element") -> "Element":
        return add(self, other)

    def __sub__(self, other: "Element") -> "Element":
        return sub(self, other)

    def __neg__(self) -> "Element":
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    # -- inspection ----------------------------------------------------------

    def max_norm(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def isclose(self, other: "Element", rel_tol: float = 1e-9) -> bool:
        """Max-norm comparison at a relative tolerance (exact types compare exactly)."""
        if self.sig != other.sig:
            return False
        if self.coeffs == other.coeffs:
            return True
        scale_ = max(self.max_norm(), other.max_norm())
        diff = max(abs(a - b) for a, b in zip(self.coeffs, other.coeffs))
        return diff <= rel_tol * scale_

    def __str__(self) -> str:
        from .expr import format_element

        return format_element(self)


# ---------------------------------------------------------------------------
# multiplication kernels
# ---------------------------------------------------------------------------

_PARITY: dict[int, bytearray] = {}


def _parity(n_bits_values: int) -> bytearray:
    """popcount parity lookup for 0 .. n_bits_values-1."""
    table = _PARITY.get(n_bits_values)
    if table is None:
        table = bytearray(n_bits_values)
        for i in range(1, n_bits_values):
            table[i] = table[i >> 1] ^ (i & 1)
        _PARITY[n_bits_values] = table
    return table


_MUL_TABLES: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}
_MUL_TABLE_MAX_CELLS = 1 << 22  # beyond this the per-row float path is used


def _mul_tables(n: int, qmask: int) -> tuple[np.ndarray, np.ndarray]:
    key = (n, qmask)
    tables = _MUL_TABLES.get(key)
    if tables is None:
        dim = 1 << n
        jj = np.arange(dim)
        ix = (jj[:, None] ^ jj[None, :]).ravel()
        par = np.frombuffer(bytes(_parity(dim)), dtype=np.uint8)
        sgn = 1.0 - 2.0 * par[(jj[:, None] & qmask) & jj[None, :]]
        tables = (ix, sgn)
        if len(_MUL_TABLES) > 16:
            _MUL_TABLES.clear()
        _MUL_TABLES[key] = tables
    return tables


def _mul_coeffs_float(ca: Sequence[float], cb: Sequence[float], n: int, qmask: int) -> list:
    dim = 1 << n
    a = np.asarray(ca, dtype=np.float64)
    b = np.asarray(cb, dtype=np.float64)
    if dim * dim <= _MUL_TABLE_MAX_CELLS:
        ix, sgn = _mul_tables(n, qmask)
        w = (a[:, None] * b[None, :]) * sgn
        return np.bincount(ix, weights=w.ravel(), minlength=dim).tolist()
    # large algebras: row-at-a-time to keep memory O(2**n)
    out = np.zeros(dim)
    jj = np.arange(dim)
    par = np.frombuffer(bytes(_parity(dim)), dtype=np.uint8)
    for i in range(dim):
        ai = a[i]
        if ai == 0.0:
            continue
        sgn_row = 1.0 - 2.0 * par[(i & qmask) & jj]
        out[i ^ jj] += (ai * sgn_row) * b
    return out.tolist()


_XOR_ROWS: dict[int, list] = {}


def _xor_rows(dim: int) -> list:
    rows = _XOR_ROWS.get(dim)
    if rows is None:
        idx = range(dim)
        rows = [[i ^ j for j in idx] for i in idx]
        if dim <= 256:
            _XOR_ROWS[dim] = rows
    return rows


def _mul_coeffs_generic(ca: Sequence, cb: Sequence, qmask: int) -> list:
    dim = len(ca)
    par = _parity(dim)
    zero = ca[0] * 0
    out = [zero] * dim
    rows = _xor_rows(dim)
    # pre-signed copies of cb, one per distinct minus-generator overlap,
    # so the inner loop is a bare multiply-accumulate
    neg_b = None
    signed: dict[int, list] = {}
    for i, ai in enumerate(ca):
        if not ai:
            continue
        iq = i & qmask
        sel = signed.get(iq)
        if sel is None:
            if iq == 0:
                sel = cb
            else:
                if neg_b is None:
                    neg_b = [-x for x in cb]
                sel = [neg_b[j] if par[iq & j] else bj for j, bj in enumerate(cb)]
            signed[iq] = sel
        for k, bj in zip(rows[i], sel):
            if bj:
                out[k] += ai * bj
    return out


def _mul_coeffs(ca: Sequence, cb: Sequence, n: int, qmask: int) -> list:
    if type(ca[0]) is float:
        return _mul_coeffs_float(ca, cb, n, qmask)
    return _mul_coeffs_generic(ca, cb, qmask)


def _conj_coeffs(coeffs: Sequence, mask: int) -> list:
    par = _parity(len(coeffs))
    return [-c if par[m & mask] else c for m, c in enumerate(coeffs)]


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def element(sig: Signature, values: Iterable, backend: ScalarBackend = FLOAT64) -> Element:
    """Build an element from arbitrary numeric values, cast into ``backend``."""
    coeffs = tuple(backend.cast(v) for v in values)
    if len(coeffs) != sig.dim:
        raise ValueError(f"expected {sig.dim} coefficients for {sig}, got {len(coeffs)}")
    return Element(sig, coeffs)


def zero(sig: Signature, backend: ScalarBackend = FLOAT64) -> Element:
    return Element(sig, (backend.zero,) * sig.dim)


def one(sig: Signature, backend: ScalarBackend = FLOAT64) -> Element:
    z, o = backend.zero, backend.one
    return Element(sig, (o,) + (z,) * (sig.dim - 1))


def basis_blade(sig: Signature, subset_mask: int, backend: ScalarBackend = FLOAT64) -> Element:
    """The basis blade whose generator set is the given bitmask."""
    if not 0 <= subset_mask < sig.dim:
        raise ValueError(f"blade mask {subset_mask} outside 0..{sig.dim - 1}")
    z, o = backend.zero, backend.one
    coeffs = [z] * sig.dim
    coeffs[subset_mask] = o
    return Element(sig, tuple(coeffs))


def scalar_element(sig: Signature, value, backend: ScalarBackend = FLOAT64) -> Element:
    return scale(one(sig, backend), value)


# ---------------------------------------------------------------------------
# linear operations
# ---------------------------------------------------------------------------


def _check_sigs(a: Element, b: Element) -> None:
    if a.sig != b.sig:
        raise SignatureMismatchError(f"cannot combine {a.sig} and {b.sig} elements")


def add(a: Element, b: Element) -> Element:
    _check_sigs(a, b)
    return Element(a.sig, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def sub(a: Element, b: Element) -> Element:
    _check_sigs(a, b)
    return Element(a.sig, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: Element) -> Element:
    return Element(a.sig, tuple(-x for x in a.coeffs))


def scale(a: Element, s) -> Element:
    s = cast_like(a.coeffs[0], s)
    return Element(a.sig, tuple(x * s for x in a.coeffs))


def mul(a: Element, b: Element) -> Element:
    """Algebra product: XOR convolution of coefficients with the sign rule.

    The coefficient landing on blade ``A xor B`` picks up a factor
    ``(-1)**popcount(A & B & qmask)`` -- one -1 per shared minus-generator.
    """
    _check_sigs(a, b)
    sig = a.sig
    return Element(sig, tuple(_mul_coeffs(a.coeffs, b.coeffs, sig.n, sig.qmask)))


# ---------------------------------------------------------------------------
# grades and conjugation
# ---------------------------------------------------------------------------


def grade_project(u: Element, k: int) -> Element:
    """Keep only the blades with exactly k generators."""
    if not 0 <= k <= u.sig.n:
        raise ValueError(f"grade {k} outside 0..{u.sig.n}")
    zero_s = u.coeffs[0] * 0
    coeffs = tuple(
        c if m.bit_count() == k else zero_s for m, c in enumerate(u.coeffs)
    )
    return Element(u.sig, coeffs)


def scalar_part(u: Element) -> Scalar:
    return u.coeffs[0]


def conjugate(u: Element, mask: int) -> Element:
    """Apply the involution negating every generator named in ``mask``.

    The coefficient at blade ``m`` flips sign iff ``m & mask`` has odd
    popcount.  Masks compose by XOR; mask 0 is the identity.
    """
    if not 0 <= mask < u.sig.dim:
        raise ValueError(f"conjugation mask {mask} outside 0..{u.sig.dim - 1}")
    return Element(u.sig, tuple(_conj_coeffs(u.coeffs, mask)))


def compose_masks(*masks: int) -> int:
    """Composition of conjugations in mask form (the group law is XOR)."""
    out = 0
    for m in masks:
        out ^= m
    return out


def mask_from_indices(indices: Iterable[int]) -> int:
    """Bitmask for a set of 1-based generator indices."""
    out = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"generator index {i} must be >= 1")
        out |= 1 << (i - 1)
    return out


def indices_from_mask(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def eliminate_generator(u: Element, k: int) -> Element:
    """``u * conjugate(u, {k})``: the product carries no blade containing e_k.

    Writing ``u = x + y*e_k`` with x, y free of e_k, the product equals
    ``x**2 - e_k**2 * y**2``.
    """
    if not 1 <= k <= u.sig.n:
        raise ValueError(f"generator index {k} outside 1..{u.sig.n}")
    return mul(u, conjugate(u, 1 << (k - 1)))
