"""Classification of non-invertible elements and zero-divisor witnesses.

A nonzero element of DL(p,q) is a zero divisor exactly when its determinant
vanishes.  The witness construction follows the generator-elimination
procedure: multiply the element by conjugates until some partial product
dies; the cofactor of that product (everything except the original element)
is the witness candidate.  Candidates are never trusted from construction:
each is checked nonzero and annihilating by direct multiplication, with the
matrix kernel as a fallback when the greedy path only produces zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import Element, conjugate, mul, one
from .char_ops import det_recursive, is_singular_det
from .matrix_rep import kernel_witness
from .scalars import backend_of, scalar_json


class ZeroInputError(ValueError):
    """The zero element was passed in; it is trivially annihilated by one."""

    def __init__(self, trivial_witness: Element):
        super().__init__("zero element: every nonzero element annihilates it")
        self.trivial_witness = trivial_witness


@dataclass(frozen=True)
class WitnessReport:
    """Outcome of classification: a unit, or a verified annihilator.

    ``witness_path`` lists the conjugation masks whose conjugates were
    multiplied to build the witness (empty for the kernel fallback).
    """

    is_unit: bool
    det: object
    witness: Optional[Element]
    witness_path: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "is_unit": self.is_unit,
            "det": scalar_json(self.det),
            "witness": None
            if self.witness is None
            else [scalar_json(c) for c in self.witness.coeffs],
            "witness_path": list(self.witness_path),
        }


def is_zero_divisor(u: Element, rel_tol: float = 1e-9) -> bool:
    """Whether nonzero u annihilates some nonzero element (det(u) = 0)."""
    if u.is_zero():
        raise ZeroInputError(one(u.sig, backend_of(u.coeffs[0])))
    return is_singular_det(det_recursive(u), u, rel_tol)


def classify(u: Element, rel_tol: float = 1e-9) -> WitnessReport:
    """Classify u as a unit or produce a verified zero-divisor witness."""
    sig = u.sig
    be = backend_of(u.coeffs[0])
    if u.is_zero():
        raise ZeroInputError(one(sig, be))
    det = det_recursive(u)
    if not is_singular_det(det, u, rel_tol):
        return WitnessReport(True, det, None, ())

    exact = be.exact
    norm_u = float(u.max_norm())

    def nonzero(v: Element, v_scale: float) -> bool:
        if exact:
            return not v.is_zero()
        return float(v.max_norm()) > 1e-12 * v_scale

    def annihilates(v: Element) -> bool:
        prod = mul(u, v)
        if exact:
            return prod.is_zero()
        return float(prod.max_norm()) <= 1e-8 * norm_u * float(v.max_norm())

    # Greedy elimination: w is u times the conjugates accumulated so far
    # (masks in acc_masks), t the same product without the leading u.
    w = u
    t = one(sig, be)
    acc_masks = [0]
    t_masks: list[int] = []
    w_scale = norm_u
    t_scale = 1.0
    for level in range(1, sig.n + 1):
        if not nonzero(w, w_scale):
            # the partial product itself died: its cofactor is a witness
            if nonzero(t, t_scale) and annihilates(t):
                return WitnessReport(False, det, t, tuple(sorted(t_masks)))
            break
        for j in range(level, sig.n + 1):
            mj = 1 << (j - 1)
            wj = conjugate(w, mj)
            cand = wj if not t_masks else mul(t, wj)
            if nonzero(cand, t_scale * w_scale) and annihilates(cand):
                path = t_masks + [m ^ mj for m in acc_masks]
                return WitnessReport(False, det, cand, tuple(sorted(path)))
        m0 = 1 << (level - 1)
        w0 = conjugate(w, m0)
        t = mul(t, w0)
        w = mul(w, w0)
        t_masks = t_masks + [m ^ m0 for m in acc_masks]
        acc_masks = acc_masks + [m ^ m0 for m in acc_masks]
        t_scale *= w_scale
        w_scale *= w_scale

    fallback = kernel_witness(u, rel_tol)
    if fallback is not None and annihilates(fallback):
        return WitnessReport(False, det, fallback, ())
    raise RuntimeError(
        "no zero-divisor witness found for a singular element; "
        "with the float backend this points at tolerance trouble"
    )
