from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dlpq import (
    Element,
    Signature,
    SignatureMismatchError,
    add,
    basis_blade,
    compose_masks,
    conjugate,
    element,
    eliminate_generator,
    grade_project,
    indices_from_mask,
    mask_from_indices,
    mul,
    neg,
    one,
    scalar_part,
    scale,
    sub,
    zero,
)
from dlpq.scalars import FLOAT64, RATIONAL

from conftest import all_signatures, rand_element

BACKENDS = (FLOAT64, RATIONAL)


def test_signature_basics():
    sig = Signature(1, 2)
    assert sig.n == 3 and sig.dim == 8
    assert sig.square(1) == 1 and sig.square(2) == -1 and sig.square(3) == -1
    assert sig.qmask == 0b110
    assert str(sig) == "DL(1,2)"


def test_signature_validation():
    with pytest.raises(ValueError):
        Signature(0, 0)
    with pytest.raises(ValueError):
        Signature(-1, 2)
    with pytest.raises(ValueError):
        Signature(9, 8)  # n > 16


def test_zero_one_basis():
    assert zero(Signature(1, 1)).coeffs == (0.0, 0.0, 0.0, 0.0)
    assert zero(Signature(0, 1)).coeffs == (0.0, 0.0)
    assert len(zero(Signature(2, 0)).coeffs) == 4
    assert one(Signature(1, 1)).coeffs == (1.0, 0.0, 0.0, 0.0)
    assert one(Signature(0, 2)).coeffs == (1.0, 0.0, 0.0, 0.0)
    s = Signature(1, 1)
    assert basis_blade(s, 0b01).coeffs == (0.0, 1.0, 0.0, 0.0)
    assert basis_blade(s, 0b11).coeffs == (0.0, 0.0, 0.0, 1.0)
    assert basis_blade(Signature(0, 1), 0b0).coeffs == (1.0, 0.0)
    with pytest.raises(ValueError):
        basis_blade(s, 4)


def test_one_is_identity(rng):
    for sig in all_signatures(4):
        for be in BACKENDS:
            u = rand_element(rng, sig, be)
            assert mul(one(sig, be), u) == u
            assert mul(u, one(sig, be)) == u


def test_linear_ops():
    s = Signature(1, 0)
    a = element(s, [1, 1], RATIONAL)
    b = element(s, [2, -1], RATIONAL)
    assert add(a, b) == element(s, [3, 0], RATIONAL)
    assert scale(basis_blade(s, 1, RATIONAL), 0) == zero(s, RATIONAL)
    assert sub(a, a) == zero(s, RATIONAL)
    assert neg(a).coeffs == element(s, [-1, -1], RATIONAL).coeffs
    assert (a - b).coeffs == element(s, [-1, 2], RATIONAL).coeffs
    assert (3 * a).coeffs == element(s, [3, 3], RATIONAL).coeffs


def test_signature_mismatch():
    a = one(Signature(1, 0))
    b = one(Signature(0, 1))
    with pytest.raises(SignatureMismatchError):
        add(a, b)
    with pytest.raises(SignatureMismatchError):
        mul(a, b)


def test_mul_examples():
    # e12 * e2 = -e1 when e2 squares to -1
    s = Signature(0, 2)
    assert mul(basis_blade(s, 0b11, RATIONAL), basis_blade(s, 0b10, RATIONAL)) == neg(
        basis_blade(s, 0b01, RATIONAL)
    )
    # split-complex square: (a + a1 e1)^2 = (a^2 + a1^2) + 2 a a1 e1
    s = Signature(1, 0)
    u = element(s, [3, 5], RATIONAL)
    assert mul(u, u) == element(s, [34, 30], RATIONAL)


def test_grade_project_and_scalar_part():
    s = Signature(1, 1)
    u = element(s, [2, 1, 0, -3], RATIONAL)
    assert grade_project(u, 0) == element(s, [2, 0, 0, 0], RATIONAL)
    assert grade_project(u, 2) == element(s, [0, 0, 0, -3], RATIONAL)
    total = zero(s, RATIONAL)
    for k in range(3):
        total = add(total, grade_project(u, k))
    assert total == u
    with pytest.raises(ValueError):
        grade_project(u, 3)
    assert scalar_part(element(s, [5, 2, 0, 0], RATIONAL)) == 5
    assert scalar_part(basis_blade(s, 0b11, RATIONAL)) == 0
    assert scalar_part(one(s, RATIONAL)) == 1


def test_conjugate_examples():
    s = Signature(0, 1)
    u = element(s, [4, 7], RATIONAL)
    assert conjugate(u, 0b1) == element(s, [4, -7], RATIONAL)
    s2 = Signature(1, 1)
    v = element(s2, [1, 1, 1, 1], RATIONAL)
    assert conjugate(v, 0b11) == element(s2, [1, -1, -1, 1], RATIONAL)
    assert conjugate(v, 0) == v
    with pytest.raises(ValueError):
        conjugate(v, 4)


def test_mask_helpers():
    assert mask_from_indices([1, 3]) == 0b101
    assert indices_from_mask(0b101) == (1, 3)
    assert compose_masks(0b101, 0b110) == 0b011
    with pytest.raises(ValueError):
        mask_from_indices([0])


def test_eliminate_generator_examples():
    s = Signature(1, 0)
    assert eliminate_generator(element(s, [1, 1], RATIONAL), 1) == zero(s, RATIONAL)
    s = Signature(0, 1)
    u = element(s, [3, 4], RATIONAL)
    assert eliminate_generator(u, 1) == element(s, [25, 0], RATIONAL)
    with pytest.raises(ValueError):
        eliminate_generator(u, 2)


def test_eliminate_generator_random(rng):
    for sig in all_signatures(4, min_n=2):
        for be in BACKENDS:
            u = rand_element(rng, sig, be)
            for k in range(1, sig.n + 1):
                w = eliminate_generator(u, k)
                bit = 1 << (k - 1)
                residues = [c for m, c in enumerate(w.coeffs) if m & bit and c]
                if be.exact:
                    assert not residues
                else:
                    limit = 1e-12 * (float(u.max_norm()) ** 2) * sig.dim
                    assert all(abs(c) <= limit for c in residues)


# ---------------------------------------------------------------------------
# algebraic laws (integer coefficients are exact in both backends)
# ---------------------------------------------------------------------------

SMALL_SIGS = [Signature(p, n - p) for n in range(1, 5) for p in range(n + 1)]


@st.composite
def sig_and_elements(draw, count=1):
    sig = draw(st.sampled_from(SMALL_SIGS))
    els = []
    for _ in range(count):
        vals = draw(
            st.lists(
                st.integers(-9, 9), min_size=sig.dim, max_size=sig.dim
            )
        )
        els.append(element(sig, vals, RATIONAL))
    return (sig, *els)


@given(sig_and_elements(count=2))
def test_mul_commutative(args):
    _, a, b = args
    assert mul(a, b) == mul(b, a)


@given(sig_and_elements(count=3))
def test_mul_associative(args):
    _, a, b, c = args
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(sig_and_elements(count=2), st.integers(0, 15), st.integers(-5, 5), st.integers(-5, 5))
def test_conjugation_linear(args, mask, s, t):
    sig, u, v = args
    mask %= sig.dim
    lhs = conjugate(add(scale(u, s), scale(v, t)), mask)
    rhs = add(scale(conjugate(u, mask), s), scale(conjugate(v, mask), t))
    assert lhs == rhs


@given(sig_and_elements(), st.integers(0, 15))
def test_conjugation_involution(args, mask):
    sig, u = args
    mask %= sig.dim
    assert conjugate(conjugate(u, mask), mask) == u


@given(sig_and_elements(), st.integers(0, 15), st.integers(0, 15))
def test_conjugation_group_law(args, m1, m2):
    sig, u = args
    m1 %= sig.dim
    m2 %= sig.dim
    c12 = conjugate(conjugate(u, m1), m2)
    c21 = conjugate(conjugate(u, m2), m1)
    assert c12 == c21 == conjugate(u, m1 ^ m2)


@given(sig_and_elements(count=2), st.integers(0, 15))
def test_conjugation_multiplicative(args, mask):
    sig, u, v = args
    mask %= sig.dim
    assert conjugate(mul(u, v), mask) == mul(conjugate(u, mask), conjugate(v, mask))


@given(sig_and_elements())
def test_elimination_lemma(args):
    sig, u = args
    for k in range(1, sig.n + 1):
        w = eliminate_generator(u, k)
        bit = 1 << (k - 1)
        assert all(not c for m, c in enumerate(w.coeffs) if m & bit)


def test_float_mul_matches_exact(rng):
    # the vectorized float path implements the same convolution as the
    # generic loop; integer inputs make the comparison exact
    for sig in all_signatures(6):
        vals_a = [rng.randint(-9, 9) for _ in range(sig.dim)]
        vals_b = [rng.randint(-9, 9) for _ in range(sig.dim)]
        fa, fb = element(sig, vals_a), element(sig, vals_b)
        ra, rb = element(sig, vals_a, RATIONAL), element(sig, vals_b, RATIONAL)
        prod_f = mul(fa, fb)
        prod_r = mul(ra, rb)
        assert all(float(x) == y for x, y in zip(prod_r.coeffs, prod_f.coeffs))


def test_immutability():
    u = one(Signature(1, 1))
    with pytest.raises(AttributeError):
        u.coeffs = (0.0,) * 4
    with pytest.raises(TypeError):
        u.coeffs[0] = 2.0


def test_element_validates_length():
    with pytest.raises(ValueError):
        Element(Signature(1, 1), (1.0, 2.0))
    with pytest.raises(ValueError):
        element(Signature(1, 0), [1, 2, 3])


def test_isclose():
    s = Signature(1, 0)
    a = element(s, [1.0, 2.0])
    b = element(s, [1.0, 2.0 + 1e-12])
    assert a.isclose(b)
    assert not a.isclose(element(s, [1.0, 2.1]))
    assert zero(s).isclose(zero(s))
