import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from dlpq import Signature, det_recursive, element
from dlpq.scalars import FLOAT64, RATIONAL

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def all_signatures(max_n, min_n=1):
    for n in range(min_n, max_n + 1):
        for p in range(n + 1):
            yield Signature(p, n - p)


def rand_element(rng, sig, backend):
    if backend.exact:
        vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(sig.dim)]
    else:
        vals = [rng.uniform(-1.0, 1.0) for _ in range(sig.dim)]
    return element(sig, vals, backend)


def rand_conditioned_float(rng, sig):
    """Scalar-dominant float element: keeps determinant comparisons inside
    binary64's well-conditioned regime (see decisions notes)."""
    vals = [rng.uniform(-1.0, 1.0) for _ in range(sig.dim)]
    vals[0] += rng.choice([-1.0, 1.0]) * rng.uniform(12.0, 24.0)
    return element(sig, vals, FLOAT64)


def rand_invertible(rng, sig, backend, max_tries=200):
    for _ in range(max_tries):
        u = (
            rand_conditioned_float(rng, sig)
            if not backend.exact
            else rand_element(rng, sig, backend)
        )
        det = det_recursive(u)
        if backend.exact:
            if det != 0:
                return u
        elif abs(det) > 1e-6 * (float(u.max_norm()) ** sig.dim):
            return u
    raise AssertionError(f"no invertible element found for {sig}")


@pytest.fixture
def rng():
    return random.Random(0xD1F0)
