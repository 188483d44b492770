"""Scalar coefficient backends.

Two interchangeable scalar types back every element of the algebra:

* ``float64`` -- ordinary binary floating point, the default.  Fast, but
  equality checks need a relative tolerance.
* ``rational`` -- exact arbitrary-precision rationals (``gmpy2.mpq``).
  Zero tests, determinant-vanishing tests and witness verification are
  exact with this backend.

Both types support ``+ - * /``, comparison with ``==``, ``abs()`` and
construction from ints, strings (``"3"``, ``"1.5"``, ``"2/7"``) and
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Union

from gmpy2 import mpq

Scalar = Union[float, Any]  # float or gmpy2.mpq


def _to_float(value: Any) -> float:
    if isinstance(value, str):
        return float(Fraction(value))
    return float(value)


def _to_rational(value: Any):
    return mpq(value)


@dataclass(frozen=True)
class ScalarBackend:
    """A scalar domain: a cast function plus exactness metadata."""

    name: str
    cast: Callable[[Any], Scalar]
    exact: bool

    @property
    def zero(self) -> Scalar:
        return self.cast(0)

    @property
    def one(self) -> Scalar:
        return self.cast(1)


FLOAT64 = ScalarBackend("float64", _to_float, exact=False)
RATIONAL = ScalarBackend("rational", _to_rational, exact=True)

BACKENDS = {b.name: b for b in (FLOAT64, RATIONAL)}


def get_backend(name: str) -> ScalarBackend:
    try:
        return BACKENDS[name]
    except KeyError:
        raise KeyError(
            f"unknown scalar backend {name!r}; choose from {sorted(BACKENDS)}"
        ) from None


def backend_of(scalar: Scalar) -> ScalarBackend:
    """Backend that produced a scalar (floats vs. everything exact)."""
    return FLOAT64 if isinstance(scalar, float) else RATIONAL


def cast_like(sample: Scalar, value: Any) -> Scalar:
    """Convert ``value`` into the scalar domain of ``sample``."""
    return backend_of(sample).cast(value)


def scalar_str(s: Scalar) -> str:
    """Round-trip-safe text form: shortest repr for floats, ``a/b`` for rationals."""
    return repr(s) if isinstance(s, float) else str(s)


def scalar_json(s: Scalar):
    """JSON value for a scalar: floats stay numbers, rationals become strings."""
    return s if isinstance(s, float) else str(s)
