"""Exact commutative rings and additive derivations on them.

A ring is a small immutable descriptor object that knows how to do arithmetic
on *raw* payloads:

    Integer    -> python ``int``
    Rational   -> ``fractions.Fraction`` (always reduced, positive denominator)
    Modular(m) -> ``int`` residue in ``[0, m)``
    IntPoly    -> ``tuple`` of ``int`` coefficients, constant term first,
                  no trailing zeros (so ``()`` is zero)

Everything downstream (incidence algebra tables, maps, probes) stores raw
payloads next to a ring descriptor, the same way computer algebra "domains"
do.  :class:`RingValue` wraps a payload together with its ring for callers who
want operator syntax and a typed error when rings are mixed.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

__all__ = [
    "Ring",
    "IntegerRing",
    "RationalRing",
    "ModularRing",
    "PolyRing",
    "INTEGER",
    "RATIONAL",
    "INTPOLY",
    "RingValue",
    "RingMismatchError",
    "RingPayloadError",
    "AdditiveDerivation",
    "DerivationRingError",
    "ring_from_name",
    "validate_torsionfree",
]


class RingMismatchError(TypeError):
    """Two operands belong to different rings."""


class RingPayloadError(ValueError):
    """A payload is not a canonical element of the ring it was given to."""


class DerivationRingError(ValueError):
    """An additive derivation was applied on a ring it is not defined on."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (tuples, constant term first)


def _ptrim(c: Sequence[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _padd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _ptrim(out)


def _pneg(a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-v for v in a)


def _psub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return _padd(a, _pneg(b))


def _pmul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    # leading coefficients of nonzero integer polys never cancel
    return tuple(out)


def _pderiv(a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(i * a[i] for i in range(1, len(a)))


def _pformat(a: tuple[int, ...]) -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else ""
        else:
            coef = str(c) + ("*" if mono else "")
        terms.append(coef + mono)
    return " + ".join(terms).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# ring descriptors


class Ring:
    """Base class of the closed family of coefficient rings."""

    name: str

    # arithmetic on raw payloads; subclasses override
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return not a

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, k: int):
        raise NotImplementedError

    def mul_int(self, a, k: int):
        return self.mul(a, self.from_int(k))

    def power(self, a, k: int):
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def eval_int_poly(self, coeffs: Sequence[int], a):
        """Evaluate an integer-coefficient polynomial at ``a`` (Horner)."""
        out = self.zero
        for c in reversed(coeffs):
            out = self.add(self.mul(out, a), self.from_int(c))
        return out

    def check(self, a):
        """Return ``a`` if it is a canonical payload of this ring, else raise."""
        raise NotImplementedError

    def coerce(self, a):
        """Best-effort conversion of python numbers/sequences into a payload."""
        return self.check(a)

    def format(self, a) -> Any:
        """JSON-friendly serialisation of a payload."""
        raise NotImplementedError

    def parse(self, obj: Any):
        raise NotImplementedError

    def pretty(self, a) -> str:
        return str(a)

    def value(self, a) -> "RingValue":
        return RingValue(self, self.check(a))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class IntegerRing(Ring):
    @property
    def name(self) -> str:
        return "int"

    def from_int(self, k: int) -> int:
        return int(k)

    def check(self, a) -> int:
        if isinstance(a, bool) or not isinstance(a, int):
            raise RingPayloadError(f"not an integer payload: {a!r}")
        return a

    def format(self, a) -> str:
        return str(a)

    def parse(self, obj: Any) -> int:
        if isinstance(obj, bool):
            raise RingPayloadError(f"bad integer: {obj!r}")
        if isinstance(obj, int):
            return obj
        if isinstance(obj, str) and re.fullmatch(r"\s*[+-]?\d+\s*", obj):
            return int(obj)
        raise RingPayloadError(f"bad integer: {obj!r}")


@dataclass(frozen=True)
class RationalRing(Ring):
    @property
    def name(self) -> str:
        return "rat"

    def from_int(self, k: int) -> Fraction:
        return Fraction(k)

    def check(self, a) -> Fraction:
        if isinstance(a, Fraction):
            return a
        raise RingPayloadError(f"not a rational payload: {a!r}")

    def coerce(self, a) -> Fraction:
        if isinstance(a, bool):
            raise RingPayloadError(f"not a rational payload: {a!r}")
        if isinstance(a, (int, Fraction)):
            return Fraction(a)
        return self.parse(a)

    def format(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, obj: Any) -> Fraction:
        if isinstance(obj, int) and not isinstance(obj, bool):
            return Fraction(obj)
        if isinstance(obj, str):
            m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?", obj)
            if m and (m.group(2) is None or int(m.group(2)) != 0):
                return Fraction(int(m.group(1)), int(m.group(2) or 1))
        raise RingPayloadError(f"bad rational: {obj!r}")


@dataclass(frozen=True)
class ModularRing(Ring):
    modulus: int

    def __post_init__(self):
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) or self.modulus < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.modulus!r}")

    @property
    def name(self) -> str:
        return f"mod:{self.modulus}"

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def from_int(self, k: int) -> int:
        return k % self.modulus

    def check(self, a) -> int:
        if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a < self.modulus:
            raise RingPayloadError(f"not a residue mod {self.modulus}: {a!r}")
        return a

    def coerce(self, a) -> int:
        if isinstance(a, int) and not isinstance(a, bool):
            return a % self.modulus
        return self.parse(a)

    def format(self, a) -> str:
        return f"{a} mod {self.modulus}"

    def parse(self, obj: Any) -> int:
        if isinstance(obj, int) and not isinstance(obj, bool):
            return obj % self.modulus
        if isinstance(obj, str):
            m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:mod\s*(\d+)\s*)?", obj)
            if m:
                if m.group(2) is not None and int(m.group(2)) != self.modulus:
                    raise RingPayloadError(
                        f"residue {obj!r} does not belong to mod {self.modulus}"
                    )
                return int(m.group(1)) % self.modulus
        raise RingPayloadError(f"bad residue: {obj!r}")

    def pretty(self, a) -> str:
        return self.format(a)


@dataclass(frozen=True)
class PolyRing(Ring):
    """Z[t]."""

    @property
    def name(self) -> str:
        return "intpoly"

    add = staticmethod(_padd)
    sub = staticmethod(_psub)
    neg = staticmethod(_pneg)
    mul = staticmethod(_pmul)

    def from_int(self, k: int) -> tuple[int, ...]:
        return (k,) if k else ()

    @property
    def t(self) -> tuple[int, ...]:
        return (0, 1)

    def mul_int(self, a, k: int):
        return _ptrim([k * v for v in a])

    def check(self, a) -> tuple[int, ...]:
        if (
            not isinstance(a, tuple)
            or any(isinstance(v, bool) or not isinstance(v, int) for v in a)
            or (a and a[-1] == 0)
        ):
            raise RingPayloadError(f"not a canonical integer polynomial: {a!r}")
        return a

    def coerce(self, a) -> tuple[int, ...]:
        if isinstance(a, int) and not isinstance(a, bool):
            return self.from_int(a)
        return self.parse(a)

    def format(self, a) -> list[int]:
        return list(a)

    def parse(self, obj: Any) -> tuple[int, ...]:
        if isinstance(obj, (list, tuple)):
            ring = INTEGER
            return _ptrim([ring.parse(v) for v in obj])
        if isinstance(obj, int) and not isinstance(obj, bool):
            return self.from_int(obj)
        raise RingPayloadError(f"bad polynomial (want coefficient list): {obj!r}")

    def pretty(self, a) -> str:
        return _pformat(a)

    def derivative(self, a):
        return _pderiv(a)


INTEGER = IntegerRing()
RATIONAL = RationalRing()
INTPOLY = PolyRing()


def ring_from_name(name: str) -> Ring:
    """Parse ``int``, ``rat``, ``mod:m`` or ``intpoly``."""
    key = name.strip().lower()
    if key in ("int", "integer", "z"):
        return INTEGER
    if key in ("rat", "rational", "q"):
        return RATIONAL
    if key in ("intpoly", "poly", "z[t]"):
        return INTPOLY
    m = re.fullmatch(r"mod:(\d+)", key)
    if m:
        return ModularRing(int(m.group(1)))
    raise ValueError(f"unknown ring {name!r} (expected int|rat|mod:m|intpoly)")


def validate_torsionfree(ring: Ring, n: int) -> bool:
    """True iff ``ring`` is 2-torsionfree and (n-1)-torsionfree."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if isinstance(ring, ModularRing):
        return math.gcd(ring.modulus, 2) == 1 and math.gcd(ring.modulus, n - 1) == 1
    return True


# ---------------------------------------------------------------------------
# typed wrapper


@dataclass(frozen=True)
class RingValue:
    """A payload tagged with its ring; arithmetic refuses to mix rings."""

    ring: Ring
    value: Any

    def __post_init__(self):
        self.ring.check(self.value)

    def _other(self, other: "RingValue"):
        if not isinstance(other, RingValue):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return other.value

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingValue(self.ring, self.ring.add(self.value, b))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingValue(self.ring, self.ring.sub(self.value, b))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingValue(self.ring, self.ring.mul(self.value, b))

    def __neg__(self):
        return RingValue(self.ring, self.ring.neg(self.value))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def __str__(self) -> str:
        return self.ring.pretty(self.value)


# ---------------------------------------------------------------------------
# additive derivations


@dataclass(frozen=True)
class AdditiveDerivation:
    """``q(t) -> p(t) * q'(t)`` on Z[t]; the empty ``p`` is the zero derivation.

    On Z, Q and Z/m every additive derivation vanishes (it is additive and
    kills 1), so ``p(t) d/dt`` is the whole catalogue.
    """

    poly: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "poly", _ptrim(tuple(int(c) for c in self.poly)))

    @classmethod
    def zero(cls) -> "AdditiveDerivation":
        return cls(())

    @classmethod
    def poly_times_ddt(cls, p: Iterable[int]) -> "AdditiveDerivation":
        return cls(tuple(p))

    @property
    def kind(self) -> str:
        return "poly_times_ddt" if self.poly else "zero"

    @property
    def is_zero(self) -> bool:
        return not self.poly

    def check_ring(self, ring: Ring) -> None:
        if self.poly and not isinstance(ring, PolyRing):
            raise DerivationRingError(
                f"p(t)*d/dt is only defined on intpoly, not on {ring.name}"
            )

    def apply(self, ring: Ring, r):
        if not self.poly:
            return ring.zero
        self.check_ring(ring)
        return _pmul(self.poly, _pderiv(r))

    def __call__(self, ring: Ring, r):
        return self.apply(ring, r)

    def to_json(self) -> list:
        return [self.kind, list(self.poly) if self.poly else None]

    @classmethod
    def from_json(cls, obj: Any) -> "AdditiveDerivation":
        if not isinstance(obj, (list, tuple)) or len(obj) != 2:
            raise ValueError(f"derivation must be [kind, payload], got {obj!r}")
        kind, payload = obj
        if kind == "zero":
            return cls.zero()
        if kind == "poly_times_ddt":
            return cls.poly_times_ddt(INTPOLY.parse(payload))
        raise ValueError(f"unknown derivation kind {kind!r}")

    def __str__(self) -> str:
        if not self.poly:
            return "0"
        return f"({_pformat(self.poly)})*d/dt"
