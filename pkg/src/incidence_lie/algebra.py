"""Elements of the incidence algebra of a finite pre-ordered set.

An element is a sparse table ``(x, y) -> r`` supported on pairs ``x <= y``;
the product is convolution, ``(ab)(x, y) = sum_{x<=z<=y} a(x, z) b(z, y)``.
Tables never hold explicit zeros, so equality is table equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .preorder import Preorder
from .ring import Ring

__all__ = [
    "FiElement",
    "CenterWitness",
    "StructureMismatchError",
    "SupportError",
    "basis",
    "identity",
    "diagonal",
    "convolve",
    "bracket",
    "p_n",
    "split",
    "restrict",
    "project_component",
    "is_central",
    "center_defect",
    "component_trace",
]


class StructureMismatchError(ValueError):
    """Operands live over different pre-orders or rings."""


class SupportError(ValueError):
    """An entry sits at a pair ``(x, y)`` with ``x`` not below ``y``."""


class FiElement:
    __slots__ = ("preorder", "ring", "entries")

    def __init__(self, preorder: Preorder, ring: Ring, entries: Mapping | None = None):
        table = {}
        leq = preorder.leq
        for (x, y), v in (entries or {}).items():
            if not (0 <= x < preorder.size and 0 <= y < preorder.size) or not leq[x][y]:
                raise SupportError(f"entry at ({x}, {y}) but {x} is not <= {y}")
            v = ring.check(v)
            if not ring.is_zero(v):
                table[(x, y)] = v
        self.preorder = preorder
        self.ring = ring
        self.entries = table

    @classmethod
    def _raw(cls, preorder: Preorder, ring: Ring, table: dict) -> "FiElement":
        # table must already be canonical
        obj = cls.__new__(cls)
        obj.preorder = preorder
        obj.ring = ring
        obj.entries = table
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, preorder: Preorder, ring: Ring) -> "FiElement":
        return cls._raw(preorder, ring, {})

    @classmethod
    def from_triples(cls, preorder: Preorder, ring: Ring, triples: Iterable) -> "FiElement":
        table: dict = {}
        for x, y, v in triples:
            key = (x, y)
            table[key] = ring.add(table[key], v) if key in table else v
        return cls(preorder, ring, table)

    # -- access ------------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]):
        v = self.entries.get(key)
        return self.ring.zero if v is None else v

    def __iter__(self):
        return iter(sorted(self.entries.items()))

    def __len__(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def triples(self) -> list[tuple[int, int, object]]:
        return [(x, y, v) for (x, y), v in sorted(self.entries.items())]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiElement):
            return NotImplemented
        return (
            self.ring == other.ring
            and (self.preorder is other.preorder or self.preorder == other.preorder)
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        if not self.entries:
            return "FiElement(0)"
        pretty = self.ring.pretty
        body = " + ".join(f"({pretty(v)})e{x},{y}" for (x, y), v in sorted(self.entries.items()))
        return f"FiElement({body})"

    # -- arithmetic --------------------------------------------------------

    def _same(self, other: "FiElement") -> None:
        if other.ring != self.ring or not (
            other.preorder is self.preorder or other.preorder == self.preorder
        ):
            raise StructureMismatchError("elements over different pre-orders or rings")

    def __add__(self, other: "FiElement") -> "FiElement":
        self._same(other)
        R = self.ring
        out = dict(self.entries)
        for k, v in other.entries.items():
            if k in out:
                s = R.add(out[k], v)
                if R.is_zero(s):
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return FiElement._raw(self.preorder, R, out)

    def __neg__(self) -> "FiElement":
        neg = self.ring.neg
        return FiElement._raw(self.preorder, self.ring, {k: neg(v) for k, v in self.entries.items()})

    def __sub__(self, other: "FiElement") -> "FiElement":
        return self + (-other)

    def scale(self, r) -> "FiElement":
        R = self.ring
        out = {}
        for k, v in self.entries.items():
            w = R.mul(r, v)
            if not R.is_zero(w):
                out[k] = w
        return FiElement._raw(self.preorder, R, out)

    def __mul__(self, other: "FiElement") -> "FiElement":
        return convolve(self, other)

    # -- pieces ------------------------------------------------------------

    @property
    def diagonal_part(self) -> "FiElement":
        return FiElement._raw(
            self.preorder, self.ring, {k: v for k, v in self.entries.items() if k[0] == k[1]}
        )

    @property
    def strict_part(self) -> "FiElement":
        return FiElement._raw(
            self.preorder, self.ring, {k: v for k, v in self.entries.items() if k[0] != k[1]}
        )

    def is_diagonal(self) -> bool:
        return all(x == y for x, y in self.entries)


def basis(P: Preorder, R: Ring, x: int, y: int, r=None) -> FiElement:
    """``r * e_xy`` (``r`` defaults to 1)."""
    if not (0 <= x < P.size and 0 <= y < P.size) or not P.leq[x][y]:
        raise SupportError(f"no basis element e_({x},{y}): {x} is not <= {y}")
    return FiElement(P, R, {(x, y): R.one if r is None else r})


def identity(P: Preorder, R: Ring) -> FiElement:
    return FiElement._raw(P, R, {(x, x): R.one for x in range(P.size)})


def diagonal(P: Preorder, R: Ring, values: Sequence) -> FiElement:
    if len(values) != P.size:
        raise ValueError(f"need {P.size} diagonal values, got {len(values)}")
    return FiElement(P, R, {(x, x): v for x, v in enumerate(values)})


def convolve(a: FiElement, b: FiElement) -> FiElement:
    a._same(b)
    R = a.ring
    add, mul = R.add, R.mul
    rows: dict[int, list] = {}
    for (z, y), v in b.entries.items():
        rows.setdefault(z, []).append((y, v))
    acc: dict = {}
    for (x, z), u in a.entries.items():
        row = rows.get(z)
        if not row:
            continue
        for y, v in row:
            k = (x, y)
            p = mul(u, v)
            acc[k] = add(acc[k], p) if k in acc else p
    is_zero = R.is_zero
    return FiElement._raw(a.preorder, R, {k: v for k, v in acc.items() if not is_zero(v)})


def bracket(a: FiElement, b: FiElement) -> FiElement:
    """``[a, b] = ab - ba``."""
    return convolve(a, b) - convolve(b, a)


def p_n(args: Sequence[FiElement]) -> FiElement:
    """Left-nested commutator ``[[..[x1, x2], ..], xn]``; ``p_1(x) = x``."""
    if not args:
        raise ValueError("p_n needs at least one argument")
    out = args[0]
    for a in args[1:]:
        out = bracket(out, a)
    return out


def split(beta: FiElement) -> tuple[FiElement, FiElement]:
    """Diagonal and strictly-off-diagonal parts."""
    return beta.diagonal_part, beta.strict_part


def restrict(beta: FiElement, u: int, v: int) -> FiElement:
    """Keep the entries ``(x, y)`` with ``u <= x <= y <= v``."""
    P = beta.preorder
    if not P.le(u, v):
        raise SupportError(f"restriction needs {u} <= {v}")
    lu, lv = P.leq[u], P.leq
    keep = {(x, y): r for (x, y), r in beta.entries.items() if lu[x] and lv[y][v]}
    return FiElement._raw(P, beta.ring, keep)


def project_component(beta: FiElement, j: int) -> FiElement:
    comp = beta.preorder.component_of
    keep = {k: v for k, v in beta.entries.items() if comp[k[0]] == j}
    return FiElement._raw(beta.preorder, beta.ring, keep)


def component_trace(beta: FiElement, j: int):
    R = beta.ring
    comp = beta.preorder.component_of
    out = R.zero
    for (x, y), v in beta.entries.items():
        if x == y and comp[x] == j:
            out = R.add(out, v)
    return out


@dataclass(frozen=True)
class CenterWitness:
    """``beta = sum_j coefficients[j] * I_j`` (``I_j`` = identity of component j)."""

    coefficients: tuple


def center_defect(beta: FiElement) -> tuple[int, int] | None:
    """A pair that stops ``beta`` from being central, or ``None``.

    Either an off-diagonal entry, or two comparable vertices with different
    diagonal values.
    """
    for (x, y) in sorted(beta.entries):
        if x != y:
            return (x, y)
    P = beta.preorder
    for x, y in P.strict_edges:
        if beta[(x, x)] != beta[(y, y)]:
            return (x, y)
    return None


def is_central(beta: FiElement) -> CenterWitness | None:
    if center_defect(beta) is not None:
        return None
    P = beta.preorder
    return CenterWitness(tuple(beta[(members[0], members[0])] for members in P.components))
