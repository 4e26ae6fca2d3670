"""Sampling falsifiers for derivation-type laws.

A check walks a deterministic probe sequence and stops at the first violated
instance.  A pass only means "no violation found in N probes".

Probe order is fixed: first the structured probes (basis elements, scalar
multiples of basis elements, diagonal elements, and the short tuples built
from them that the structure theory feeds into a map), then random sparse
probes drawn from ``random.Random(seed)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import islice
from typing import Any, Callable, Iterator, Sequence

from .algebra import FiElement, basis, bracket, center_defect, convolve, p_n
from .preorder import Preorder
from .ring import PolyRing, Ring, validate_torsionfree

__all__ = [
    "ProbeBudget",
    "Verdict",
    "InadmissibleRingError",
    "default_pool",
    "structured_elements",
    "structured_tuples",
    "probe_elements",
    "probe_tuples",
    "probe_pairs",
    "check_lie_n_derivation",
    "check_derivation",
    "check_central_annihilating",
    "lie_n_sides",
]


class InadmissibleRingError(ValueError):
    """The ring has 2-torsion or (n-1)-torsion."""


@dataclass(frozen=True)
class ProbeBudget:
    """How many probes to run and how to draw them.

    ``tuples`` is the total number of probes.  The structured probes always
    run in full; random probes fill the remainder, and at least a tenth of
    the budget is random regardless.
    """

    seed: int = 0
    tuples: int = 500
    pool: tuple | None = None
    density: float = 0.4

    def pool_for(self, ring: Ring) -> tuple:
        return tuple(self.pool) if self.pool is not None else default_pool(ring)

    def random_count(self, structured: int) -> int:
        return max(self.tuples - structured, self.tuples // 10)


def default_pool(ring: Ring) -> tuple:
    """``{0, 1, -1, 2, -2, 3}``, plus ``t, t^2, t+1`` on Z[t]; duplicates dropped."""
    vals = [ring.from_int(k) for k in (0, 1, -1, 2, -2, 3)]
    if isinstance(ring, PolyRing):
        vals += [(0, 1), (0, 0, 1), (1, 1)]
    out: list = []
    for v in vals:
        if v not in out:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class Verdict:
    law: str
    passed: bool
    probes: int
    n: int | None = None
    args: tuple | None = field(default=None, repr=False)
    lhs: Any = field(default=None, repr=False)
    rhs: Any = field(default=None, repr=False)
    detail: str = ""

    def summary(self) -> str:
        if self.passed:
            return f"{self.law}: no violation found in {self.probes} probes"
        where = f" ({self.detail})" if self.detail else ""
        return f"{self.law}: violated at probe {self.probes}{where}"

    def recheck(self, L) -> bool:
        """Re-evaluate the stored counterexample; True if it still fails."""
        if self.passed or self.args is None:
            return False
        if self.law == "central_valued":
            return center_defect(L(self.args[0])) is not None
        law = _LAWS.get(self.law)
        if law is None:
            raise ValueError(f"no re-check available for {self.law!r}")
        lhs, rhs = law(L, self.args, self.n)
        return lhs != rhs


# ---------------------------------------------------------------------------
# probe generation


def _nonzero(pool: Sequence, ring: Ring) -> list:
    return [r for r in pool if not ring.is_zero(r)]


def _diagonals(P: Preorder, R: Ring, nz: Sequence) -> list[FiElement]:
    m = len(nz)
    if not m:
        return []
    return [
        FiElement._raw(P, R, {(x, x): nz[(k + x) % m] for x in range(P.size)})
        for k in range(m)
    ]


def structured_elements(P: Preorder, R: Ring, pool: Sequence) -> list[FiElement]:
    nz = _nonzero(pool, R)
    one = R.one
    out = [basis(P, R, x, x) for x in range(P.size)]
    out += [basis(P, R, x, y) for x, y in P.strict_edges]
    out += [basis(P, R, x, y, r) for r in nz if r != one for x, y in P.pairs]
    out += _diagonals(P, R, nz)
    return out


def structured_tuples(P: Preorder, R: Ring, pool: Sequence, n: int) -> list[tuple]:
    """Argument tuples of length ``n`` mirroring the structure-theory probes."""
    nz = _nonzero(pool, R)
    e = lambda x, y, r=None: basis(P, R, x, y, r)  # noqa: E731
    few = nz[:3]

    def pad(head: list, fill: FiElement) -> tuple:
        head = head[:n]
        return tuple(head + [fill] * (n - len(head)))

    out: list[tuple] = []
    diags = _diagonals(P, R, nz)
    for x, y in P.strict_edges:
        eyy = e(y, y)
        out.append(pad([e(x, x), eyy], eyy))
        for r in nz:
            out.append(pad([e(x, x), e(x, y, r)], eyy))
            out.append(pad([e(x, x, r), e(x, y)], eyy))
            out.append(pad([e(x, y), e(y, y, r)], eyy))
        for d in diags:
            out.append(pad([d, e(x, y)], eyy))
        for r in few:
            for s in few:
                out.append(pad([e(x, x) - e(x, y, r), e(x, x) + e(x, y, s)], eyy))
        if P.le(y, x):
            out.append(tuple([e(x, y)] + [eyy] * (n - 2) + [e(y, x)]))
    for x, y in P.strict_edges:
        for z in range(P.size):
            if z != x and z != y and P.le(y, z):
                out.append(pad([e(x, y), e(y, z)], e(z, z)))
    return out


def random_element(P: Preorder, R: Ring, rng: random.Random, nz: Sequence, density: float) -> FiElement:
    table = {k: rng.choice(nz) for k in P.pairs if rng.random() < density}
    return FiElement._raw(P, R, table)


def probe_elements(P: Preorder, R: Ring, budget: ProbeBudget) -> Iterator[FiElement]:
    pool = budget.pool_for(R)
    structured = structured_elements(P, R, pool)
    yield from structured
    rng = random.Random(budget.seed)
    nz = _nonzero(pool, R)
    for _ in range(budget.random_count(len(structured))):
        yield random_element(P, R, rng, nz, budget.density)


def probe_tuples(P: Preorder, R: Ring, budget: ProbeBudget, n: int) -> Iterator[tuple]:
    pool = budget.pool_for(R)
    structured = structured_tuples(P, R, pool, n)
    yield from structured
    rng = random.Random(budget.seed)
    nz = _nonzero(pool, R)
    elems = structured_elements(P, R, pool)
    for _ in range(budget.random_count(len(structured))):
        yield tuple(
            rng.choice(elems) if rng.random() < 0.3 else random_element(P, R, rng, nz, budget.density)
            for _ in range(n)
        )


def probe_pairs(P: Preorder, R: Ring, budget: ProbeBudget) -> Iterator[tuple]:
    pool = budget.pool_for(R)
    nz = _nonzero(pool, R)
    few = nz[:3]
    structured: list[tuple] = []
    bas = [basis(P, R, x, y) for x, y in P.pairs]
    structured += [(a, b) for a in bas for b in bas]
    for x, y in P.pairs:
        for v in range(P.size):
            if P.le(y, v):
                for r in few:
                    for s in few:
                        structured.append((basis(P, R, x, y, r), basis(P, R, y, v, s)))
    diags = _diagonals(P, R, nz)
    structured += [(a, b) for a in diags for b in diags]
    yield from structured
    rng = random.Random(budget.seed)
    elems = structured_elements(P, R, pool)
    for _ in range(budget.random_count(len(structured))):
        a = rng.choice(elems) if rng.random() < 0.3 else random_element(P, R, rng, nz, budget.density)
        b = random_element(P, R, rng, nz, budget.density)
        yield (a, b)


# ---------------------------------------------------------------------------
# laws


def lie_n_sides(L: Callable, args: Sequence[FiElement], n: int | None = None):
    """``L(p_n(args))`` and ``sum_k p_n(.., L(args[k]), ..)``."""
    n = len(args)
    prefix = [args[0]]
    for a in args[1:]:
        prefix.append(bracket(prefix[-1], a))
    lhs = L(prefix[-1])
    rhs = None
    for k in range(n):
        acc = L(args[0]) if k == 0 else bracket(prefix[k - 1], L(args[k]))
        for a in args[k + 1:]:
            acc = bracket(acc, a)
        rhs = acc if rhs is None else rhs + acc
    return lhs, rhs


def _leibniz_sides(D: Callable, args, n=None):
    a, b = args
    return D(convolve(a, b)), convolve(D(a), b) + convolve(a, D(b))


def _additivity_sides(D: Callable, args, n=None):
    a, b = args
    return D(a + b), D(a) + D(b)


def _annihilation_sides(K: Callable, args, n=None):
    image = K(p_n(args))
    return image, FiElement.zero(image.preorder, image.ring)


_LAWS = {
    "lie_n_derivation": lie_n_sides,
    "leibniz": _leibniz_sides,
    "additivity": _additivity_sides,
    "annihilates_commutators": _annihilation_sides,
}


def _require_admissible(R: Ring, n: int) -> None:
    if not validate_torsionfree(R, n):
        raise InadmissibleRingError(f"{R.name} has 2- or {n - 1}-torsion; laws for n={n} are not meaningful")


def check_lie_n_derivation(L, n: int, budget: ProbeBudget = ProbeBudget()) -> Verdict:
    """Falsify ``L(p_n(x1..xn)) = sum_k p_n(x1, .., L(xk), .., xn)``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    P, R = L.preorder, L.ring
    _require_admissible(R, n)
    count = 0
    for args in probe_tuples(P, R, budget, n):
        count += 1
        lhs, rhs = lie_n_sides(L, args)
        if lhs != rhs:
            return Verdict("lie_n_derivation", False, count, n, args, lhs, rhs)
    return Verdict("lie_n_derivation", True, count, n)


def check_derivation(D, budget: ProbeBudget = ProbeBudget()) -> Verdict:
    """Falsify additivity and the Leibniz rule ``D(ab) = D(a)b + aD(b)``."""
    P, R = D.preorder, D.ring
    count = 0
    for a, b in probe_pairs(P, R, budget):
        count += 1
        for law in ("additivity", "leibniz"):
            lhs, rhs = _LAWS[law](D, (a, b))
            if lhs != rhs:
                return Verdict(law, False, count, None, (a, b), lhs, rhs)
    return Verdict("derivation", True, count)


def check_central_annihilating(K, n: int, budget: ProbeBudget = ProbeBudget()) -> Verdict:
    """Falsify "central-valued and zero on all p_n-commutators"."""
    P, R = K.preorder, K.ring
    count = 0
    for beta in probe_elements(P, R, budget):
        count += 1
        image = K(beta)
        bad = center_defect(image)
        if bad is not None:
            return Verdict(
                "central_valued", False, count, n, (beta,), image, None,
                f"image not central at {bad}",
            )
    for args in islice(probe_tuples(P, R, budget, n), budget.tuples):
        count += 1
        lhs, rhs = _annihilation_sides(K, args)
        if lhs != rhs:
            return Verdict("annihilates_commutators", False, count, n, args, lhs, rhs)
    return Verdict("central_annihilating", True, count, n)
