"""Structured (generally nonlinear) self-maps of the incidence algebra.

A :class:`MapSpec` is a sum of primitive terms:

* :class:`Inner` -- ``beta -> alpha beta - beta alpha``
* :class:`Transitive` -- scales entry ``(x, y)`` by ``f(x, y)`` for a transitive ``f``
* :class:`AdditiveInduced` -- applies a ring derivation ``F[i]`` to the entries of
  edge class ``i`` and spreads diagonal entries onto neighbouring vertices
* :class:`CentralTrace` -- ``beta -> sum_j h_j(trace_j(beta)) I_j``
* :class:`Witness` -- the non-proper map supported on one edge class
* :class:`ProperPart` -- applies one ring derivation per component to every entry

Every term is evaluated entry by entry over the sparse table; the witness is
the only term whose diagonal rule looks at the whole diagonal at once.

Anything that is not expressible this way can be wrapped in a
:class:`BlackBoxMap`; the checkers and the decomposer only need
``preorder``, ``ring`` and ``__call__``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

from .algebra import FiElement, StructureMismatchError
from .preorder import EdgeClassification, Preorder
from .ring import AdditiveDerivation, Ring

__all__ = [
    "Inner",
    "Transitive",
    "AdditiveInduced",
    "CentralTrace",
    "Witness",
    "ProperPart",
    "MapSpec",
    "BlackBoxMap",
    "MapSpecError",
    "TransitivityError",
    "WitnessError",
    "WitnessVertexError",
    "WitnessZeroDerivationError",
    "WitnessSingleClassError",
    "WitnessEquivalentBaseError",
    "MissingComponentError",
    "make_transitive",
    "transitive_violation",
    "is_trivial_transitive",
    "make_witness",
    "witness_base_points",
    "make_proper_part",
    "zero_map",
    "inner",
    "additive_induced",
    "central_trace",
]


class MapSpecError(ValueError):
    """A term does not fit the pre-order or ring it is attached to."""


class TransitivityError(MapSpecError):
    def __init__(self, message: str, triple=None):
        super().__init__(message)
        self.triple = triple


class WitnessError(MapSpecError):
    pass


class WitnessVertexError(WitnessError):
    """The base vertex is not on the chosen class."""


class WitnessZeroDerivationError(WitnessError):
    pass


class WitnessSingleClassError(WitnessError):
    """The host component has only one class, so the witness would be proper."""


class WitnessEquivalentBaseError(WitnessError):
    """The base vertex has an equivalent partner.

    Then ``[e_ty, e_yt]`` has a nonzero ``(t, t)`` entry, and the reference
    term ``-f(beta_tt) I`` stops the map from killing commutators.
    """


class MissingComponentError(MapSpecError):
    pass


# ---------------------------------------------------------------------------
# primitive terms


@dataclass(frozen=True)
class Inner:
    alpha: FiElement


@dataclass(frozen=True)
class Transitive:
    f: Mapping[tuple[int, int], object]


@dataclass(frozen=True)
class AdditiveInduced:
    assign: Mapping[int, AdditiveDerivation]


@dataclass(frozen=True)
class CentralTrace:
    h: Mapping[int, tuple[int, ...]]


@dataclass(frozen=True)
class Witness:
    class_id: int
    t: int
    f: AdditiveDerivation


@dataclass(frozen=True)
class ProperPart:
    assign: Mapping[int, AdditiveDerivation]


Term = Union[Inner, Transitive, AdditiveInduced, CentralTrace, Witness, ProperPart]

# an evaluator adds the term's image of ``beta`` into ``acc``
Evaluator = Callable[[FiElement, dict], None]


def _accumulate(R: Ring, acc: dict, key, v) -> None:
    if key in acc:
        acc[key] = R.add(acc[key], v)
    else:
        acc[key] = v


def _compile_inner(term: Inner, P: Preorder, R: Ring) -> Evaluator:
    alpha = term.alpha
    if alpha.ring != R or not (alpha.preorder is P or alpha.preorder == P):
        raise MapSpecError("inner term built over a different pre-order or ring")
    a_rows: dict[int, list] = {}
    a_cols: dict[int, list] = {}
    for (x, z), v in alpha.entries.items():
        a_rows.setdefault(z, []).append((x, v))  # alpha(x, z), indexed by z
        a_cols.setdefault(x, []).append((z, v))  # alpha(x, z), indexed by x
    add, mul, neg = R.add, R.mul, R.neg

    def run(beta: FiElement, acc: dict) -> None:
        for (z, y), b in beta.entries.items():
            # (alpha beta)(x, y) += alpha(x, z) beta(z, y)
            for x, a in a_rows.get(z, ()):
                k = (x, y)
                p = mul(a, b)
                acc[k] = add(acc[k], p) if k in acc else p
            # (beta alpha)(z, w) += beta(z, y) alpha(y, w)
            for w, a in a_cols.get(y, ()):
                k = (z, w)
                p = neg(mul(b, a))
                acc[k] = add(acc[k], p) if k in acc else p

    return run


def transitive_violation(P: Preorder, R: Ring, f: Mapping) -> tuple | None:
    """First triple ``x <= y <= z`` with ``f(x,y) + f(y,z) != f(x,z)``, or ``None``."""
    zero = R.zero
    get = lambda k: f.get(k, zero)  # noqa: E731
    for x in range(P.size):
        if not R.is_zero(get((x, x))):
            return (x, x, x)
    for x, y in P.pairs:
        fxy = get((x, y))
        ry = P.leq[y]
        for z in range(P.size):
            if ry[z] and R.add(fxy, get((y, z))) != get((x, z)):
                return (x, y, z)
    return None


def _check_table(P: Preorder, R: Ring, f: Mapping) -> dict:
    table = {}
    for (x, y), v in f.items():
        if not (0 <= x < P.size and 0 <= y < P.size) or not P.le(x, y):
            raise MapSpecError(f"transitive table has entry at ({x}, {y}) but {x} is not <= {y}")
        v = R.check(v)
        if not R.is_zero(v):
            table[(x, y)] = v
    bad = transitive_violation(P, R, table)
    if bad is not None:
        x, y, z = bad
        if x == y == z:
            raise TransitivityError(f"f({x},{x}) must be 0", bad)
        raise TransitivityError(f"f({x},{y}) + f({y},{z}) != f({x},{z})", bad)
    return table


def _compile_transitive(term: Transitive, P: Preorder, R: Ring) -> Evaluator:
    f = _check_table(P, R, term.f)
    mul = R.mul

    def run(beta: FiElement, acc: dict) -> None:
        for k, b in beta.entries.items():
            c = f.get(k)
            if c is not None:
                _accumulate(R, acc, k, mul(c, b))

    return run


def _check_derivations(R: Ring, assign: Mapping, valid_ids, what: str) -> dict:
    out = {}
    for key, d in assign.items():
        if key not in valid_ids:
            raise MapSpecError(f"unknown {what} {key!r}")
        if not isinstance(d, AdditiveDerivation):
            raise MapSpecError(f"{what} {key!r}: not an additive derivation")
        d.check_ring(R)
        if not d.is_zero:
            out[key] = d
    return out


def _compile_additive_induced(term: AdditiveInduced, P: Preorder, R: Ring) -> Evaluator:
    C = P.classification
    F = _check_derivations(R, term.assign, range(len(C.classes)), "class")
    # hook for components that are infinite: never the case here, nothing to zero out
    edge_class = C.edge_class
    spread = {}
    for x in range(P.size):
        targets = [
            (i, tuple(sorted(C.v_set(x, i) - {x})))
            for i in C.vertex_classes[x]
            if i in F
        ]
        if targets:
            spread[x] = targets

    def run(beta: FiElement, acc: dict) -> None:
        for (x, y), r in beta.entries.items():
            if x != y:
                d = F.get(edge_class[(x, y)])
                if d is not None:
                    _accumulate(R, acc, (x, y), d.apply(R, r))
            else:
                for i, ys in spread.get(x, ()):
                    v = R.neg(F[i].apply(R, r))
                    for z in ys:
                        _accumulate(R, acc, (z, z), v)

    return run


def _compile_central_trace(term: CentralTrace, P: Preorder, R: Ring) -> Evaluator:
    h = {}
    for j, coeffs in term.h.items():
        if not 0 <= j < len(P.components):
            raise MapSpecError(f"unknown component {j!r}")
        coeffs = tuple(int(c) for c in coeffs)
        if coeffs and coeffs[0] != 0:
            raise MapSpecError(f"central trace polynomial for component {j} has a constant term")
        if any(coeffs):
            h[j] = coeffs
    comp = P.component_of

    def run(beta: FiElement, acc: dict) -> None:
        traces = {j: R.zero for j in h}
        for (x, y), v in beta.entries.items():
            if x == y and comp[x] in traces:
                traces[comp[x]] = R.add(traces[comp[x]], v)
        for j, coeffs in h.items():
            val = R.eval_int_poly(coeffs, traces[j])
            if not R.is_zero(val):
                for x in P.components[j]:
                    _accumulate(R, acc, (x, x), val)

    return run


def _compile_witness(term: Witness, P: Preorder, R: Ring) -> Evaluator:
    C = P.classification
    i, t, f = term.class_id, term.t, term.f
    if not 0 <= i < len(C.classes):
        raise MapSpecError(f"unknown class {i!r}")
    if t not in C.class_vertices[i]:
        raise WitnessVertexError(f"vertex {t} is not on class {i}")
    f.check_ring(R)
    blocks = sorted(C.vx_partition(i).items())
    edge_class = C.edge_class

    def run(beta: FiElement, acc: dict) -> None:
        for (x, y), r in beta.entries.items():
            if x != y and edge_class[(x, y)] == i:
                _accumulate(R, acc, (x, y), f.apply(R, r))
        ft = f.apply(R, beta[(t, t)])
        for x, vx in blocks:
            d = R.sub(f.apply(R, beta[(x, x)]), ft)
            if not R.is_zero(d):
                for y in vx:
                    _accumulate(R, acc, (y, y), d)

    return run


def _compile_proper_part(term: ProperPart, P: Preorder, R: Ring) -> Evaluator:
    ncomp = len(P.components)
    missing = [j for j in range(ncomp) if j not in term.assign]
    if missing:
        raise MissingComponentError(f"no derivation given for components {missing}")
    G = _check_derivations(R, term.assign, range(ncomp), "component")
    comp = P.component_of

    def run(beta: FiElement, acc: dict) -> None:
        for (x, y), r in beta.entries.items():
            d = G.get(comp[x])
            if d is not None:
                _accumulate(R, acc, (x, y), d.apply(R, r))

    return run


_COMPILERS = {
    Inner: _compile_inner,
    Transitive: _compile_transitive,
    AdditiveInduced: _compile_additive_induced,
    CentralTrace: _compile_central_trace,
    Witness: _compile_witness,
    ProperPart: _compile_proper_part,
}


# ---------------------------------------------------------------------------
# maps


class _MapArithmetic:
    preorder: Preorder
    ring: Ring

    def __call__(self, beta: FiElement) -> FiElement:
        raise NotImplementedError

    def _check_input(self, beta: FiElement) -> None:
        if beta.ring != self.ring or not (
            beta.preorder is self.preorder or beta.preorder == self.preorder
        ):
            raise StructureMismatchError("map applied to an element of another algebra")

    def __add__(self, other):
        if not isinstance(other, _MapArithmetic):
            return NotImplemented
        a, b = self, other
        return BlackBoxMap(self.preorder, self.ring, lambda beta: a(beta) + b(beta), "sum")

    def __sub__(self, other):
        if not isinstance(other, _MapArithmetic):
            return NotImplemented
        a, b = self, other
        return BlackBoxMap(self.preorder, self.ring, lambda beta: a(beta) - b(beta), "difference")


@dataclass(frozen=True, eq=False)
class MapSpec(_MapArithmetic):
    """A sum of primitive terms over a fixed pre-order and ring."""

    preorder: Preorder
    ring: Ring
    terms: tuple = ()
    _evaluators: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        evaluators = []
        for term in self.terms:
            compiler = _COMPILERS.get(type(term))
            if compiler is None:
                raise MapSpecError(f"unknown term {term!r}")
            evaluators.append(compiler(term, self.preorder, self.ring))
        object.__setattr__(self, "_evaluators", tuple(evaluators))

    def __call__(self, beta: FiElement) -> FiElement:
        self._check_input(beta)
        acc: dict = {}
        for run in self._evaluators:
            run(beta, acc)
        is_zero = self.ring.is_zero
        return FiElement._raw(
            self.preorder, self.ring, {k: v for k, v in acc.items() if not is_zero(v)}
        )

    def eval(self, beta: FiElement) -> FiElement:
        return self(beta)

    def __add__(self, other):
        if isinstance(other, MapSpec):
            if other.ring != self.ring or other.preorder != self.preorder:
                raise StructureMismatchError("cannot add maps over different algebras")
            return MapSpec(self.preorder, self.ring, self.terms + other.terms)
        return super().__add__(other)

    @property
    def classification(self) -> EdgeClassification:
        return self.preorder.classification


@dataclass(frozen=True, eq=False)
class BlackBoxMap(_MapArithmetic):
    """An opaque pure map; only evaluation is available."""

    preorder: Preorder
    ring: Ring
    fn: Callable[[FiElement], FiElement] = field(repr=False)
    label: str = "black box"

    def __call__(self, beta: FiElement) -> FiElement:
        self._check_input(beta)
        return self.fn(beta)


def zero_map(P: Preorder, R: Ring) -> MapSpec:
    return MapSpec(P, R, ())


# ---------------------------------------------------------------------------
# constructors with validation


def make_transitive(P: Preorder, R: Ring, table: Mapping) -> MapSpec:
    """Validated transitive term; missing pairs count as 0."""
    return MapSpec(P, R, (Transitive(_check_table(P, R, table)),))


def is_trivial_transitive(P: Preorder, R: Ring, f: Mapping) -> tuple | None:
    """``sigma`` with ``f(x, y) = sigma(x) - sigma(y)`` for all ``x <= y``, else ``None``.

    ``sigma`` is propagated along a BFS spanning tree of each component
    (rooted at its least vertex with ``sigma = 0``) and then checked on every
    comparable pair.
    """
    zero = R.zero
    get = lambda k: f.get(k, zero)  # noqa: E731
    sigma: list = [None] * P.size
    for members in P.components:
        root = members[0]
        sigma[root] = zero
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in P.neighbors[u]:
                if sigma[v] is None:
                    if P.le(u, v):
                        sigma[v] = R.sub(sigma[u], get((u, v)))
                    else:
                        sigma[v] = R.add(sigma[u], get((v, u)))
                    queue.append(v)
    for x, y in P.pairs:
        if R.sub(sigma[x], sigma[y]) != get((x, y)):
            return None
    return tuple(sigma)


def witness_base_points(C: EdgeClassification, class_id: int) -> tuple[int, ...]:
    """Vertices of the class with no equivalent partner, ascending.

    Never empty when the host component carries another class: a cut vertex
    joining two blocks cannot have an equivalent partner.
    """
    P = C.preorder
    return tuple(
        t for t in sorted(C.class_vertices[class_id])
        if not any(P.equivalent(t, y) for y in P.neighbors[t])
    )


def make_witness(
    C: EdgeClassification, ring: Ring, class_id: int, t: int, f: AdditiveDerivation
) -> MapSpec:
    """The non-proper Lie derivation concentrated on one edge class."""
    if not 0 <= class_id < len(C.classes):
        raise MapSpecError(f"unknown class {class_id!r}")
    if t not in C.class_vertices[class_id]:
        raise WitnessVertexError(f"vertex {t} is not on class {class_id}")
    if t not in witness_base_points(C, class_id):
        raise WitnessEquivalentBaseError(f"vertex {t} has an equivalent partner")
    if f.is_zero:
        raise WitnessZeroDerivationError("the witness needs a nonzero ring derivation")
    host = C.class_component[class_id]
    if len(C.component_classes[host]) < 2:
        raise WitnessSingleClassError(
            f"component {host} carries a single class; the witness would be proper"
        )
    return MapSpec(C.preorder, ring, (Witness(class_id, t, f),))


def make_proper_part(P: Preorder, R: Ring, G: Mapping[int, AdditiveDerivation]) -> MapSpec:
    """``r e_xy -> G[j](r) e_xy`` on component ``j``; an additive derivation."""
    return MapSpec(P, R, (ProperPart(dict(G)),))


def inner(alpha: FiElement) -> MapSpec:
    return MapSpec(alpha.preorder, alpha.ring, (Inner(alpha),))


def additive_induced(P: Preorder, R: Ring, assign: Mapping[int, AdditiveDerivation]) -> MapSpec:
    return MapSpec(P, R, (AdditiveInduced(dict(assign)),))


def central_trace(P: Preorder, R: Ring, h: Mapping[int, Sequence[int]]) -> MapSpec:
    return MapSpec(P, R, (CentralTrace({j: tuple(c) for j, c in h.items()}),))
