"""When is every Lie n-derivation a derivation plus a central annihilating map?

The answer is combinatorial: exactly when no connected component carries two
distinct edge classes.  When a component does carry two, a derivation can act
on one class and not the other, and :func:`emit_witness` builds such a map.
"""
from __future__ import annotations

from dataclasses import dataclass

from .decompose import DecompositionReport
from .maps import (
    BlackBoxMap,
    Inner,
    MapSpec,
    ProperPart,
    Transitive,
    make_witness,
    witness_base_points,
)
from .preorder import EdgeClassification
from .ring import AdditiveDerivation, PolyRing, Ring
from .verify import ProbeBudget, Verdict, check_central_annihilating

__all__ = [
    "PropernessVerdict",
    "ProperForm",
    "ProperizeFailure",
    "NoNonzeroDerivationError",
    "CannotProperizeError",
    "properness_criterion",
    "check_quasi_additive_proper",
    "emit_witness",
    "properize",
]


class NoNonzeroDerivationError(ValueError):
    pass


class CannotProperizeError(ValueError):
    pass


@dataclass(frozen=True)
class PropernessVerdict:
    groups: tuple[tuple[int, ...], ...]  # class ids per component
    proper_capable: bool
    certificate: tuple[int, int, int] | None = None  # (component, class i, class j)

    def summary(self) -> str:
        if self.proper_capable:
            return "proper-capable: every Lie n-derivation is proper"
        comp, i, j = self.certificate
        return f"not proper-capable: component {comp} carries classes {i} and {j}"


def properness_criterion(C: EdgeClassification) -> PropernessVerdict:
    groups = C.component_classes
    for comp, ids in enumerate(groups):
        if len(ids) > 1:
            return PropernessVerdict(groups, False, (comp, ids[0], ids[1]))
    return PropernessVerdict(groups, True)


def check_quasi_additive_proper(report: DecompositionReport, C: EdgeClassification) -> Verdict:
    """Do classes sharing a component have identical probe tables?"""
    if report.class_probes is None:
        raise CannotProperizeError("the decomposition stopped before the class probes were taken")
    R = report.L.ring
    count = 0
    for comp, ids in enumerate(C.component_classes):
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                i, j = ids[a], ids[b]
                ti, tj = report.class_probes[i], report.class_probes[j]
                for r in ti:
                    count += 1
                    if ti[r] != tj[r]:
                        return Verdict(
                            "quasi_additive_proper", False, count, report.n, (comp, i, j, r),
                            ti[r], tj[r],
                            f"component {comp}: classes {i} and {j} differ at r={R.pretty(r)}",
                        )
    return Verdict("quasi_additive_proper", True, count, report.n)


def emit_witness(C: EdgeClassification, ring: Ring) -> MapSpec | None:
    """A Lie derivation that is not proper, or ``None`` if none can exist.

    Uses the certificate class, its least vertex without an equivalent
    partner, and ``d/dt``.
    """
    verdict = properness_criterion(C)
    if verdict.proper_capable:
        return None
    if not isinstance(ring, PolyRing):
        raise NoNonzeroDerivationError(
            f"no nonzero additive derivation available on {ring.name}"
        )
    _, i, _ = verdict.certificate
    t = witness_base_points(C, i)[0]
    return make_witness(C, ring, i, t, AdditiveDerivation.poly_times_ddt((1,)))


@dataclass(frozen=True)
class ProperForm:
    D: MapSpec
    kappa: BlackBoxMap
    verdict: Verdict  # central-annihilating check on kappa

    @property
    def ok(self) -> bool:
        return self.verdict.passed


@dataclass(frozen=True)
class ProperizeFailure:
    certificate: tuple[int, int, int]  # (component, class i, class j)
    verdict: Verdict

    ok = False


def properize(
    report: DecompositionReport, C: EdgeClassification, budget: ProbeBudget = ProbeBudget()
) -> ProperForm | ProperizeFailure:
    """Rewrite a decomposed map as ``D + kappa`` with ``D`` an additive derivation."""
    if report.fitted_derivs is None or not report.all_fitted:
        raise CannotProperizeError("cannot properize: class derivation not identified from probes")
    qa = check_quasi_additive_proper(report, C)
    if not qa.passed:
        comp, i, j, _ = qa.args
        return ProperizeFailure((comp, i, j), qa)
    L = report.L
    P, R = L.preorder, L.ring
    G = {
        comp: report.fitted_derivs[ids[0]] if ids else AdditiveDerivation.zero()
        for comp, ids in enumerate(C.component_classes)
    }
    D = MapSpec(P, R, (Inner(report.e_L), Transitive(dict(report.f)), ProperPart(G)))
    kappa = BlackBoxMap(P, R, lambda beta: L(beta) - D(beta), "L - D")
    return ProperForm(D, kappa, check_central_annihilating(kappa, report.n, budget))
