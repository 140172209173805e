"""
Instance Validator for the Matroid Selection Toolkit
Checks every type invariant and reports violations instead of raising
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from ..core.config import config
from ..core.model import GraphicGround, Instance, LaminarFamily
from ..utils.logger import get_logger

logger = get_logger("matroid_selection.validator")


@dataclass(frozen=True)
class Violation:
    """One broken invariant, located by bin or element index"""
    code: str
    message: str
    element: Optional[int] = None
    bin: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message,
                "element": self.element, "bin": self.bin}


@dataclass
class ValidationReport:
    """Outcome of validate(); `first` is the earliest violation found"""
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


class InstanceValidator:
    """Validate instances against the model invariants"""

    @classmethod
    def validate(cls, instance: Instance) -> ValidationReport:
        """
        Check distributions and the ground structure

        Args:
            instance: Instance to check

        Returns:
            ValidationReport (never raises)
        """
        report = ValidationReport()
        cls._check_distributions(instance, report)
        if isinstance(instance.ground, LaminarFamily):
            cls._check_laminar(instance.ground, instance.n, report)
        elif isinstance(instance.ground, GraphicGround):
            cls._check_graphic(instance.ground, instance.n, report)
        else:
            report.violations.append(Violation("ground", "unknown ground type"))

        if not report.ok:
            logger.debug(f"Instance invalid: {report.first.message}")
        return report

    @staticmethod
    def _check_distributions(instance: Instance, report: ValidationReport) -> None:
        for t, dist in enumerate(instance.distributions):
            if not dist.atoms:
                report.violations.append(Violation("empty-distribution", "distribution has no atoms", element=t))
                continue
            values = [a.value for a in dist.atoms]
            if len(set(values)) != len(values):
                report.violations.append(Violation("duplicate-atom", "atom values not distinct", element=t))
            for atom in dist.atoms:
                if atom.prob <= 0:
                    report.violations.append(Violation("probability", f"probability {float(atom.prob):g} not positive", element=t))
                if atom.value < 0:
                    report.violations.append(Violation("negative-value", f"value {float(atom.value):g} negative", element=t))
            total = dist.mass
            off = total != 1 if dist.exact else abs(float(total) - 1.0) > config.PROB_TOL
            if off:
                report.violations.append(Violation("mass", f"mass {float(total):g}", element=t))

    @staticmethod
    def _check_laminar(family: LaminarFamily, n: int, report: ValidationReport) -> None:
        for i, b in enumerate(family.bins):
            if not b.members:
                report.violations.append(Violation("empty-bin", "bin has no members", bin=i))
            if b.capacity < 0:
                report.violations.append(Violation("capacity", f"capacity {b.capacity} negative", bin=i))
            bad = [e for e in b.members if not 0 <= e < n]
            if bad:
                report.violations.append(Violation("index", f"member {min(bad)} outside 0..{n - 1}", bin=i, element=min(bad)))
        for i, a in enumerate(family.bins):
            for j in range(i + 1, len(family.bins)):
                b = family.bins[j]
                if a.members == b.members:
                    report.violations.append(Violation("duplicate-bin", f"bins {i} and {j} have identical members", bin=j))
                elif a.members & b.members and not (a.members <= b.members or b.members <= a.members):
                    report.violations.append(Violation("crossing", "crossing bins", bin=j))

    @staticmethod
    def _check_graphic(graph: GraphicGround, n: int, report: ValidationReport) -> None:
        if graph.vertex_count <= 0:
            report.violations.append(Violation("vertices", "vertex count must be positive"))
        if len(graph.edges) != n:
            report.violations.append(Violation("edge-count", f"{len(graph.edges)} edges for {n} elements"))
        for t, (a, b) in enumerate(graph.edges):
            if not (0 <= a < graph.vertex_count and 0 <= b < graph.vertex_count):
                report.violations.append(Violation("endpoint", f"edge ({a},{b}) endpoint out of range", element=t))
            elif a == b:
                report.violations.append(Violation("self-loop", f"self-loop at vertex {a}", element=t))


__all__ = ['Violation', 'ValidationReport', 'InstanceValidator']
