"""
Report Generator for the Matroid Selection Toolkit
Builds deterministic JSON reports for CLI runs
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .logger import LoggerSetup
from .rationals import to_jsonable

logger = LoggerSetup.get_logger("matroid_selection.report_generator")

REPORT_VERSION = "1.0"


class ReportEnvelope(BaseModel):
    """Top-level report layout shared by every subcommand"""
    report_version: str = REPORT_VERSION
    command: str
    status: str
    exit_code: int = 0
    config: Dict[str, Any] = Field(default_factory=dict)
    result: Dict[str, Any] = Field(default_factory=dict)
    error: Optional[Dict[str, Any]] = None
    timing: Optional[Dict[str, float]] = None


class ReportGenerator:
    """Generate run reports; wall-clock data only when timing is requested"""

    @classmethod
    def generate_report(
        cls,
        command: str,
        result: Dict[str, Any],
        run_config: Optional[Dict[str, Any]] = None,
        passed: bool = True,
        timing: Optional[Dict[str, float]] = None
    ) -> Dict[str, Any]:
        """
        Generate a run report

        Args:
            command: Subcommand name
            result: Subcommand payload (Fractions allowed)
            run_config: Effective configuration
            passed: Overall property outcome
            timing: Stage durations, included only when given

        Returns:
            Report dict
        """
        envelope = ReportEnvelope(
            command=command,
            status="pass" if passed else "fail",
            exit_code=0 if passed else 1,
            config=to_jsonable(run_config or {}),
            result=to_jsonable(result),
            timing=timing,
        )
        logger.debug(f"Generated report for {command}: {envelope.status}")
        return envelope.model_dump(exclude_none=True)

    @classmethod
    def generate_error_report(cls, command: str, error_message: str, exit_code: int,
                              kind: str = "error") -> Dict[str, Any]:
        """Report for a run aborted by bad input or an exhausted budget"""
        envelope = ReportEnvelope(
            command=command,
            status="error",
            exit_code=exit_code,
            error={"type": kind, "message": error_message},
        )
        logger.debug(f"Generated error report for {command}")
        return envelope.model_dump(exclude_none=True)

    @classmethod
    def generate_summary_text(cls, report: Dict[str, Any]) -> str:
        """One-screen text rendering for the console"""
        icon = {"pass": "✓", "fail": "✗"}.get(report["status"], "!")
        lines = [f"{icon} {report['command']} - {report['status'].upper()}", "=" * 60]
        if "error" in report:
            lines.append(f"  • {report['error']['type']}: {report['error']['message']}")
        for key, value in report.get("result", {}).items():
            if isinstance(value, (dict, list)):
                continue
            lines.append(f"  • {key}: {value}")
        lines.append("=" * 60)
        return "\n".join(lines) + "\n"

    @staticmethod
    def dumps(report: Dict[str, Any]) -> str:
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def save_report(cls, report: Dict[str, Any], path: Path) -> Path:
        """
        Save report to file

        Args:
            report: Report dictionary
            path: Target JSON path; parents are created

        Returns:
            Path to saved report
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(cls.dumps(report))
        logger.info(f"Report saved to {path}")
        return path

    @classmethod
    def generate_batch_summary(cls, checks: List[Dict[str, Any]]) -> Dict[str, Any]:
        """Pass/fail counts over a list of check records carrying a `passed` key"""
        failed = [c for c in checks if not c.get("passed", False)]
        return {"total": len(checks), "passed": len(checks) - len(failed), "failed": len(failed)}


__all__ = ['REPORT_VERSION', 'ReportEnvelope', 'ReportGenerator']
