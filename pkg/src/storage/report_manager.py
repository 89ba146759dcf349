"""
Report manager for saved verification runs.
"""

import json
import sys
from datetime import datetime
from pathlib import Path
from typing import List, Optional

from ..models.schemas import GridReport


def _safe_name(name: str) -> str:
    safe = "".join(c if c.isalnum() or c in (" ", "-", "_") else "_" for c in name)
    return safe.replace(" ", "_").lower()


class ReportManager:
    """Manages verification report directories and their report.json files."""

    def __init__(self, reports_dir: Path = Path("reports")):
        """
        Initialize report manager.

        Args:
            reports_dir: Root directory for all reports
        """
        self.reports_dir = Path(reports_dir)
        self.reports_dir.mkdir(parents=True, exist_ok=True)

    def create_run_dir(self, run_name: str) -> Path:
        """
        Create a timestamped directory for a run.

        Args:
            run_name: Name of the run

        Returns:
            Path to the run directory
        """
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        run_dir = self.reports_dir / f"{_safe_name(run_name)}_{timestamp}"
        run_dir.mkdir(parents=True, exist_ok=True)
        return run_dir

    def save_report(self, report: GridReport) -> Path:
        """
        Save a report as report.json in a fresh run directory.

        Args:
            report: GridReport to save

        Returns:
            Path of the written file
        """
        report_path = self.create_run_dir(report.name) / "report.json"
        with open(report_path, "w", encoding="utf-8") as f:
            json.dump(report.model_dump(mode="json"), f, indent=2, default=str, ensure_ascii=False)
        print(f"💾 Saved report to {report_path}", file=sys.stderr)
        return report_path

    def load_report(self, run_name: str) -> Optional[GridReport]:
        """
        Load the most recent report saved under a name.

        Args:
            run_name: Name of the run

        Returns:
            GridReport or None if not found
        """
        matching_dirs = list(self.reports_dir.glob(f"{_safe_name(run_name)}_*"))
        if not matching_dirs:
            return None
        run_dir = max(matching_dirs, key=lambda p: p.name)
        report_path = run_dir / "report.json"
        if not report_path.exists():
            return None
        with open(report_path, "r", encoding="utf-8") as f:
            data = json.load(f)
        return GridReport(**data)

    def list_reports(self) -> List[dict]:
        """List all saved reports, newest first."""
        reports = []
        for run_dir in self.reports_dir.iterdir():
            report_path = run_dir / "report.json"
            if not (run_dir.is_dir() and report_path.exists()):
                continue
            try:
                with open(report_path, "r", encoding="utf-8") as f:
                    data = json.load(f)
                reports.append(
                    {
                        "name": run_dir.name,
                        "passed": data.get("passed"),
                        "failed": data.get("failed"),
                        "inconclusive": data.get("inconclusive"),
                        "timestamp": data.get("timestamp"),
                    }
                )
            except Exception:
                pass
        return sorted(reports, key=lambda r: r.get("timestamp") or "", reverse=True)
