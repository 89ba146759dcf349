"""
Storage of verification reports.
"""

from .report_manager import ReportManager

__all__ = ["ReportManager"]
