"""Command workflows: configuration, execution and reports."""
from stabkit.workflows.models import ErrorInfo, Report, RunConfig
from stabkit.workflows.runner import run

__all__ = ["ErrorInfo", "Report", "RunConfig", "run"]
