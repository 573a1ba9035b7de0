"""
Single-state analysis command.
"""

from pathlib import Path
from typing import Optional, Union

from .. import __version__
from ..config.constants import LHV_BOUND
from ..config.settings import Settings
from ..core.exceptions import ReportOutputError
from ..inequalities.bell_chsh import beta_max
from ..inequalities.tau_search import TauResult, tau_max
from ..inequalities.tele_bell import (
    condition_bell,
    condition_class1,
    condition_class23,
    tau_lower_bound,
    threshold_check,
)
from ..protocol.teleportation import classify_fidelity
from ..reports.models import AnalysisReport, ArgmaxSettings, FamilyConditions
from ..reports.state_spec import ParsedState, parse_state_spec
from ..utils.helpers import ensure_parent_dir
from ..utils.logger import get_logger, log_analysis_summary
from ..utils.validators import validate_output_path


def family_conditions(lam: float, alpha: float) -> FamilyConditions:
    bell = condition_bell(lam, alpha)
    class1 = condition_class1(lam, alpha)
    class23 = condition_class23(lam, alpha)
    return FamilyConditions(
        lam=lam,
        alpha=alpha,
        bell=bell,
        class1=class1,
        class23=class23,
        in_paper_region=bell and class1 and class23,
    )


def argmax_settings(result: TauResult) -> ArgmaxSettings:
    s = result.argmax
    return ArgmaxSettings(
        assignment_1=list(s.assignment_1.signs),
        assignment_2=list(s.assignment_2.signs),
        assignment_class=result.argmax_class.value,
        theta_1=s.theta_1,
        vartheta_1=s.vartheta_1,
        theta_2=s.theta_2,
        vartheta_2=s.vartheta_2,
        bob_1=[float(v) for v in s.bob_1],
        bob_2=[float(v) for v in s.bob_2],
    )


def build_report(parsed: ParsedState, settings: Settings) -> AnalysisReport:
    """Run every analysis on one channel state."""
    d = parsed.density
    beta = beta_max(d)
    tau = tau_max(d, settings.optimizer)
    threshold = threshold_check(d)

    conditions = family_conditions(*parsed.family) if parsed.family else None
    report = AnalysisReport(
        state=parsed.descriptor,
        beta=beta,
        tau_raw=tau.tau_raw,
        tau_lower_bound=tau_lower_bound(d),
        f_st=threshold.f_st,
        fidelity_class=classify_fidelity(threshold.f_st),
        threshold_bound=threshold.bound_value,
        threshold_implies_violation=threshold.implies_violation,
        bell_violating=beta > LHV_BOUND,
        tele_violating=tau.tau_raw > LHV_BOUND,
        conditions=conditions,
        argmax=argmax_settings(tau),
        per_class_max={label.value: value for label, value in tau.per_class_max.items()},
        optimizer_converged=tau.converged,
        version=__version__,
        seed=settings.optimizer.seed,
        optimizer=settings.optimizer,
    )
    log_analysis_summary(get_logger("Analyze"), parsed.descriptor, beta, tau.tau_raw, threshold.f_st)
    return report


def write_report(report: AnalysisReport, path: Union[str, Path]) -> None:
    if not validate_output_path(path):
        raise ReportOutputError(f"cannot write report to {path}")
    try:
        ensure_parent_dir(path).write_text(report.to_json() + "\n", encoding="utf-8")
    except OSError as e:
        raise ReportOutputError(f"cannot write report to {path}: {e}") from e


def cmd_analyze(
    spec: str,
    settings: Settings,
    json_path: Optional[Union[str, Path]] = None,
) -> AnalysisReport:
    """Parse a state spec, analyze it and optionally write the JSON report."""
    parsed = parse_state_spec(spec)
    report = build_report(parsed, settings)
    if json_path is not None:
        write_report(report, json_path)
        get_logger("Analyze").info(f"Report written to {json_path}")
    return report
