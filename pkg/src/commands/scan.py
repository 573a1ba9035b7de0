"""
(lambda, alpha) region scan over the D_{lambda,alpha} family.

Grid points are independent jobs for a process pool. Records come back in
grid order (lambda outer, alpha inner) whatever the completion order.
"""

import asyncio
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import pandas as pd

from ..config.constants import CLASSICAL_FIDELITY, LHV_BOUND, SCAN_COLUMNS
from ..config.settings import OptimizerSettings, Settings
from ..core.exceptions import GridSpecError, ReportOutputError
from ..core.states import d_lambda_alpha
from ..inequalities.bell_chsh import beta_max
from ..inequalities.tau_search import tau_max
from ..inequalities.tele_bell import in_paper_region
from ..protocol.teleportation import fidelity_standard_closed
from ..reports.models import ScanRecord
from ..utils.helpers import ensure_parent_dir, format_float, parse_grid
from ..utils.logger import get_logger, log_scan_progress
from ..utils.validators import validate_grid_spec, validate_output_path


def compute_scan_point(lam: float, alpha: float, optimizer: Dict[str, Any]) -> Dict[str, Any]:
    """Evaluate one grid point; module-level so worker processes can pickle it."""
    d = d_lambda_alpha(lam, alpha)
    beta = beta_max(d)
    tau = tau_max(d, OptimizerSettings(**optimizer))
    f_st = fidelity_standard_closed(d)
    return {
        "lambda": lam,
        "alpha": alpha,
        "beta": beta,
        "tau_raw": tau.tau_raw,
        "f_st": f_st,
        "bell_violating": beta > LHV_BOUND,
        "tele_violating": tau.tau_raw > LHV_BOUND,
        "nonclassical_fidelity": f_st > CLASSICAL_FIDELITY,
        "in_paper_region": in_paper_region(lam, alpha),
    }


def parse_scan_grid(spec: str, name: str) -> List[float]:
    if not validate_grid_spec(spec):
        raise GridSpecError(f"invalid {name} grid {spec!r}; expected start:stop:step inside [0, 1]")
    return parse_grid(spec)


async def run_scan(
    lambdas: Sequence[float],
    alphas: Sequence[float],
    settings: Settings,
) -> List[ScanRecord]:
    """Evaluate the full grid, in parallel when more than one worker is allowed."""
    logger = get_logger("Scan")
    points = [(lam, alpha) for lam in lambdas for alpha in alphas]
    payload = settings.optimizer.model_dump()
    workers = min(settings.scan.worker_count(), len(points))
    logger.info(f"Scanning {len(lambdas)}x{len(alphas)} grid with {workers} worker(s)")

    if workers <= 1:
        rows = []
        for i, (lam, alpha) in enumerate(points, start=1):
            rows.append(compute_scan_point(lam, alpha, payload))
            if i % max(1, len(points) // 10) == 0:
                log_scan_progress(logger, i, len(points))
    else:
        loop = asyncio.get_running_loop()
        done = 0
        step = max(1, len(points) // 10)

        def _progress(_future):
            nonlocal done
            done += 1
            if done % step == 0:
                log_scan_progress(logger, done, len(points))

        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = []
            for lam, alpha in points:
                future = loop.run_in_executor(pool, compute_scan_point, lam, alpha, payload)
                future.add_done_callback(_progress)
                futures.append(future)
            rows = await asyncio.gather(*futures)

    return [ScanRecord(**row) for row in rows]


def write_scan_csv(records: Sequence[ScanRecord], path: Union[str, Path]) -> None:
    if not validate_output_path(path):
        raise ReportOutputError(f"cannot write scan to {path}")
    frame = pd.DataFrame([r.as_row() for r in records], columns=SCAN_COLUMNS)
    try:
        frame.to_csv(ensure_parent_dir(path), index=False, float_format=format_float)
    except OSError as e:
        raise ReportOutputError(f"cannot write scan to {path}: {e}") from e


async def cmd_scan(
    lambda_spec: str,
    alpha_spec: str,
    out_path: Union[str, Path],
    settings: Settings,
) -> List[ScanRecord]:
    """Parse the grids, run the scan and write the CSV."""
    lambdas = parse_scan_grid(lambda_spec, "lambda")
    alphas = parse_scan_grid(alpha_spec, "alpha")
    if not validate_output_path(out_path):
        raise ReportOutputError(f"cannot write scan to {out_path}")
    records = await run_scan(lambdas, alphas, settings)
    write_scan_csv(records, out_path)
    region = sum(1 for r in records if r.in_paper_region)
    get_logger("Scan").info(f"Wrote {len(records)} records ({region} in region) to {out_path}")
    return records
