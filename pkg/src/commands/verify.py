"""
Verification suites.

Each suite reproduces a group of published numbers or re-checks a theorem on
seeded random states, and returns one CheckResult per check.
"""

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from ..config.constants import (
    CLASSICAL_FIDELITY,
    TELE_THRESHOLD_FIDELITY,
    TSIRELSON_BOUND,
    VerifySuite,
)
from ..config.settings import OptimizerSettings, Settings
from ..core.states import (
    PAULIS,
    bell_density,
    d_lambda_alpha,
    maximally_mixed,
    mix,
    psi_alpha,
    pure_density,
    random_density,
    random_pure_qubit,
    random_unit_vector,
    werner_state,
)
from ..inequalities.bell_chsh import beta_max, beta_oracle
from ..inequalities.tau_search import tau_max
from ..inequalities.tele_bell import (
    AssignmentClass,
    condition_bell,
    condition_class1,
    condition_class23,
    in_paper_region,
    tau_lower_bound,
    tele_value,
    threshold_check,
    zukowski_settings,
)
from ..protocol.teleportation import (
    bell_measure,
    fidelity_average,
    fidelity_for_state,
    fidelity_from_rotations,
    fidelity_standard_closed,
    standard_rotation_triple,
    standard_strategy,
)
from ..utils.helpers import parse_grid
from ..utils.logger import get_logger, log_check_result

WERNER_FIDELITY = 2.0 / 3.0 * (1.0 + (3.0 * math.sqrt(2.0) - 2.0) / 8.0)
WITNESS = (math.sqrt(3.0 / 5.0), math.sqrt(3.0) / 2.0)
TAU_TOL = 1e-6

DEFAULT_TRIALS = {
    VerifySuite.BETA_GE_TAU: 200,
    VerifySuite.THRESHOLD: 50,
    VerifySuite.PROTOCOL: 50,
}


@dataclass
class CheckResult:
    """Single verification check outcome."""
    name: str
    passed: bool
    detail: str = ""
    value: Optional[float] = None
    expected: Optional[float] = None


@dataclass
class VerifySummary:
    suite: VerifySuite
    checks: List[CheckResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> List[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in self.checks]
        out.append(
            f"{self.suite.value}: {len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed"
            f" in {self.elapsed:.1f}s"
        )
        return out


class VerificationRunner:
    """Runs the named suites against the configured optimizer."""

    def __init__(self, settings: Settings, seed: int = 0, trials: Optional[int] = None):
        self.settings = settings
        self.seed = seed
        self.trials = trials
        self.logger = get_logger("Verify")
        self._suites: Dict[VerifySuite, Callable[[], List[CheckResult]]] = {
            VerifySuite.PAPER_NUMBERS: self.paper_numbers,
            VerifySuite.BETA_GE_TAU: self.beta_ge_tau,
            VerifySuite.THRESHOLD: self.threshold,
            VerifySuite.CLASS_BOUNDS: self.class_bounds,
            VerifySuite.PROTOCOL: self.protocol,
        }
        self._checks: List[CheckResult] = []

    # ------------------------------------------------------------------

    def run(self, suite: VerifySuite) -> VerifySummary:
        start = time.perf_counter()
        self._checks = []
        self.logger.info(f"Running suite {suite.value} (seed {self.seed})")
        self._suites[suite]()
        return VerifySummary(suite=suite, checks=list(self._checks), elapsed=time.perf_counter() - start)

    def _trials(self, suite: VerifySuite) -> int:
        return self.trials if self.trials is not None else DEFAULT_TRIALS[suite]

    def _survey_optimizer(self) -> OptimizerSettings:
        """Lighter search for suites that run many states."""
        cfg = self.settings.optimizer
        return cfg.model_copy(update={"starts": min(cfg.starts, 4)})

    def _check(self, name: str, passed: bool, detail: str = "",
               value: Optional[float] = None, expected: Optional[float] = None) -> CheckResult:
        result = CheckResult(name=name, passed=bool(passed), detail=detail, value=value, expected=expected)
        log_check_result(self.logger, name, result.passed, detail)
        self._checks.append(result)
        return result

    def _close(self, name: str, value: float, expected: float, tol: float) -> CheckResult:
        err = abs(value - expected)
        return self._check(name, err <= tol, f"{value:.12g} vs {expected:.12g} (err {err:.2e}, tol {tol:.0e})",
                           value=value, expected=expected)

    def _at_most(self, name: str, value: float, bound: float) -> CheckResult:
        return self._check(name, value <= bound, f"{value:.12g} <= {bound:.12g}", value=value, expected=bound)

    # ------------------------------------------------------------------
    # Suites

    def paper_numbers(self) -> List[CheckResult]:
        cfg = self.settings.optimizer
        phi_plus = bell_density("Phi+")

        self._close("zukowski tele_value on Phi+", tele_value(phi_plus, zukowski_settings()), TSIRELSON_BOUND, 1e-9)
        self._close("tau_max on Phi+", tau_max(phi_plus, cfg).tau_raw, TSIRELSON_BOUND, 1e-4)
        self._close("beta_max on Phi+", beta_max(phi_plus), TSIRELSON_BOUND, 1e-9)
        self._close("F_st on Phi+", fidelity_standard_closed(phi_plus), 1.0 / 3.0, 1e-12)

        curve_err, oracle_err = 0.0, 0.0
        for k in range(11):
            alpha = k / 10.0
            d = pure_density(psi_alpha(alpha))
            expected = 2.0 * math.sqrt(1.0 + 4.0 * alpha ** 2 * (1.0 - alpha ** 2))
            value = beta_max(d)
            curve_err = max(curve_err, abs(value - expected))
            oracle_err = max(oracle_err, abs(beta_oracle(d, settings=self.settings.oracle) - value))
        self._check("pure-state beta curve", curve_err <= 1e-9, f"max err {curve_err:.2e}")
        self._check("beta oracle on pure states", oracle_err <= 1e-3, f"max gap {oracle_err:.2e}")

        werner = werner_state()
        self._close("beta of Werner state", beta_max(werner), 2.0, 1e-9)
        self._at_most("tau of Werner state", tau_max(werner, cfg).tau_raw, 2.0 + TAU_TOL)
        self._close("F_st of Werner state", fidelity_standard_closed(werner), WERNER_FIDELITY, 1e-12)
        self._close("quadrature F of Werner state",
                    fidelity_average(werner, standard_strategy(), self.settings.quadrature), WERNER_FIDELITY, 2e-3)

        lam, alpha = WITNESS
        self._check("witness conditions",
                    condition_bell(lam, alpha) and condition_class1(lam, alpha) and condition_class23(lam, alpha),
                    f"(lambda, alpha) = ({lam:.7f}, {alpha:.7f})")
        witness = d_lambda_alpha(lam, alpha)
        self._close("beta at witness", beta_max(witness), 2.0 * math.sqrt(21.0 / 20.0), 1e-9)
        self._at_most("tau at witness", tau_max(witness, cfg).tau_raw, 2.0 + TAU_TOL)

        maximal = 1.0 / math.sqrt(2.0)
        self._check("maximal point outside region", not in_paper_region(1.0, maximal),
                    f"class1={condition_class1(1.0, maximal)} class23={condition_class23(1.0, maximal)}")
        never = [lam for lam in parse_grid("0:1:0.01") if in_paper_region(lam, maximal)]
        self._check("alpha^2(1-alpha^2)=1/4 never in region", not never, f"{len(never)} lambda values inside")

        self._check("tau lower bound below 2 at (.7746, .8660)",
                    tau_lower_bound(d_lambda_alpha(0.7746, 0.8660)) < 2.0,
                    f"{tau_lower_bound(d_lambda_alpha(0.7746, 0.8660)):.9f}")
        return self._checks

    def beta_ge_tau(self) -> List[CheckResult]:
        cfg = self._survey_optimizer()
        rng = np.random.default_rng(self.seed)
        trials = self._trials(VerifySuite.BETA_GE_TAU)
        worst, failures = math.inf, 0
        for i in range(trials):
            d = random_density(rng, rank=1 + i % 4)
            gap = beta_max(d) - tau_max(d, cfg).tau_raw
            worst = min(worst, gap)
            if gap < -TAU_TOL:
                failures += 1
                self._check(f"beta >= tau trial {i}", False, f"gap {gap:.3e}")
        self._check("beta >= tau on random densities", failures == 0,
                    f"{trials - failures}/{trials} pass, smallest gap {worst:.3e}")
        return self._checks

    def threshold(self) -> List[CheckResult]:
        cfg = self._survey_optimizer()
        rng = np.random.default_rng(self.seed)
        trials = self._trials(VerifySuite.THRESHOLD)
        singlet = bell_density("Psi-")
        tested, failures = 0, 0
        while tested < trials:
            noise = random_density(rng, rank=int(rng.integers(1, 5)))
            d = mix(noise, singlet, float(rng.uniform(0.0, 0.09)))
            check = threshold_check(d)
            if check.f_st <= TELE_THRESHOLD_FIDELITY:
                continue
            tested += 1
            tau = tau_max(d, cfg).tau_raw
            if not (tau > 2.0 and tau >= check.bound_value - TAU_TOL):
                failures += 1
                self._check(f"threshold trial {tested}", False,
                            f"f_st {check.f_st:.6f} tau {tau:.9f} bound {check.bound_value:.9f}")
        self._check("tau > 2 above the fidelity threshold", failures == 0, f"{trials - failures}/{trials} pass")
        self._check("tau lower bound below 2 at (.7746, .8660)",
                    tau_lower_bound(d_lambda_alpha(0.7746, 0.8660)) < 2.0)
        return self._checks

    def class_bounds(self) -> List[CheckResult]:
        cfg = self.settings.optimizer.model_copy(update={"starts": 0})
        grid = parse_grid("0:1:0.05")
        worst_1, worst_23, count_1, count_23 = 0.0, 0.0, 0, 0
        for lam in grid:
            for alpha in grid:
                d = None
                if condition_class1(lam, alpha):
                    d = d_lambda_alpha(lam, alpha)
                    result = tau_max(d, cfg, classes=[AssignmentClass.I])
                    worst_1 = max(worst_1, result.per_class_max[AssignmentClass.I])
                    count_1 += 1
                if condition_class23(lam, alpha):
                    d = d or d_lambda_alpha(lam, alpha)
                    result = tau_max(d, cfg, classes=[AssignmentClass.II, AssignmentClass.III])
                    worst_23 = max(worst_23, *result.per_class_max.values())
                    count_23 += 1
        self._at_most(f"Class I maximum where class1 holds ({count_1} points)", worst_1, 2.0 + TAU_TOL)
        self._at_most(f"Class II/III maximum where class23 holds ({count_23} points)", worst_23, 2.0 + TAU_TOL)
        return self._checks

    def protocol(self) -> List[CheckResult]:
        rng = np.random.default_rng(self.seed)
        trials = self._trials(VerifySuite.PROTOCOL)
        strategy = standard_strategy()
        singlet = bell_density("Psi-")
        mixed = maximally_mixed()

        singlet_err, mixed_err, prob_err = 0.0, 0.0, 0.0
        for _ in range(trials):
            phi = random_pure_qubit(rng)
            singlet_err = max(singlet_err, abs(fidelity_for_state(phi, singlet, strategy) - 1.0))
            mixed_err = max(mixed_err, abs(fidelity_for_state(phi, mixed, strategy) - 0.5))
            total = sum(o.probability for o in bell_measure(phi, random_density(rng, rank=4)))
            prob_err = max(prob_err, abs(total - 1.0))
        self._check("singlet channel teleports perfectly", singlet_err <= 1e-12, f"max err {singlet_err:.2e}")
        self._check("maximally mixed channel gives 1/2", mixed_err <= 1e-12, f"max err {mixed_err:.2e}")
        self._check("outcome probabilities sum to 1", prob_err <= 1e-10, f"max err {prob_err:.2e}")

        triple = standard_rotation_triple()
        path_err = 0.0
        for i in range(trials):
            d = random_density(rng, rank=1 + i % 4)
            path_err = max(path_err, abs(fidelity_from_rotations(d, triple) - fidelity_standard_closed(d)))
        self._check("rotation pathway matches closed form", path_err <= 1e-12, f"max err {path_err:.2e}")

        rot_err = 0.0
        for n in range(1, 5):
            u = strategy[n]
            for _ in range(20):
                b = random_unit_vector(rng)
                lhs = u @ np.einsum("k,kij->ij", b, PAULIS) @ u.conj().T
                rhs = np.einsum("k,kij->ij", triple.o_matrices[n].T @ b, PAULIS)
                rot_err = max(rot_err, float(np.max(np.abs(lhs - rhs))))
        self._check("U_n rotations match O_n", rot_err <= 1e-12, f"max err {rot_err:.2e}")

        quad_err = 0.0
        for i in range(min(trials, 10)):
            d = random_density(rng, rank=1 + i % 4)
            quad_err = max(quad_err, abs(fidelity_average(d, strategy, self.settings.quadrature)
                                         - fidelity_standard_closed(d)))
        self._check("quadrature matches closed form", quad_err <= 2e-3, f"max err {quad_err:.2e}")

        werner = werner_state()
        self._close("quadrature F of Werner state",
                    fidelity_average(werner, strategy, self.settings.quadrature), WERNER_FIDELITY, 2e-3)
        self._check("Werner fidelity is nonclassical", fidelity_standard_closed(werner) > CLASSICAL_FIDELITY)
        return self._checks


def cmd_verify(suite: str, settings: Settings, seed: int = 0, trials: Optional[int] = None) -> VerifySummary:
    """Run one suite by name. Raises ValueError for unknown names."""
    try:
        selected = VerifySuite(suite)
    except ValueError as e:
        raise ValueError(f"unknown suite {suite!r}; choose from {[s.value for s in VerifySuite]}") from e
    return VerificationRunner(settings, seed=seed, trials=trials).run(selected)
