import logging
from typing import List, Optional, Sequence

import numpy as np

from app.core.psi_sequence import PsiSequence
from app.helpers.errors import CalculusError, InputError
from app.models.suites import SUITES, Checks, SuiteContext
from app.schemas import SuiteResult, VerifyReport

logger = logging.getLogger(__name__)


class VerificationModel:
    def __init__(self, psi: PsiSequence, seed: int = 0, trials: int = 10, shift_samples: Sequence = (1,)):

        self.psi = psi
        self.seed = seed
        self.trials = trials
        self.shift_samples = list(shift_samples)

    def _context(self, name: str) -> SuiteContext:
        # one stream per suite, so results do not depend on which suites run
        index = list(SUITES).index(name)
        rng = np.random.default_rng([self.seed, index])
        trials = max(self.trials, SUITES[name].min_trials)
        return SuiteContext(self.psi, rng, trials, self.shift_samples)

    def run_suite(self, name: str) -> SuiteResult:
        suite = SUITES[name]
        checks = Checks()
        try:
            suite.run(self._context(name), checks)
        except CalculusError as e:
            checks.check(f"{type(e).__name__}: {e}", False)

        if suite.report_only:
            status = "REPORT-ONLY"
        else:
            status = "PASS" if checks.passed else "FAIL"
        logger.info("suite %s: %s", name, status)
        return SuiteResult(name=name, status=status, report_only=suite.report_only, details=checks.details())

    def run(self, names: Optional[List[str]] = None) -> VerifyReport:
        """Run the named suites (all by default) in manifest order."""
        names = list(SUITES) if not names else names
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise InputError(f"unknown suites {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        ordered = [n for n in SUITES if n in names]
        return VerifyReport(
            psi=self.psi.label,
            cap=self.psi.cap,
            seed=self.seed,
            trials=self.trials,
            suites=[self.run_suite(name) for name in ordered],
        )
