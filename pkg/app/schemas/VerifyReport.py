from typing import List

from pydantic import BaseModel

from .SuiteResult import SuiteResult


class VerifyReport(BaseModel):
    psi: str
    cap: int
    seed: int
    trials: int
    suites: List[SuiteResult]

    @property
    def ok(self) -> bool:
        return all(s.status != "FAIL" for s in self.suites)

    def to_text(self) -> str:
        lines = [f"verify: psi = {self.psi}, cap = {self.cap}, seed = {self.seed}, trials = {self.trials}"]
        for suite in self.suites:
            lines.append(f"  {suite.name:<20} {suite.status}")
            for detail in suite.details:
                lines.append(f"      {detail}")
        return "\n".join(lines)
