from typing import List

from pydantic import BaseModel

from app.core.psi_sequence import PsiSequence
from app.core.special_functions import TRIG_KINDS, exp_psi, trig_psi
from app.utils.helpers import fmt_scalar

from .PsiSequenceOut import PsiSequenceOut
from .PsiSeriesOut import PsiSeriesOut


class TableOut(BaseModel):
    psi: PsiSequenceOut
    # binomials[n][k] = (n k)ψ
    binomials: List[List[str]]
    exp_coeffs: List[str]
    series: List[PsiSeriesOut] = []

    @classmethod
    def from_domain(cls, psi: PsiSequence, order: int) -> "TableOut":
        series = [exp_psi(psi, order)] + [trig_psi(psi, kind, order) for kind in TRIG_KINDS]
        return cls(
            psi=PsiSequenceOut.from_domain(psi),
            binomials=[[fmt_scalar(psi.binomial(n, k)) for k in range(n + 1)] for n in range(order + 1)],
            exp_coeffs=[fmt_scalar(c) for c in psi.psi_vals[: order + 1]],
            series=[PsiSeriesOut.from_domain(s) for s in series],
        )

    def to_text(self) -> str:
        order = len(self.binomials) - 1
        lines = [f"psi = {self.psi.label}" + (f", q = {self.psi.q}" if self.psi.q else "")]
        lines.append(f"{'n':>3}  {'n_psi':>14}  {'n_psi!':>20}  {'1/n_psi!':>20}")
        for n in range(order + 1):
            lines.append(
                f"{n:>3}  {self.psi.n_psi[n]:>14}  {self.psi.factorials[n]:>20}  {self.exp_coeffs[n]:>20}"
            )
        lines.append("psi-binomial triangle:")
        for n, row in enumerate(self.binomials):
            lines.append(f"  n={n}: " + " ".join(row))
        for s in self.series[1:]:
            lines.append(f"{s.kind}: " + " ".join(s.coeffs))
        return "\n".join(lines)
