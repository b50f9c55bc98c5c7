from typing import List

from pydantic import BaseModel

from app.core.special_functions import PsiSeries
from app.utils.helpers import fmt_scalar


class PsiSeriesOut(BaseModel):
    kind: str
    psi: str
    coeffs: List[str]

    @classmethod
    def from_domain(cls, series: PsiSeries) -> "PsiSeriesOut":
        return cls(kind=series.kind, psi=series.psi.label, coeffs=[fmt_scalar(c) for c in series.coeffs])
