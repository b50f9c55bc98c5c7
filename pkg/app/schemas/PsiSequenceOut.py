from typing import List, Optional

from pydantic import BaseModel

from app.core.psi_sequence import PsiSequence
from app.utils.helpers import fmt_scalar


class PsiSequenceOut(BaseModel):
    label: str
    cap: int
    q: Optional[str] = None
    n_psi: List[str]
    psi_values: List[str]
    factorials: List[str]

    @classmethod
    def from_domain(cls, psi: PsiSequence) -> "PsiSequenceOut":
        return cls(
            label=psi.label,
            cap=psi.cap,
            q=None if psi.q is None else fmt_scalar(psi.q),
            n_psi=[fmt_scalar(v) for v in psi.n_psi],
            psi_values=[fmt_scalar(v) for v in psi.psi_vals],
            factorials=[fmt_scalar(psi.factorial(n)) for n in range(psi.cap + 1)],
        )
