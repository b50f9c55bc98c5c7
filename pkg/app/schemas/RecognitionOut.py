from typing import List, Optional

from pydantic import BaseModel

from app.core.delta_umbral import RecognitionResult
from app.utils.helpers import fmt_scalar


class RecognitionOut(BaseModel):
    is_series: bool
    scale: str
    # b_table[n] lists b_(n,1)..b_(n,n)
    b_table: List[List[str]]
    n_psi: Optional[List[str]] = None
    q_coeffs: Optional[List[str]] = None
    preset: Optional[str] = None
    failure_witness: Optional[List[int]] = None
    predicted: Optional[str] = None
    actual: Optional[str] = None

    @classmethod
    def from_domain(cls, result: RecognitionResult) -> "RecognitionOut":
        return cls(
            is_series=result.is_series,
            scale=fmt_scalar(result.scale),
            b_table=[[fmt_scalar(b) for b in row] for row in result.b_table],
            n_psi=None if result.psi is None else [fmt_scalar(v) for v in result.psi.n_psi],
            q_coeffs=None if result.q_coeffs is None else [fmt_scalar(c) for c in result.q_coeffs],
            preset=result.preset,
            failure_witness=None if result.failure_witness is None else list(result.failure_witness),
            predicted=None if result.predicted is None else fmt_scalar(result.predicted),
            actual=None if result.actual is None else fmt_scalar(result.actual),
        )

    def to_text(self) -> str:
        if self.is_series:
            lines = [f"Q is a series in the psi-derivative (scale {self.scale})"]
            lines.append(f"  n_psi: {', '.join(self.n_psi)}")
            lines.append(f"  coefficients: {', '.join(self.q_coeffs)}")
            if self.preset:
                lines.append(f"  preset: {self.preset}")
            return "\n".join(lines)
        n, k = self.failure_witness
        return (
            "Q is not a series in any psi-derivative\n"
            f"  witness b_({n},{k}): predicted {self.predicted}, actual {self.actual}"
        )
