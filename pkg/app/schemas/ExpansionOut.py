from typing import List, Optional

from pydantic import BaseModel

from app.core.exact_core import BiSeries, format_poly
from app.core.expansion import OpExpansion
from app.utils.helpers import poly_to_json


class ExpansionOut(BaseModel):
    basis_mode: str
    order: int
    q_polys: List[List[str]]
    pretty: List[str]
    # indicator[n] is the λ^n coefficient of P(x;λ)
    indicator: Optional[List[List[str]]] = None
    verified: bool

    @classmethod
    def from_domain(cls, expansion: OpExpansion, indicator: Optional[BiSeries] = None) -> "ExpansionOut":
        return cls(
            basis_mode=expansion.basis_mode,
            order=expansion.order,
            q_polys=[poly_to_json(q) for q in expansion.q_polys],
            pretty=[format_poly(q) for q in expansion.q_polys],
            indicator=None if indicator is None else [poly_to_json(t) for t in indicator.terms],
            verified=expansion.verified,
        )

    def to_text(self) -> str:
        var = "x" if self.basis_mode == "x_hat" else "X_Q"
        lines = [f"T = Σ q_n({var}) Q^n on degrees <= {self.order}"]
        for n, q in enumerate(self.pretty):
            lines.append(f"  q_{n} = {q}")
        lines.append(f"reconstruction: {'PASS' if self.verified else 'FAIL'}")
        return "\n".join(lines)
