from typing import List

from pydantic import BaseModel, ConfigDict, Field

from app.core.exact_core import format_poly
from app.core.star_product import PoissonModel
from app.utils.helpers import fmt_scalar, poly_to_json


class PoissonOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    psi: str
    lam: str = Field(alias="lambda")
    M: int
    series_order: int
    # degrees on which every p_m satisfies the difference system
    guard_degree: int
    components: List[List[str]]
    # N(λ,x); π_m = p_m / N is reported through its two parts only
    normalizer: List[str]
    recurrence: bool
    normalized: bool
    operator_solution: bool
    pretty: List[str]

    @classmethod
    def from_domain(cls, model: PoissonModel, recurrence: bool, normalized: bool, operator_solution: bool) -> "PoissonOut":
        return cls(
            psi=model.psi.label,
            lam=fmt_scalar(model.lam),
            M=len(model.components) - 1,
            series_order=model.series_order,
            guard_degree=model.guard_degree,
            components=[poly_to_json(p) for p in model.components],
            normalizer=poly_to_json(model.normalizer),
            recurrence=recurrence,
            normalized=normalized,
            operator_solution=operator_solution,
            pretty=[format_poly(p) for p in model.components],
        )

    @property
    def ok(self) -> bool:
        return self.recurrence and self.normalized and self.operator_solution

    def to_text(self) -> str:
        lines = [f"Poisson psi-process, lambda = {self.lam}, series order {self.series_order}"]
        for m, p in enumerate(self.pretty):
            lines.append(f"  p_{m}(x) = {p}")
        lines.append(f"exact on degrees <= {self.guard_degree}")
        lines.append(f"difference system: {'PASS' if self.recurrence else 'FAIL'}")
        lines.append(f"normalization: {'PASS' if self.normalized else 'FAIL'}")
        lines.append(f"operator solution: {'PASS' if self.operator_solution else 'FAIL'}")
        return "\n".join(lines)
