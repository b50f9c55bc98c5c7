from typing import List, Literal

from pydantic import BaseModel


class IntegrateOut(BaseModel):
    kind: Literal["psi", "q", "R"]
    source: List[str]
    result: List[str]
    pretty: str
    # ∂ ∘ ∫ == id on every monomial below the cap
    right_inverse: bool
