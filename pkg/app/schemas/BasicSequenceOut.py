from typing import List

from pydantic import BaseModel

from app.core.delta_umbral import BasicSequence
from app.core.exact_core import format_poly
from app.utils.helpers import poly_to_json


class BasicSequenceOut(BaseModel):
    psi: str
    source: str
    M: int
    polys: List[List[str]]
    pretty: List[str]

    @classmethod
    def from_domain(cls, basic: BasicSequence) -> "BasicSequenceOut":
        return cls(
            psi=basic.psi.label,
            source=basic.source,
            M=basic.M,
            polys=[poly_to_json(p) for p in basic.polys],
            pretty=[format_poly(p) for p in basic.polys],
        )
