from typing import List, Optional

from pydantic import BaseModel

from app.core.exact_core import OpMatrix
from app.utils.helpers import matrix_to_json


class NamedOpOut(BaseModel):
    kind: str
    psi: Optional[str] = None
    cap: int
    valid_degree: int
    shift: int
    # matrix[j] holds the coefficients of T x^j
    matrix: List[List[str]]

    @classmethod
    def from_domain(cls, matrix: OpMatrix, kind: Optional[str] = None, psi: Optional[str] = None) -> "NamedOpOut":
        return cls(
            kind=kind or "other",
            psi=psi,
            cap=matrix.cap,
            valid_degree=matrix.valid_degree,
            shift=matrix.shift,
            matrix=matrix_to_json(matrix),
        )
