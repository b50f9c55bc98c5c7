from typing import Literal

from pydantic import Field

from .RunConfig import RunConfig


class ExpandRequest(RunConfig):
    # named operator or a JSON list of columns
    T: str
    Q: str = "d_psi"
    M: int = Field(default=6, ge=0)
    basis_mode: Literal["x_hat", "x_hat_Q"] = "x_hat"
    lambda_order: int = Field(default=4, ge=0)
