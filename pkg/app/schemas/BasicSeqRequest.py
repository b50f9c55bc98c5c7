from pydantic import Field

from .RunConfig import RunConfig


class BasicSeqRequest(RunConfig):
    # named series or a JSON list of ∂ψ-coefficients
    delta: str = "forward-difference"
    M: int = Field(default=4, ge=0)
