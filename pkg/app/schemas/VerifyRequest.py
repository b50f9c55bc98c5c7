from typing import List, Optional

from pydantic import Field

from .RunConfig import RunConfig


class VerifyRequest(RunConfig):
    suites: Optional[List[str]] = None
    trials: int = Field(default=10, ge=1)
