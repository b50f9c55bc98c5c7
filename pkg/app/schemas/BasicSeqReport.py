from typing import Dict, List, Literal

from pydantic import BaseModel

from .BasicSequenceOut import BasicSequenceOut


class BasicSeqReport(BaseModel):
    psi: str
    delta: List[str]
    M: int
    routes: Dict[str, BasicSequenceOut]
    verdict: Literal["AGREE", "DISAGREE"]

    def to_text(self) -> str:
        lines = [f"basic sequence of Q = {self.delta} under {self.psi}, M = {self.M}"]
        first = next(iter(self.routes.values()))
        for n, p in enumerate(first.pretty):
            lines.append(f"  p_{n}(x) = {p}")
        lines.append(f"routes: {', '.join(self.routes)}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)
