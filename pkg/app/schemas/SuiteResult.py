from typing import List, Literal

from pydantic import BaseModel


class SuiteResult(BaseModel):
    name: str
    status: Literal["PASS", "FAIL", "REPORT-ONLY"]
    report_only: bool = False
    details: List[str] = []
