from typing import List

from pydantic import BaseModel


class TranslateOut(BaseModel):
    psi: str
    y: str
    source: List[str]
    result: List[str]
    pretty: str
