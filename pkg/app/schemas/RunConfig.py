from fractions import Fraction
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from app.core.psi_sequence import PRESETS, PsiSequence
from app.helpers.config import Settings
from app.utils.helpers import fmt_scalar, make_rng, parse_psi, parse_scalar


class RunConfig(BaseModel):
    """Everything a command needs to build its ψ-sequence and its random trials"""

    cap: int = Field(default=16, ge=4)
    psi: str = "classical"
    q: Optional[str] = None
    # custom preset: explicit 0ψ, 1ψ, ..., capψ
    n_psi: Optional[List[str]] = None
    # custom-R preset: R = r_num / r_den, coefficients in ascending powers
    r_num: Optional[List[str]] = None
    r_den: Optional[List[str]] = None
    output: Literal["text", "json"] = "text"
    seed: int = 0
    shift_samples: List[str] = ["1", "-1/2", "3"]

    @field_validator("psi")
    @classmethod
    def known_preset(cls, value: str) -> str:
        if value not in PRESETS:
            raise ValueError(f"unknown preset {value!r}; choose one of {', '.join(PRESETS)}")
        return value

    @field_validator("q")
    @classmethod
    def exact_q(cls, value: Optional[str]) -> Optional[str]:
        return None if value is None else fmt_scalar(parse_scalar(value))

    @field_validator("shift_samples")
    @classmethod
    def exact_samples(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("at least one shift sample is needed")
        return [fmt_scalar(parse_scalar(v)) for v in value]

    @model_validator(mode="after")
    def psi_is_admissible(self) -> "RunConfig":
        self.make_psi()
        return self

    @classmethod
    def from_settings(cls, settings: Settings, **overrides) -> "RunConfig":
        values = {
            "cap": settings.PSI_CAP,
            "psi": settings.PSI_PRESET,
            "q": settings.PSI_Q,
            "seed": settings.PSI_SEED,
            "output": settings.PSI_OUTPUT,
            "shift_samples": settings.SHIFT_SAMPLES,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def make_psi(self) -> PsiSequence:
        return parse_psi(self.psi, self.q, self.cap, self.n_psi, self.r_num, self.r_den)

    def rng(self) -> np.random.Generator:
        return make_rng(self.seed)

    def samples(self) -> List[Fraction]:
        return [parse_scalar(v) for v in self.shift_samples]
