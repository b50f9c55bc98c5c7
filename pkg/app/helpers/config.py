from typing import List, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):

    APP_NAME: str = "psi-calculus"
    APP_VERSION: str = "0.1.0"

    # Truncation degree N of the polynomial space
    PSI_CAP: int = 16
    PSI_PRESET: str = "classical"
    PSI_Q: Optional[str] = None

    # Seed for randomized property trials
    PSI_SEED: int = 0
    PSI_OUTPUT: str = "text"

    # alpha values of the sampled shift-invariance test
    SHIFT_SAMPLES: List[str] = ["1", "-1/2", "3"]

    LOG_LEVEL: str = "WARNING"

    API_HOST: str = "0.0.0.0"
    API_PORT: int = 8000
    API_RELOAD: bool = False

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


def get_settings():
    return Settings()
