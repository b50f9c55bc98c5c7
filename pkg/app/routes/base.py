from fastapi import APIRouter, Depends

from app.helpers.config import Settings, get_settings
from app.models.suites import SUITES

base_router = APIRouter(prefix="/api/v1", tags=["api_v1"])

SERVICE_DESCRIPTION = "Exact psi-extended finite operator calculus on truncated polynomial spaces"


@base_router.get("/")
async def welcome(app_settings: Settings = Depends(get_settings)):
    """Service card: what the calculus offers and the defaults a request starts from."""
    return {
        "app_name": app_settings.APP_NAME,
        "app_version": app_settings.APP_VERSION,
        "description": SERVICE_DESCRIPTION,
        "defaults": {
            "preset": app_settings.PSI_PRESET,
            "q": app_settings.PSI_Q,
            "cap": app_settings.PSI_CAP,
            "seed": app_settings.PSI_SEED,
        },
        "endpoints": ["table", "operator/{kind}", "classify", "basic-seq", "expand", "verify"],
        "suites": list(SUITES),
    }
