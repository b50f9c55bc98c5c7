import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.helpers.config import get_settings
from app.helpers.log import setup_logging
from app.routes import base, calculus

settings = get_settings()
setup_logging(settings.LOG_LEVEL)
logger = logging.getLogger(__name__)

# Initialize app
app = FastAPI(
    title="psi-calculus API",
    description=base.SERVICE_DESCRIPTION,
    version=settings.APP_VERSION,
)

# CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(base.base_router)
app.include_router(calculus.calculus_router)
logger.info("%s %s ready", settings.APP_NAME, settings.APP_VERSION)
