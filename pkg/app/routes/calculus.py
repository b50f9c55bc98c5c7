import logging
from typing import Optional

from fastapi import APIRouter, Depends, HTTPException

from app.helpers.config import Settings, get_settings
from app.helpers.errors import CalculusError
from app.models.CalculusModel import CalculusModel
from app.models.suites import SUITES
from app.models.VerificationModel import VerificationModel
from app.schemas import (
    BasicSeqReport,
    BasicSeqRequest,
    ClassifyRequest,
    ExpandRequest,
    ExpansionOut,
    NamedOpOut,
    RecognitionOut,
    RunConfig,
    TableOut,
    VerifyReport,
    VerifyRequest,
)
from app.utils.helpers import describe_error

logger = logging.getLogger(__name__)

calculus_router = APIRouter(prefix="/api/v1/calculus", tags=["api_v1", "calculus"])


def _fail(e: Exception) -> HTTPException:
    if isinstance(e, CalculusError):
        return HTTPException(status_code=422, detail=describe_error(e))
    logger.exception("unexpected error")
    return HTTPException(status_code=500, detail=str(e))


@calculus_router.get("/health")
async def health_check(app_settings: Settings = Depends(get_settings)):
    """Health check endpoint"""
    return {
        "status": "healthy",
        "default_cap": app_settings.PSI_CAP,
        "default_preset": app_settings.PSI_PRESET,
        "suites": list(SUITES),
    }


@calculus_router.get("/table", response_model=TableOut)
def table(
    psi: Optional[str] = None,
    q: Optional[str] = None,
    cap: Optional[int] = None,
    app_settings: Settings = Depends(get_settings),
):
    """nψ, nψ!, the ψ-binomial triangle and the expψ coefficients"""
    try:
        config = RunConfig.from_settings(app_settings, psi=psi, q=q, cap=cap)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))
    try:
        return CalculusModel(config).table()
    except Exception as e:
        raise _fail(e)


@calculus_router.get("/operator/{kind}", response_model=NamedOpOut)
def operator(
    kind: str,
    psi: Optional[str] = None,
    q: Optional[str] = None,
    cap: Optional[int] = None,
    app_settings: Settings = Depends(get_settings),
):
    """Matrix of a named operator on the monomial basis"""
    try:
        config = RunConfig.from_settings(app_settings, psi=psi, q=q, cap=cap)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))
    try:
        return CalculusModel(config).operator(kind)
    except Exception as e:
        raise _fail(e)


@calculus_router.post("/classify", response_model=RecognitionOut)
def classify(request: ClassifyRequest):
    try:
        return CalculusModel(request).classify(request.Q)
    except Exception as e:
        raise _fail(e)


@calculus_router.post("/basic-seq", response_model=BasicSeqReport)
def basic_seq(request: BasicSeqRequest):
    """Basic sequence of a delta series along every route"""
    try:
        return CalculusModel(request).basic_seq(request.delta, request.M)
    except Exception as e:
        raise _fail(e)


@calculus_router.post("/expand", response_model=ExpansionOut)
def expand(request: ExpandRequest):
    try:
        return CalculusModel(request).expand(
            request.T, request.Q, request.M, basis_mode=request.basis_mode, lambda_order=request.lambda_order
        )
    except Exception as e:
        raise _fail(e)


@calculus_router.post("/verify", response_model=VerifyReport)
def verify(request: VerifyRequest):
    try:
        model = VerificationModel(request.make_psi(), request.seed, request.trials, request.samples())
        return model.run(request.suites)
    except Exception as e:
        raise _fail(e)
