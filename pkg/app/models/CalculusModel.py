import json
import logging
from functools import partial
from typing import Optional, Union

from app.core.delta_series import NAMED_SERIES, series_to_matrix
from app.core.delta_umbral import all_routes, normal_basic_general, recognize_delta, routes_agree, translate
from app.core.exact_core import OpMatrix, Poly, format_poly
from app.core.expansion import expand_in_Q, indicator
from app.core.integration import psi_integral, q_integral, r_integral, right_inverse_check
from app.core.OperatorProvider import KINDS, make_named
from app.core.psi_sequence import RationalFunction
from app.core.star_product import (
    poisson_build,
    poisson_normalizer_check,
    poisson_operator_check,
    poisson_recurrence_check,
)
from app.helpers.errors import InputError, MissingParameter
from app.schemas import (
    BasicSeqReport,
    BasicSequenceOut,
    ExpansionOut,
    IntegrateOut,
    NamedOpOut,
    PoissonOut,
    RecognitionOut,
    RunConfig,
    TableOut,
    TranslateOut,
)
from app.utils.helpers import (
    EXTRA_OPERATORS,
    fmt_scalar,
    parse_delta,
    parse_operator,
    parse_scalar,
    poly_from_json,
    poly_to_json,
)

logger = logging.getLogger(__name__)


class CalculusModel:
    """The reports behind every command, shared by the CLI and the HTTP routes."""

    def __init__(self, config: RunConfig):

        self.config = config
        self.psi = config.make_psi()

    def _operator(self, spec: str) -> OpMatrix:
        if spec in NAMED_SERIES:
            return series_to_matrix(parse_delta(spec, self.psi))
        return parse_operator(spec, self.psi)

    def _poly(self, spec: Union[str, list]) -> Poly:
        if isinstance(spec, str):
            try:
                spec = json.loads(spec)
            except json.JSONDecodeError as e:
                raise InputError(f"malformed polynomial JSON: {e.msg}") from e
        if not isinstance(spec, list):
            raise InputError("a polynomial is a JSON list of coefficients")
        return poly_from_json(spec, self.psi.cap)

    def basic_seq(self, delta: str, M: int) -> BasicSeqReport:
        Q = parse_delta(delta, self.psi)
        sequences = all_routes(Q, M)
        verdict = "AGREE" if routes_agree(sequences) else "DISAGREE"
        if verdict == "DISAGREE":
            logger.error("basic sequence routes disagree for %r", Q)
        return BasicSeqReport(
            psi=self.psi.label,
            delta=[fmt_scalar(c) for c in Q.coeffs],
            M=M,
            routes={name: BasicSequenceOut.from_domain(basic) for name, basic in sequences.items()},
            verdict=verdict,
        )

    def operator(self, spec: str) -> NamedOpOut:
        named = spec in KINDS or spec in EXTRA_OPERATORS or spec in NAMED_SERIES
        return NamedOpOut.from_domain(self._operator(spec), kind=spec if named else None, psi=self.psi.label)

    def classify(self, Q_spec: str) -> RecognitionOut:
        return RecognitionOut.from_domain(recognize_delta(self._operator(Q_spec)))

    def expand(self, T_spec: str, Q_spec: str, M: int, basis_mode: str = "x_hat", lambda_order: int = 4) -> ExpansionOut:
        T = self._operator(T_spec)
        Q = self._operator(Q_spec)
        basic = normal_basic_general(Q, self.psi, self.psi.cap) if basis_mode == "x_hat_Q" else None
        expansion = expand_in_Q(T, Q, self.psi, M, basis_mode=basis_mode, basic=basic)
        P = indicator(expansion, min(lambda_order, M)) if expansion.verified else None
        return ExpansionOut.from_domain(expansion, P)

    def translate(self, y, target: Union[int, str, list]) -> TranslateOut:
        y = parse_scalar(y)
        if isinstance(target, int) or (isinstance(target, str) and target.strip().isdigit()):
            source = Poly.monomial(int(target), self.psi.cap)
        else:
            source = self._poly(target)
        result = translate(self.psi, y, source)
        return TranslateOut(
            psi=self.psi.label,
            y=fmt_scalar(y),
            source=poly_to_json(source),
            result=poly_to_json(result),
            pretty=format_poly(result),
        )

    def poisson(self, lam, M: int, series_order: Optional[int] = None) -> PoissonOut:
        series_order = self.psi.cap - M if series_order is None else series_order
        model = poisson_build(self.psi, parse_scalar(lam), M, series_order)
        return PoissonOut.from_domain(
            model,
            recurrence=poisson_recurrence_check(model),
            normalized=poisson_normalizer_check(model),
            operator_solution=poisson_operator_check(model),
        )

    def integrate(self, kind: str, spec: Union[str, list]) -> IntegrateOut:
        p = self._poly(spec)
        cap = self.psi.cap
        q = self.psi.q if self.config.q is None else parse_scalar(self.config.q)
        if kind == "psi":
            integral = partial(psi_integral, self.psi)
            derivative = make_named("d_psi", self.psi).matrix
        elif kind in ("q", "R"):
            if q is None:
                raise MissingParameter(f"the {kind}-integral needs q")
            if kind == "q":
                integral = partial(q_integral, q)
                derivative = make_named("d_q", q=q, cap=cap).matrix
            else:
                r = self.psi.r if self.psi.r is not None else RationalFunction.jackson(q)
                integral = partial(r_integral, r, q)
                derivative = make_named("d_R", q=q, r=r, cap=cap).matrix
        else:
            raise InputError(f"unknown integral {kind!r}; choose psi, q or R")
        result = integral(p)
        return IntegrateOut(
            kind=kind,
            source=poly_to_json(p),
            result=poly_to_json(result),
            pretty=format_poly(result),
            right_inverse=right_inverse_check(derivative, integral, cap),
        )

    def table(self, order: Optional[int] = None) -> TableOut:
        order = self.psi.cap if order is None else min(order, self.psi.cap)
        return TableOut.from_domain(self.psi, order)
