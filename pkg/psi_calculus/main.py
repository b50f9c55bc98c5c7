"""Command line driver: presets, basic sequences, expansions and the verification battery.

Exit status: 0 success, 1 an identity failed, 2 the input was rejected.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional, Tuple

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError

from app.helpers.config import get_settings
from app.helpers.errors import CalculusError, IdentityFailure, InputError
from app.helpers.log import setup_logging
from app.models.CalculusModel import CalculusModel
from app.models.suites import SUITES
from app.models.VerificationModel import VerificationModel
from app.schemas import BasicSeqReport, ExpansionOut, RecognitionOut, RunConfig, VerifyReport
from app.utils.helpers import describe_error

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_INPUT_ERROR = 2


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="truncation degree (>= 4)")
    common.add_argument("--psi", default=argparse.SUPPRESS, help="preset: classical, q-jackson, ones, dxd, custom-R, custom")
    common.add_argument("--q", default=argparse.SUPPRESS, help='q as "num/den"')
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("--n-psi", dest="n_psi", default=argparse.SUPPRESS, help="custom preset: JSON list 0_psi..cap_psi")
    common.add_argument("--r-num", dest="r_num", default=argparse.SUPPRESS, help="custom-R: JSON numerator coefficients")
    common.add_argument("--r-den", dest="r_den", default=argparse.SUPPRESS, help="custom-R: JSON denominator coefficients")
    common.add_argument("--log-level", dest="log_level", default=argparse.SUPPRESS)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="psi-calculus", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basic-seq", parents=[common], help="basic sequence of a delta series along all routes")
    p.add_argument("--delta", required=True, help="named series or JSON list of d_psi coefficients")
    p.add_argument("-M", type=int, default=4)

    p = sub.add_parser("verify", parents=[common], help="run the verification battery")
    p.add_argument("--suite", action="append", choices=list(SUITES), help="repeat to select several suites")
    p.add_argument("--trials", type=int, default=10)

    p = sub.add_parser("expand", parents=[common], help="expand T in powers of Q")
    p.add_argument("--T", dest="T", required=True, help="named operator or JSON list of columns")
    p.add_argument("--Q", dest="Q", default="d_psi")
    p.add_argument("-M", type=int, default=6)
    p.add_argument("--basis", choices=["x_hat", "x_hat_Q"], default="x_hat")
    p.add_argument("--lambda-order", dest="lambda_order", type=int, default=4)

    p = sub.add_parser("classify", parents=[common], help="decide whether Q is a series in some d_psi")
    p.add_argument("--Q", dest="Q", required=True, help='named operator, JSON columns or {"b_table": ...}')

    p = sub.add_parser("translate", parents=[common], help="apply the generalized translation E^y(d_psi)")
    p.add_argument("--y", required=True)
    p.add_argument("--target", required=True, help="a degree n (for x^n) or a JSON coefficient list")

    p = sub.add_parser("poisson", parents=[common], help="components of the Poisson psi-process")
    p.add_argument("--lam", default="1")
    p.add_argument("-M", type=int, default=5)
    p.add_argument("--series-order", dest="series_order", type=int, default=None)

    p = sub.add_parser("integrate", parents=[common], help="right inverse of d_psi, d_q or d_R")
    p.add_argument("--kind", choices=["psi", "q", "R"], default="psi")
    p.add_argument("--poly", required=True, help="JSON coefficient list")

    p = sub.add_parser("table", parents=[common], help="n_psi, n_psi!, psi-binomials and expPsi coefficients")
    p.add_argument("--order", type=int, default=None)
    return parser


def _json_list(text: Optional[str], flag: str) -> Optional[List[str]]:
    if text is None:
        return None
    try:
        values = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{flag} is not valid JSON: {e.msg}") from e
    if not isinstance(values, list):
        raise InputError(f"{flag} must be a JSON list")
    return [str(v) for v in values]


def make_config(args: argparse.Namespace) -> RunConfig:
    settings = get_settings()
    return RunConfig.from_settings(
        settings,
        cap=getattr(args, "cap", None),
        psi=getattr(args, "psi", None),
        q=getattr(args, "q", None),
        seed=getattr(args, "seed", None),
        output="json" if getattr(args, "json", False) else None,
        n_psi=_json_list(getattr(args, "n_psi", None), "--n-psi"),
        r_num=_json_list(getattr(args, "r_num", None), "--r-num"),
        r_den=_json_list(getattr(args, "r_den", None), "--r-den"),
    )


def _emit(report: BaseModel, config: RunConfig) -> None:
    if config.output == "json":
        print(report.model_dump_json(indent=2, by_alias=True))
    elif hasattr(report, "to_text"):
        print(report.to_text())
    else:
        print(report.pretty)


def cmd_basic_seq(config: RunConfig, delta_spec: str, M: int) -> Tuple[BasicSeqReport, bool]:
    report = CalculusModel(config).basic_seq(delta_spec, M)
    return report, report.verdict == "AGREE"


def cmd_verify(config: RunConfig, suites: Optional[List[str]] = None, trials: int = 10) -> Tuple[VerifyReport, bool]:
    verifier = VerificationModel(config.make_psi(), config.seed, trials, config.samples())
    report = verifier.run(suites)
    return report, report.ok


def cmd_expand(config: RunConfig, T_spec: str, Q_spec: str, M: int, **kwargs) -> Tuple[ExpansionOut, bool]:
    report = CalculusModel(config).expand(T_spec, Q_spec, M, **kwargs)
    return report, report.verified


def cmd_classify(config: RunConfig, Q_spec: str) -> Tuple[RecognitionOut, bool]:
    # "not a series" is an answer, not a failure
    return CalculusModel(config).classify(Q_spec), True


def run(args: argparse.Namespace) -> int:
    config = make_config(args)
    model = CalculusModel(config)

    if args.command == "basic-seq":
        report, ok = cmd_basic_seq(config, args.delta, args.M)
    elif args.command == "verify":
        report, ok = cmd_verify(config, args.suite, args.trials)
    elif args.command == "expand":
        report, ok = cmd_expand(config, args.T, args.Q, args.M, basis_mode=args.basis, lambda_order=args.lambda_order)
    elif args.command == "classify":
        report, ok = cmd_classify(config, args.Q)
    elif args.command == "translate":
        report = model.translate(args.y, args.target)
        ok = True
    elif args.command == "poisson":
        report = model.poisson(args.lam, args.M, args.series_order)
        ok = report.ok
    elif args.command == "integrate":
        report = model.integrate(args.kind, args.poly)
        ok = report.right_inverse
    else:
        report = model.table(args.order)
        ok = True

    _emit(report, config)
    if not ok:
        logger.warning("%s: an identity did not hold", args.command)
    return EXIT_OK if ok else EXIT_IDENTITY_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(getattr(args, "log_level", None) or get_settings().LOG_LEVEL)
    try:
        return run(args)
    except IdentityFailure as e:
        print(f"error: {describe_error(e)}", file=sys.stderr)
        return EXIT_IDENTITY_FAILURE
    except CalculusError as e:
        print(f"error: {describe_error(e)}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValidationError as e:
        print(f"error: invalid configuration\n{e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
