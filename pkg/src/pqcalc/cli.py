"""``pqcalc`` command line front end.

Exit codes: 0 when the result converged (or every law passed), 2 when a
series or limit failed to converge or a law failed, 1 for usage, parse,
parameter and domain errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, TextIO, Tuple, Union

from .core import (
    DomainError,
    EvaluationError,
    NonFiniteTermError,
    ParameterError,
    PqError,
    PqParams,
    RangeError,
    SeriesConfig,
    SeriesResult,
)
from .deriv import LimitError, pq_derivative, pq_derivative_n
from .expr import ExprEvalError, ExprSyntaxError, expr_function, parse_expr
from .integral import IntegralRequest, antiderivative_series, definite_integral, improper_integral
from .laws import (
    LawReport,
    NonConvergenceError,
    verify_fundamental_theorem,
    verify_integration_by_parts,
    verify_inverse_lemmas,
    verify_product_rules,
    verify_quotient_rules,
)

COMMANDS = ("deriv", "deriv-n", "integrate", "improper", "antideriv", "verify")
JSON_KEYS = ("command", "p", "q", "inputs", "value", "status", "terms_used", "tail_estimate")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NONCONVERGENCE = 2

# stable one-line error codes, checked in order
_ERROR_CODES: Tuple[Tuple[type, str, int], ...] = (
    (ExprSyntaxError, "E_PARSE", EXIT_USAGE),
    (ParameterError, "E_PARAM", EXIT_USAGE),
    (DomainError, "E_DOMAIN", EXIT_USAGE),
    (ExprEvalError, "E_EVAL", EXIT_USAGE),
    (EvaluationError, "E_EVAL", EXIT_USAGE),
    (LimitError, "E_LIMIT", EXIT_NONCONVERGENCE),
    (NonConvergenceError, "E_NONCONVERGENCE", EXIT_NONCONVERGENCE),
    (NonFiniteTermError, "E_NONFINITE", EXIT_NONCONVERGENCE),
    (RangeError, "E_RANGE", EXIT_NONCONVERGENCE),
    (PqError, "E_PQ", EXIT_NONCONVERGENCE),
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _real_or_inf(text: str) -> float:
    if text.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite real number: {text!r}")
    return value


def _real(text: str) -> float:
    value = _real_or_inf(text)
    if math.isinf(value):
        raise argparse.ArgumentTypeError("inf is only accepted for --b of integrate/improper")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pqcalc", description="pq-derivatives, pq-integrals and law checks.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--expr", required=True, help="function of x (for verify: f, or F for the fundamental theorem)")
    parser.add_argument("--expr2", help="second function g for verify")
    parser.add_argument("--p", type=_real, required=True)
    parser.add_argument("--q", type=_real, required=True)
    parser.add_argument("--x", type=_real)
    parser.add_argument("--a", type=_real)
    parser.add_argument("--b", type=_real_or_inf)
    parser.add_argument("--n", type=int)
    parser.add_argument("--tol", type=_real, help="series rel_tol (verify: law tolerance)")
    parser.add_argument("--max-terms", type=int)
    parser.add_argument("--c", type=_real, default=1.0, help="value bound to the constant c (default 1)")
    parser.add_argument("--json", action="store_true")
    return parser


@dataclass
class CliRequest:
    command: str
    expr: str
    p: float
    q: float
    expr2: Optional[str] = None
    x: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    n: Optional[int] = None
    tol: Optional[float] = None
    max_terms: Optional[int] = None
    c: float = 1.0
    output: str = "text"

    @classmethod
    def from_argv(cls, argv: Sequence[str]) -> "CliRequest":
        ns = build_parser().parse_args(list(argv))
        request = cls(
            command=ns.command, expr=ns.expr, p=ns.p, q=ns.q, expr2=ns.expr2, x=ns.x, a=ns.a, b=ns.b,
            n=ns.n, tol=ns.tol, max_terms=ns.max_terms, c=ns.c, output="json" if ns.json else "text",
        )
        request.validate()
        return request

    def validate(self) -> None:
        need = {
            "deriv": ("x",),
            "deriv-n": ("x", "n"),
            "integrate": ("a", "b"),
            "improper": ("a",),
            "antideriv": ("x",),
            "verify": (),
        }[self.command]
        missing = [name for name in need if getattr(self, name) is None]
        if missing:
            raise UsageError(f"{self.command} needs " + ", ".join(f"--{m}" for m in missing))
        if self.b is not None and math.isinf(self.b) and self.command not in ("integrate", "improper"):
            raise UsageError("inf is only accepted for --b of integrate/improper")
        if self.command == "verify" and self.x is None and (self.a is None or self.b is None):
            raise UsageError("verify needs --x and/or --a/--b")
        if self.max_terms is not None and self.max_terms < 1:
            raise UsageError("--max-terms must be positive")

    def inputs(self) -> Dict[str, object]:
        out: Dict[str, object] = {"expr": self.expr}
        for name in ("expr2", "x", "a", "b", "n", "tol", "max_terms"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        out["c"] = self.c
        return out


@dataclass
class Outcome:
    value: float
    status: str
    terms_used: int = 0
    tail_estimate: float = 0.0
    exit_code: int = EXIT_OK
    lines: List[str] = field(default_factory=list)


def _from_series(result: SeriesResult) -> Outcome:
    code = EXIT_OK if result.converged else EXIT_NONCONVERGENCE
    lines = [] if result.converged else [f"note: value is a partial sum ({result.detail or result.status.value})"]
    return Outcome(result.value, result.status.value, result.terms_used, result.tail_estimate, code, lines)


def _config(req: CliRequest) -> SeriesConfig:
    kwargs = {}
    if req.tol is not None and req.command != "verify":
        kwargs["rel_tol"] = req.tol
    if req.max_terms is not None:
        kwargs["max_terms"] = req.max_terms
    return SeriesConfig(**kwargs)


def execute(req: CliRequest) -> Outcome:
    bindings = {"c": req.c}
    f = expr_function(parse_expr(req.expr), bindings)
    g = expr_function(parse_expr(req.expr2), bindings) if req.expr2 else None

    if req.command in ("deriv", "deriv-n"):
        params = PqParams.derivative(req.p, req.q)
        if req.command == "deriv":
            value = pq_derivative(f, req.x, params)
        else:
            value = pq_derivative_n(f, req.x, req.n, params)
        return Outcome(value, "Converged")

    params = PqParams.integration(req.p, req.q)
    config = _config(req)
    if req.command == "antideriv":
        return _from_series(antiderivative_series(f, req.x, params, config))
    if req.command == "integrate":
        if math.isinf(req.b):
            return _from_series(improper_integral(IntegralRequest(req.a, req.b), f, params, config))
        return _from_series(definite_integral(req.a, req.b, f, params, config))
    if req.command == "improper":
        upper = math.inf if req.b is None else req.b
        request = IntegralRequest(req.a, upper)
        return _from_series(improper_integral(request, f, params, config))
    return _verify(req, f, g, params, config)


def _verify(req: CliRequest, f, g, params: PqParams, config: SeriesConfig) -> Outcome:
    tol = 1e-8 if req.tol is None else req.tol
    reports: List[LawReport] = []
    if req.x is not None:
        xs = [req.x]
        if g is not None:
            reports.append(verify_product_rules(f, g, xs, params, tol))
            reports.append(verify_quotient_rules(f, g, xs, params, tol))
        reports.append(verify_inverse_lemmas(f, xs, params, config, tol))
    if req.a is not None and req.b is not None:
        pairs = [(req.a, req.b)]
        if math.isinf(req.b):
            raise UsageError("verify takes finite --a/--b")
        reports.append(verify_fundamental_theorem(f, pairs, params, config, tol))
        if g is not None:
            reports.append(verify_integration_by_parts(f, g, pairs, params, config, tol))
    passed = all(r.passed for r in reports)
    worst = max(r.max_residual for r in reports)
    return Outcome(
        worst,
        "Passed" if passed else "Failed",
        len(reports),
        0.0,
        EXIT_OK if passed else EXIT_NONCONVERGENCE,
        [str(r) for r in reports],
    )


def _fmt_number(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if not math.isfinite(value):
        return "null"
    return format(value, ".17g")


def to_json(obj) -> str:
    """Compact JSON with every float written to 17 significant digits."""
    import json

    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (bool, int, float)):
        return _fmt_number(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _payload(req: CliRequest, outcome: Outcome) -> dict:
    return {
        "command": req.command,
        "p": req.p,
        "q": req.q,
        "inputs": req.inputs(),
        "value": outcome.value,
        "status": outcome.status,
        "terms_used": outcome.terms_used,
        "tail_estimate": outcome.tail_estimate,
    }


def _error_code(exc: Exception) -> Tuple[str, int]:
    for kind, code, exit_code in _ERROR_CODES:
        if isinstance(exc, kind):
            return code, exit_code
    raise exc


def run_cli(
    request: Union[CliRequest, Sequence[str], None] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Run one command; ``request`` is a :class:`CliRequest` or an argv list."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    if request is None:
        request = sys.argv[1:]
    try:
        if isinstance(request, CliRequest):
            req = request
            req.validate()
        else:
            req = CliRequest.from_argv(request)
    except UsageError as exc:
        print(f"E_USAGE: {exc}", file=stderr)
        return EXIT_USAGE
    try:
        outcome = execute(req)
    except UsageError as exc:
        print(f"E_USAGE: {exc}", file=stderr)
        return EXIT_USAGE
    except PqError as exc:
        code, exit_code = _error_code(exc)
        print(f"{code}: {' '.join(str(exc).split())}", file=stderr)
        return exit_code

    if req.output == "json":
        print(to_json(_payload(req, outcome)), file=stdout)
    else:
        for line in outcome.lines:
            print(line, file=stdout)
        print(f"value: {outcome.value:.17g}", file=stdout)
        print(f"status: {outcome.status}", file=stdout)
        print(f"terms_used: {outcome.terms_used}", file=stdout)
    return outcome.exit_code


def main() -> None:
    sys.exit(run_cli())
