#!/usr/bin/env python3
"""
betadim - command-line frontend

Every subcommand reads a validated RunConfig and writes JSON lines, digit
files or CSV. Errors surface as "<ErrorName>: <message>" on stderr with exit
status 1, or 2 for a bad command line.
"""

import argparse
import csv
import io
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from pydantic import BaseModel, ValidationError

from admissibility import (
    automaton,
    count_bounds,
    count_words,
    cylinder,
    enumerate_words,
    is_admissible,
    is_full,
    is_self_admissible,
)
from beta_core import (
    BetaParam,
    beta_n_chain,
    eps_star_prefix,
    expand,
    field_literal,
    format_digit_file,
    solve_beta_n,
)
from cantor import CantorSpec, construct_point, local_dimension_series, mu_mass
from config import DEFAULT_SEED, LOG_LEVEL, OUTPUT_FORMATS
from dimension import (
    covering_dimension_estimate,
    critical_exponent,
    dim_formula,
    dim_formula_max_over_v,
    dim_hat_formula,
    lower_bound_target,
    parameter_exponents,
    solve_beta_from_self_admissible,
)
from errors import BetaDimError, UsageError
from exponents import estimate_exponents, run_decomposition
from models import (
    BetaRecord,
    CantorSpecFile,
    CountRecord,
    CylinderRecord,
    DigitsRecord,
    DigitWord,
    DimRecord,
    ExponentEstimate,
    ExponentRecord,
    ExponentSummary,
    LocalDimRecord,
    MeasureRecord,
    RunConfig,
    RunRecordOut,
    WordRecord,
    finite_or_inf,
    fraction_text,
)
from numerics import Enclosure, format_fraction, parse_number

logger = logging.getLogger(__name__)

COMMANDS = (
    "expand",
    "eps-star",
    "beta-n",
    "admissible",
    "self-admissible",
    "enumerate",
    "count",
    "cylinder",
    "exponents",
    "runs",
    "construct",
    "measure",
    "local-dim",
    "dim",
    "param-solve",
    "param-exponents",
)
DIM_MODES = ("formula", "max", "estimate")


@dataclass
class Output:
    """What a command produced: a series of records, an optional summary, digits or words"""
    records: list[BaseModel] = field(default_factory=list)
    summary: Optional[BaseModel] = None
    digits: Optional[tuple[BetaParam, DigitWord]] = None
    words: Optional[list[DigitWord]] = None


HANDLERS: dict[str, Callable[[RunConfig], Output]] = {}


def command(name: str):
    """Register a handler for a subcommand"""
    def register(handler: Callable[[RunConfig], Output]) -> Callable[[RunConfig], Output]:
        HANDLERS[name] = handler
        return handler
    return register


def _need(config: RunConfig, *names: str):
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(config, name) is None]
    if missing:
        raise UsageError(f"{config.command} needs {', '.join(missing)}")
    values = tuple(getattr(config, name) for name in names)
    return values[0] if len(values) == 1 else values


def _base(config: RunConfig) -> BetaParam:
    return BetaParam.from_literal(_need(config, "beta"))


def _point(text: str, bp: BetaParam) -> Enclosure:
    return parse_number(text, base=bp.beta)


def _spec(config: RunConfig) -> CantorSpec:
    if config.spec_file:
        data = CantorSpecFile.model_validate_json(Path(config.spec_file).read_text(encoding="utf-8"))
    else:
        v, vhat, N, beta, x0 = _need(config, "v", "vhat", "N", "beta", "x0")
        data = CantorSpecFile(v=v, vhat=vhat, N=N, beta=beta, x0=x0)
    updates = {}
    if config.seed is not None:
        updates["seed"] = config.seed
    if config.fill is not None:
        updates["free_fill"] = config.fill
    if config.k_max is not None:
        updates["k_max"] = config.k_max
    return CantorSpec.from_record(data.model_copy(update=updates))


def _beta_record(enc: Enclosure, N: Optional[int] = None, verified: Optional[bool] = None) -> BetaRecord:
    literal = field_literal(enc.exact) if enc.exact is not None else f"≈{float(enc):.15g}"
    return BetaRecord(
        N=N,
        beta=literal,
        value=float(enc),
        lo=format_fraction(enc.lo),
        hi=format_fraction(enc.hi),
        verified=verified,
    )


def _exponent_output(estimate: ExponentEstimate) -> Output:
    records = [
        ExponentRecord(N=N, vN=finite_or_inf(v), vhatN=finite_or_inf(vh))
        for N, (v, vh) in enumerate(zip(estimate.v_seq, estimate.vhat_seq), start=1)
    ]
    summary = ExponentSummary(
        horizon=estimate.horizon,
        start=estimate.start,
        window=fraction_text(estimate.window),
        v_tail=finite_or_inf(estimate.v_tail),
        vhat_tail=finite_or_inf(estimate.vhat_tail),
        infinite=estimate.infinite,
        first_exact_hit=estimate.first_exact_hit,
        tail_from=estimate.tail_from,
        runs=[[r.n_k, r.m_k] for r in estimate.runs],
    )
    return Output(records=records, summary=summary)


def _window(config: RunConfig) -> dict:
    kwargs = {"start": config.start}
    if config.window is not None:
        kwargs["window"] = Fraction(config.window)
    return kwargs


# -- β-expansions --------------------------------------------------------------


@command("expand")
def expand_command(config: RunConfig) -> Output:
    bp = _base(config)
    x, n = _need(config, "x", "n")
    return Output(digits=(bp, expand(bp, _point(x, bp), n)))


@command("eps-star")
def eps_star_command(config: RunConfig) -> Output:
    bp = _base(config)
    return Output(digits=(bp, eps_star_prefix(bp, _need(config, "n"))))


@command("beta-n")
def beta_n_command(config: RunConfig) -> Output:
    bp = _base(config)
    if config.N is not None:
        return Output(records=[_beta_record(solve_beta_n(bp.eps_star.take(config.N), config.N), config.N)])
    return Output(records=[_beta_record(enc, N) for N, enc in beta_n_chain(bp, _need(config, "n"))])


# -- admissibility -------------------------------------------------------------


@command("admissible")
def admissible_command(config: RunConfig) -> Output:
    bp = _base(config)
    word = _need(config, "word")
    ok = is_admissible(bp, word)
    return Output(records=[WordRecord(word=word, admissible=ok, is_full=is_full(bp, word) if ok else None)])


@command("self-admissible")
def self_admissible_command(config: RunConfig) -> Output:
    word = _need(config, "word")
    return Output(records=[WordRecord(word=word, self_admissible=is_self_admissible(word))])


@command("enumerate")
def enumerate_command(config: RunConfig) -> Output:
    bp = _base(config)
    words = enumerate_words(bp, _need(config, "n"))
    return Output(records=[WordRecord(word=list(w.digits)) for w in words], words=words)


@command("count")
def count_command(config: RunConfig) -> Output:
    bp = _base(config)
    n = _need(config, "n")
    lower, upper = count_bounds(bp, n)
    return Output(
        records=[
            CountRecord(n=n, count=count_words(bp, n), lower=lower, upper=upper, certified_depth=automaton(bp).depth)
        ]
    )


@command("cylinder")
def cylinder_command(config: RunConfig) -> Output:
    bp = _base(config)
    cyl = cylinder(bp, _need(config, "word"))
    return Output(
        records=[
            CylinderRecord(
                word=list(cyl.word.digits),
                order=cyl.order,
                left=float(cyl.left),
                length=float(cyl.length),
                is_full=cyl.is_full,
            )
        ]
    )


# -- exponents -----------------------------------------------------------------


@command("exponents")
def exponents_command(config: RunConfig) -> Output:
    bp = _base(config)
    x, x0, horizon = _need(config, "x", "x0", "horizon")
    estimate = estimate_exponents(bp, _point(x, bp), _point(x0, bp), horizon, **_window(config))
    return _exponent_output(estimate)


@command("runs")
def runs_command(config: RunConfig) -> Output:
    bp = _base(config)
    x, x0, horizon = _need(config, "x", "x0", "horizon")
    runs = run_decomposition(bp, expand(bp, _point(x, bp), horizon), expand(bp, _point(x0, bp), horizon))
    return Output(records=[RunRecordOut(n=r.n_k, m=r.m_k, open_ended=r.open_ended) for r in runs])


# -- construction --------------------------------------------------------------


@command("construct")
def construct_command(config: RunConfig) -> Output:
    spec = _spec(config)
    return Output(digits=(spec.bp, construct_point(spec, _need(config, "depth"))))


@command("measure")
def measure_command(config: RunConfig) -> Output:
    spec = _spec(config)
    word = construct_point(spec, _need(config, "depth"))
    records = []
    for n in range(len(word) + 1):
        mass = mu_mass(spec, n, word)
        records.append(MeasureRecord(n=n, mass=fraction_text(mass), value=float(mass)))
    return Output(records=records)


@command("local-dim")
def local_dim_command(config: RunConfig) -> Output:
    spec = _spec(config)
    k_max = config.k_max or len(spec.schedule)
    target = lower_bound_target(spec)
    return Output(
        records=[
            LocalDimRecord(k=k, h=spec.entry(k).h, ratio=ratio, target=target)
            for k, ratio in local_dimension_series(spec, k_max)
        ]
    )


# -- dimension -----------------------------------------------------------------


@command("dim")
def dim_command(config: RunConfig) -> Output:
    mode = config.mode or "formula"
    if mode == "formula":
        v, vhat = _need(config, "v", "vhat")
        result = dim_formula(v, vhat)
        record = DimRecord(
            v=v,
            vhat=vhat,
            regime=result.regime.value,
            parameter=True if config.parameter else None,
        )
        if not result.is_empty:
            record.dimension = float(result.value)
            record.exact = fraction_text(result.value)
            if config.eps_prime is not None:
                record.critical = fraction_text(critical_exponent(v, vhat, config.eps_prime))
        return Output(records=[record])
    if mode == "max":
        vhat = _need(config, "vhat")
        v_star, value = dim_formula_max_over_v(vhat)
        exact = dim_hat_formula(vhat)
        return Output(
            records=[
                DimRecord(
                    vhat=vhat,
                    regime="interior" if exact > 0 else "boundary",
                    dimension=value,
                    v_star=v_star,
                    exact=fraction_text(exact),
                )
            ]
        )
    if mode == "estimate":
        spec = _spec(config)
        n = config.n or spec.entry(min(len(spec.schedule), 6)).h
        estimate = covering_dimension_estimate(spec, n)
        return Output(
            records=[
                DimRecord(
                    v=fraction_text(spec.v),
                    vhat=fraction_text(spec.vhat),
                    regime=dim_formula(spec.v, spec.vhat).regime.value,
                    dimension=estimate,
                )
            ]
        )
    raise UsageError(f"unknown dim mode {mode!r}; use one of {', '.join(DIM_MODES)}")


@command("param-solve")
def param_solve_command(config: RunConfig) -> Output:
    word = _need(config, "word")
    return Output(records=[_beta_record(solve_beta_from_self_admissible(word), N=len(word), verified=True)])


@command("param-exponents")
def param_exponents_command(config: RunConfig) -> Output:
    x0, horizon = _need(config, "x0", "horizon")
    if config.beta is not None:
        bp = _base(config)
    else:
        bp = BetaParam(solve_beta_from_self_admissible(_need(config, "word")))
    estimate = parameter_exponents(bp, _point(x0, bp), horizon, **_window(config))
    return _exponent_output(estimate)


# -- output --------------------------------------------------------------------


def _render(config: RunConfig, out: Output) -> str:
    if config.format == "digits":
        if out.digits is not None:
            bp, word = out.digits
            return format_digit_file(bp, word)
        if out.words is not None:
            return "".join(w.text() + "\n" for w in out.words)
        raise UsageError(f"{config.command} has no digit output; use --format jsonl or csv")
    records = list(out.records)
    if out.digits is not None:
        bp, word = out.digits
        records.append(DigitsRecord(beta=bp.literal, alphabet_top=bp.alphabet_top, n=len(word), digits=list(word)))
    if config.format == "jsonl":
        if out.summary is not None:
            records.append(out.summary)
        return "".join(r.model_dump_json(exclude_none=True) + "\n" for r in records)
    if out.summary is not None:
        logger.info("summary: %s", out.summary.model_dump_json(exclude_none=True))
    if not records:
        return ""
    buffer = io.StringIO()
    names = list(type(records[0]).model_fields)
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(names)
    for record in records:
        row = []
        for name in names:
            value = getattr(record, name)
            if isinstance(value, list):
                value = " ".join(str(v) for v in value)
            row.append("" if value is None else value)
        writer.writerow(row)
    return buffer.getvalue()


def _emit(config: RunConfig, text: str) -> None:
    if config.output:
        Path(config.output).write_text(text, encoding="utf-8")
        logger.info("wrote %s", config.output)
    else:
        sys.stdout.write(text)


def dispatch(config: RunConfig) -> int:
    """Run one command; returns the exit status."""
    handler = HANDLERS.get(config.command)
    try:
        if handler is None:
            raise UsageError(f"unknown command {config.command!r}")
        _emit(config, _render(config, handler(config)))
    except UsageError as e:
        print(f"{e.name}: {str(e)}", file=sys.stderr)
        return 2
    except BetaDimError as e:
        print(f"{e.name}: {str(e)}", file=sys.stderr)
        return 1
    except (OSError, ValidationError) as e:
        print(f"{type(e).__name__}: {str(e)}", file=sys.stderr)
        return 1
    return 0


# -- argument parsing ----------------------------------------------------------


def _word(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a digit word: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--beta", help="Base β: 1.5, 5/2, root:[c0,...,ck]@[a,b]")
    common.add_argument("--x", help="Point x; beta:[c0,c1,...] means Σ c_i β^i")
    common.add_argument("--x0", help="Target point x₀")
    common.add_argument("--v", help="Asymptotic exponent v")
    common.add_argument("--vhat", help="Uniform exponent v̂")
    common.add_argument("--n", type=int, help="Word length, prefix length or depth")
    common.add_argument("--N", type=int, help="Truncation order of β_N")
    common.add_argument("--word", type=_word, help="Digit word, e.g. '1,0,1'")
    common.add_argument("--horizon", type=int, help="Orbit horizon")
    common.add_argument("--depth", type=int, help="Construction depth")
    common.add_argument("--k-max", type=int, help="Number of construction stages")
    common.add_argument("--window", help="Tail window fraction (default 1/3)")
    common.add_argument("--start", type=int, choices=(0, 1), default=1, help="First orbit index")
    common.add_argument("--seed", type=int, help=f"Free-slot filler seed (default {DEFAULT_SEED})")
    common.add_argument("--fill", help="Free-slot policy: random, zeros or word:<digits>")
    common.add_argument("--eps-prime", help="ε′ for the critical exponent s₀")
    common.add_argument("--parameter", action="store_true", help="Parameter-space reading of dim formula")
    common.add_argument("--spec", dest="spec_file", help="Construction spec JSON file")
    common.add_argument("--output", help="Write results here instead of stdout")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default="jsonl", help="Output format")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level")

    parser = argparse.ArgumentParser(prog="betadim", description="β-expansions, approximation exponents and dimension")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "dim":
            p.add_argument("mode", choices=DIM_MODES, help="formula, max or estimate")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else LOG_LEVEL,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    fields = {k: v for k, v in vars(args).items() if k != "verbose" and v is not None}
    try:
        config = RunConfig(**fields)
    except ValidationError as e:
        print(f"UsageError: {str(e)}", file=sys.stderr)
        return 2
    return dispatch(config)


if __name__ == "__main__":
    sys.exit(main())
