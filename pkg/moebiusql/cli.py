import argparse
import logging
from dataclasses import fields
from pathlib import Path
from typing import Callable, Optional, Sequence
from moebiusql.config import COMMANDS, CommandType, RunConfig
from moebiusql.ql import MoebiusQL
from moebiusql.utils.errors import ConfigError, MoebiusQLError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILED = 3

CONFIG_FIELDS = {f.name for f in fields(RunConfig)}
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

COMMAND_RUNNERS: dict[CommandType, Callable[[MoebiusQL], MoebiusQL]] = {
    "sieve": lambda ql: ql.sieve(),
    "corr": lambda ql: ql.correlations(),
    "spectrum": lambda ql: ql.spectrum(),
    "mirsky": lambda ql: ql.mirsky(),
    "affinity": lambda ql: ql.affinity(),
    "flatness": lambda ql: ql.flatness(),
    "davenport": lambda ql: ql.davenport(),
    "entropy": lambda ql: ql.entropy(),
    "simulate": lambda ql: ql.simulate(),
    "concentration": lambda ql: ql.concentration(),
    "report": lambda ql: ql.acceptance(),
}


def _integer(item: str) -> int:
    base, _, exponent = item.partition("**")
    return int(base) ** int(exponent) if exponent else int(base)

def _geometric_run(first: int, second: int, last: int) -> list[int]:
    "the terms after second of first, second, ... up to and including last"
    if first < 1 or second <= first or second % first:
        raise argparse.ArgumentTypeError(f"{first},{second},... does not start a geometric progression")
    ratio = second // first
    terms = []
    value = second * ratio
    while value <= last:
        terms.append(value)
        value *= ratio
    if not terms or terms[-1] != last:
        raise argparse.ArgumentTypeError(f"{last} is not a term of {first},{second},...")
    return terms

def int_list(text: str) -> list[int]:
    """Comma separated integers.

    Items may be written as 2**k or 10**k, as an inclusive range a..b, and
    `a,b,...,z` continues the progression with ratio b/a up to z, so
    `8,16,...,256` is every power of two from 8 to 256.
    """
    values: list[int] = []
    continuing = False
    for item in filter(None, (part.strip() for part in text.split(","))):
        try:
            if item == "...":
                if len(values) < 2 or continuing:
                    raise argparse.ArgumentTypeError(f"'...' needs two leading terms: {text}")
                continuing = True
            elif ".." in item and not continuing:
                low, _, high = item.partition("..")
                values.extend(range(_integer(low), _integer(high) + 1))
            elif continuing:
                values.extend(_geometric_run(values[-2], values[-1], _integer(item)))
                continuing = False
            else:
                values.append(_integer(item))
        except ValueError as error:
            raise argparse.ArgumentTypeError(f"not an integer: {item}") from error
    if continuing:
        raise argparse.ArgumentTypeError(f"'...' needs a last term: {text}")
    return values

def exponent_range(text: str) -> list[int]:
    "lo:hi is 2**lo, 2**(lo+1), ..., 2**hi; anything else is read as an int_list"
    if ":" not in text:
        return int_list(text)
    low, _, high = text.partition(":")
    try:
        low, high = int(low), int(high)
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"not an exponent range: {text}") from error
    if not 0 <= low <= high:
        raise argparse.ArgumentTypeError(f"exponent range must satisfy 0 <= lo <= hi: {text}")
    return [2**e for e in range(low, high + 1)]

def float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text}") from error

def integer(text: str) -> int:
    values = int_list(text)
    if len(values) != 1:
        raise argparse.ArgumentTypeError(f"expected one integer, got {text}")
    return values[0]


def _global_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--config", type=str, default=None, help="JSON config file; flags win over its values.")
    flags.add_argument("--out-dir", dest="out_dir", type=str, default=None, help="Output directory.")
    flags.add_argument("--out", type=str, default=None, help="Data file of the run; sets the output directory, the file stem and the format.")
    flags.add_argument("--cache-dir", dest="cache_dir", type=str, default=None, help="Sieve cache directory.")
    flags.add_argument("--no-cache", dest="use_cache", action="store_false", default=None, help="Always sieve afresh.")
    flags.add_argument("--format", choices=("csv", "json"), default=None, help="Data file format.")
    flags.add_argument("--workers", type=int, default=None, help="Threads for the sieve and the FFTs.")
    verbosity = flags.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="Log at DEBUG.")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Log warnings only.")
    return flags

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moebiusql", description="Moebius function spectral and number-theory experiments.")
    commands = parser.add_subparsers(dest="command", required=True, metavar="{" + ",".join(COMMANDS) + "}")
    flags = [_global_flags()]

    def add_command(name: CommandType, help: str) -> argparse.ArgumentParser:
        command = commands.add_parser(name, parents=flags, help=help)
        command.add_argument("--n", "--n-max", dest="n_max", type=integer, default=None, help="Sieve size and sample length N.")
        return command

    add_command("sieve", "Mertens, Landau and squarefree partial sums.")

    corr = add_command("corr", "Correlations of mu, mu2 or a generator.")
    corr.add_argument("--kmax", dest="k_max", type=int, default=None, help="Largest lag.")
    corr.add_argument("--sequence", type=str, default=None, help="mu, mu2 or a generator spec such as rotation:golden.")

    spectrum = add_command("spectrum", "Periodogram of mu and the mu^2 spectral measure.")
    spectrum.add_argument("--grid", type=integer, default=None, help="Grid size, a power of two.")
    spectrum.add_argument("--d-max", dest="d_max", type=int, default=None, help="Largest d of the mu^2 spectrum.")
    spectrum.add_argument("--prime-cutoff", dest="prime_cutoff", type=integer, default=None, help="Euler product cutoff P.")

    mirsky = add_command("mirsky", "mu^2 correlations against the Mirsky coefficients.")
    mirsky.add_argument("--kmax", dest="k_max", type=int, default=None, help="Largest lag.")
    mirsky.add_argument("--prime-cutoff", dest="prime_cutoff", type=integer, default=None, help="Euler product cutoff P.")

    affinity = add_command("affinity", "Bellow-Losert check of a generator pair.")
    affinity.add_argument("--system", type=str, default=None, help="First sequence.")
    affinity.add_argument("--pair", type=str, default=None, help="Second sequence, mu by default.")
    affinity.add_argument("--slack", type=float, default=None, help="Finite-n slack.")

    add_command("flatness", "L1 flatness of the Moebius polynomials.")
    add_command("davenport", "Normalised sup of the Moebius exponential sums.")

    entropy = add_command("entropy", "Block-count entropy of a generator.")
    entropy.add_argument("--system", type=str, default=None, help="Generator spec.")
    entropy.add_argument("--m", "--m-list", dest="m_list", type=int_list, default=None, help="Block lengths such as 8,16,...,256.")
    entropy.add_argument("--epsilon", type=float, default=None, help="Metric resolution.")

    simulate = add_command("simulate", "Random Moebius orthogonality decay.")
    simulate.add_argument("--system", type=str, default=None, help="Generator spec.")
    simulate.add_argument("--seeds", type=int_list, default=None, help="Seeds such as 0..49.")
    simulate.add_argument("--ngrid", "--n-grid", dest="n_grid", type=exponent_range, default=None, help="Sample sizes, lo:hi for 2**lo..2**hi or a list.")
    simulate.add_argument("--union", action="store_true", help="Also run the union-bound experiment.")
    simulate.add_argument("--m", type=int, default=None, help="Block length of the union-bound experiment.")
    simulate.add_argument("--delta", type=float, default=None, help="Deviation of the union-bound experiment.")

    concentration = add_command("concentration", "Hoeffding-Azuma Monte-Carlo check.")
    concentration.add_argument("--m", type=int, default=None, help="Number of increments.")
    concentration.add_argument("--t", dest="t_list", type=float_list, default=None, help="Thresholds in units of sqrt(m).")
    concentration.add_argument("--trials", type=integer, default=None, help="Monte-Carlo trials.")
    concentration.add_argument("--martingale", action="store_true", default=None, help="Use predictable increments.")

    report = add_command("report", "Run the acceptance criteria.")
    report.add_argument("--suite", choices=("acceptance", "quick"), default=None, help="Criteria sizes.")
    report.add_argument("--criteria", type=int_list, default=None, help="Criterion numbers, all by default.")
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger("numba").setLevel(max(level, logging.WARNING))

def _out_file_overrides(out: str, out_dir: Optional[str]) -> dict[str, str]:
    "--out decay.csv writes the primary table to decay.csv; a relative path lands under --out-dir"
    file_path = Path(out_dir or ".") / out
    overrides = {"out_dir": str(file_path.parent), "out_name": file_path.stem}
    suffix = file_path.suffix.lower()
    if suffix in (".csv", ".json"):
        overrides["format"] = suffix[1:]
    elif suffix:
        raise ConfigError(f"--out must name a .csv or .json file, got {out}")
    return overrides

def resolve_config(args: argparse.Namespace) -> RunConfig:
    "config file first, then every flag that was given"
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    overrides = {key: value for key, value in vars(args).items() if key in CONFIG_FIELDS}
    if getattr(args, "slack", None) is not None:
        overrides["tolerances"] = {"slack": args.slack}
    if args.out:
        overrides.update(_out_file_overrides(args.out, args.out_dir))
    return config.merged(overrides).validate()

def run(config: RunConfig, union: bool = False) -> bool:
    "runs the configured command, writes its outputs and returns whether every check passed"
    with MoebiusQL(config) as ql:
        COMMAND_RUNNERS[config.command](ql)
        if union:
            ql.unionBound()
        ql.generate().write()
        for path in ql.written:
            logger.debug("wrote %s", path)
        return ql.passed

def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        config = resolve_config(args)
        passed = run(config, getattr(args, "union", False))
    except MoebiusQLError as error:
        logger.error("%s: %s", type(error).__name__, error)
        return EXIT_INVALID
    except AssertionError as error:
        logger.exception("internal check failed: %s", error)
        return EXIT_FAILED

    if config.command == "report" and not passed:
        logger.error("acceptance criteria failed, see report.csv in %s", config.out_dir)
        return EXIT_FAILED
    return EXIT_OK
