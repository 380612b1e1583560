"""Command-line front end: ``ordmod4 {census,theory,compare,verify,constant-c}``."""

import argparse
import sys

from .census import census
from .errors import Ordmod4Error, PreconditionError, ResourceError
from .report import (
    CSV_FIELDS,
    TABLE_A_LIST,
    CensusCache,
    CensusRunner,
    RunConfig,
    census_records,
    check_records,
    comparison_records,
    comparison_rows,
    load_config,
    render,
    theory_records,
)
from .series import TruncationParams, constant_C
from .verify import verification_suite

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_RESOURCE = 0, 1, 2, 3

# built-in defaults, applied after the config file and the flags
DEFAULTS = {
    "a_list": TABLE_A_LIST,
    "x": 10**7,
    "workers": 1,
    "format": "md",
    "prime_bound": 10**6,
    "k_bound": 10**4,
    "f_max": 12,
    "n_bound": 10**4,
    "tolerance": 5e-3,
    "cache": None,
}
_CONVERT = {
    "a": int,
    "a_list": lambda s: tuple(int(v) for v in str(s).replace(",", " ").split()),
    "x": int,
    "workers": int,
    "format": str,
    "prime_bound": int,
    "k_bound": int,
    "f_max": int,
    "n_bound": int,
    "tolerance": float,
    "cache": str,
}


class VerificationFailed(Ordmod4Error):
    exit_code = EXIT_VERIFY

    def __init__(self, message, output=""):
        super().__init__(message)
        self.output = output


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise PreconditionError(message)


def _int(text):
    # accept 10**7 style and 1e7 style bounds as well as plain integers
    text = text.strip()
    if "**" in text:
        base, exp = text.split("**", 1)
        return int(base) ** int(exp)
    if "e" in text.lower():
        value = float(text)
        if value != int(value):
            raise argparse.ArgumentTypeError(f"not an integer: {text}")
        return int(value)
    return int(text)


def build_parser():
    p = _Parser(prog="ordmod4", description=__doc__.split(":")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("md", "csv", "json"))
        sp.add_argument("--config", help="key=value file; flags take precedence")

    def truncation(sp):
        sp.add_argument("--prime-bound", type=_int)
        sp.add_argument("--k-bound", type=_int)
        sp.add_argument("--f-max", type=_int)
        sp.add_argument("--n-bound", type=_int)
        sp.add_argument("--tolerance", type=float)

    sp = sub.add_parser("census", help="count primes by order class mod 4")
    sp.add_argument("--a", type=_int)
    sp.add_argument("--x", type=_int)
    sp.add_argument("--workers", type=int)
    sp.add_argument("--cache")
    common(sp)

    sp = sub.add_parser("theory", help="exact densities for one a")
    sp.add_argument("--a", type=_int)
    sp.add_argument("--prime-bound", type=_int)
    common(sp)

    sp = sub.add_parser("compare", help="theory against census for a list of a")
    sp.add_argument("--a-list")
    sp.add_argument("--x", type=_int)
    sp.add_argument("--workers", type=int)
    sp.add_argument("--cache")
    truncation(sp)
    common(sp)

    sp = sub.add_parser("verify", help="series against closed forms")
    truncation(sp)
    common(sp)

    sp = sub.add_parser("constant-c", help="the Euler product C")
    sp.add_argument("--prime-bound", type=_int)
    common(sp)
    return p


def resolve(args):
    """Merge flags over the config file over the defaults."""
    opts = dict(DEFAULTS)
    if getattr(args, "config", None):
        for key, value in load_config(args.config).items():
            if key not in _CONVERT:
                raise PreconditionError(f"{args.config}: unknown key {key!r}")
            try:
                opts[key] = _CONVERT[key](value)
            except ValueError:
                raise PreconditionError(f"{args.config}: bad value for {key}: {value!r}") from None
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        opts[key] = _CONVERT[key](value) if key == "a_list" else value
    return opts


def _truncation(o):
    return TruncationParams(prime_bound=o["prime_bound"], k_bound=o["k_bound"],
                            f_max=o["f_max"], n_bound=o["n_bound"], tolerance=o["tolerance"])


def _require_a(o):
    if "a" not in o:
        raise PreconditionError("--a is required")
    return o["a"]


def cmd_census(o):
    a = _require_a(o)
    if o.get("cache"):
        c = CensusRunner(o["x"], o["workers"], CensusCache(o["cache"]))(a)
    else:
        c = census(a, o["x"], o["workers"])
    return render(census_records(c), o["format"])


def cmd_theory(o):
    a = _require_a(o)
    c_value = constant_C(o["prime_bound"]).value
    return render(theory_records(a, c_value), o["format"])


def cmd_compare(o):
    config = RunConfig(a_list=o["a_list"], x=o["x"], c_prime_bound=o["prime_bound"],
                       truncation=_truncation(o), output_format=o["format"],
                       workers=o["workers"], cache_path=o.get("cache"))
    cache = CensusCache(config.cache_path) if config.cache_path else None
    run = CensusRunner(config.x, config.workers, cache)
    c_value = constant_C(config.c_prime_bound).value
    rows = comparison_rows(config.a_list, run, c_value)
    return render(comparison_records(rows), config.output_format, CSV_FIELDS)


def cmd_verify(o):
    checks = verification_suite(_truncation(o))
    text = render(check_records(checks), o["format"])
    failed = [c.name for c in checks if not c.passed]
    if failed:
        raise VerificationFailed(f"{len(failed)} check(s) failed: {failed[0]}", output=text)
    return text


def cmd_constant_c(o):
    v = constant_C(o["prime_bound"])
    rec = {"value": f"{v.value:.10f}", "prime_bound": v.prime_bound,
           "tail_bound": f"{v.tail_bound:.3e}"}
    return render([rec], o["format"])


COMMANDS = {
    "census": cmd_census,
    "theory": cmd_theory,
    "compare": cmd_compare,
    "verify": cmd_verify,
    "constant-c": cmd_constant_c,
}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text = COMMANDS[args.command](resolve(args))
    except VerificationFailed as exc:
        stdout.write(exc.output)
        print(f"ordmod4: {exc}", file=stderr)
        return EXIT_VERIFY
    except (Ordmod4Error, ValueError, OSError, MemoryError) as exc:
        code = getattr(exc, "exit_code", None)
        if code is None:
            code = EXIT_RESOURCE if isinstance(exc, (MemoryError, ResourceError)) else EXIT_DOMAIN
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"ordmod4: error: {msg}", file=stderr)
        return code
    stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
