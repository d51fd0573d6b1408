"""Command-line surface.

Exit codes: 0 success, 2 parse errors, 3 precondition violations,
4 identity-check failures, 5 numeric-tolerance failures.  The
`records` output format is deterministic: identical inputs produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConvergenceError, ParseError, PreconditionError
from .groups import (
    group_counting,
    group_from_name,
    group_functional_equation,
    group_zeta,
    load_group,
    verify_family_identities,
)
from .powerlog import (
    PowerLogSum,
    detect_functional_equation,
    load_power_log,
    parse_power_log,
    to_records,
)
from .regularize import regularized_det, spectrum_by_name
from .scheme_zeta import betti_profile, global_functional_equation, zeta_of_scheme
from .schemes import exact_count, fourier_data, load_scheme
from .weil import (
    default_base_sequence,
    limit_toward_one,
    local_functional_equation,
    local_zeta_series,
    pole_order,
)
from .zetas import epsilon_factor, pretty_zeta, zeta_to_records
from . import zetas

DEFAULT_TOL_ENV = "F1ZETA_TOL"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_IDENTITY = 4
EXIT_TOLERANCE = 5


@dataclass(frozen=True)
class RunConfig:
    command: str
    scheme_path: str | None = None
    powers: str | None = None
    group: str | None = None
    spectrum: str = "circle"
    q: int | None = None
    p: str | None = None
    s: str | None = None
    w: str | None = None
    terms: int | None = None
    tol: float = 1e-9
    fmt: str = "pretty"


def parse_complex_value(text: str) -> complex:
    """Accept exact rationals ("3", "-5/2") or complex decimals ("2+1i")."""
    t = text.strip().replace(" ", "")
    try:
        return complex(Fraction(t))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(t.replace("i", "j"))
    except ValueError as exc:
        raise ParseError(f"cannot parse complex value {text!r}") from exc


def parse_base(text: str) -> int | float:
    """A prime (integer) or real base for p."""
    t = text.strip()
    try:
        return int(t)
    except ValueError:
        pass
    try:
        return float(t)
    except ValueError as exc:
        raise ParseError(f"cannot parse base {text!r}") from exc


def _load_powers(arg: str) -> PowerLogSum:
    if os.path.exists(arg):
        return load_power_log(arg)
    return parse_power_log(arg)


def _require(config: RunConfig, attr: str, flag: str) -> object:
    value = getattr(config, attr)
    if value is None:
        raise PreconditionError(f"command {config.command!r} requires {flag}")
    return value


def _fmt_complex(z: complex) -> str:
    return f"{z.real!r}\t{z.imag!r}"


def _cmd_count(config: RunConfig, out) -> int:
    scheme = load_scheme(str(_require(config, "scheme_path", "--scheme")))
    q = int(_require(config, "q", "--q"))
    print(exact_count(scheme, q), file=out)
    return EXIT_OK


def _resolve_zeta(config: RunConfig):
    if config.scheme_path is not None:
        return zeta_of_scheme(load_scheme(config.scheme_path))
    if config.group is not None:
        return group_zeta(_resolve_group(config.group))
    if config.powers is not None:
        return zetas.zeta_of(_load_powers(config.powers))
    raise PreconditionError("need one of --scheme, --group, --powers")


def _resolve_group(arg: str):
    if os.path.exists(arg):
        return load_group(arg)
    return group_from_name(arg)


def _cmd_zeta(config: RunConfig, out) -> int:
    z = _resolve_zeta(config)
    if config.fmt == "records":
        for rec in zeta_to_records(z):
            print("\t".join(str(v) for v in rec), file=out)
        return EXIT_OK
    print(pretty_zeta(z), file=out)
    if config.scheme_path is not None:
        # exponent table: level r, factor exponent e_r, Betti number b_2r
        profile = betti_profile(load_scheme(config.scheme_path))
        for r, b in enumerate(profile.values):
            print(f"exponent\t{r}\t{-b}\t{b}", file=out)
    return EXIT_OK


def _cmd_fe_check(config: RunConfig, out) -> int:
    if config.scheme_path is not None:
        scheme = load_scheme(config.scheme_path)
        if config.p is not None:
            p = parse_base(config.p)
            if not isinstance(p, int):
                raise PreconditionError("local checks need an integer prime base")
            local = local_functional_equation(scheme, p)
            if config.fmt == "records":
                print(f"holds\t{str(local.holds).lower()}", file=out)
                print(f"chi\t{local.chi}", file=out)
                print(f"squared_form\t{str(local.squared_form).lower()}", file=out)
                for r, er, em in local.mismatches:
                    print(f"mismatch\t{r}\t{er}\t{em}", file=out)
            else:
                print(local, file=out)
            return EXIT_OK if local.holds else EXIT_IDENTITY
        report = global_functional_equation(scheme)
        if config.fmt == "records":
            print(f"holds\t{str(report.holds).lower()}", file=out)
            print(f"chi\t{report.chi}", file=out)
            for l, bl, bm in report.asymmetries:
                print(f"asymmetry\t{l}\t{bl}\t{bm}", file=out)
        else:
            print(report, file=out)
        return EXIT_OK if report.holds else EXIT_IDENTITY
    if config.group is not None:
        report = group_functional_equation(_resolve_group(config.group))
        print(report, file=out)
        return EXIT_OK if report.holds else EXIT_IDENTITY
    if config.powers is not None:
        n = _load_powers(config.powers)
        witness = detect_functional_equation(n)
        if witness is None:
            print("no functional equation witness", file=out)
            return EXIT_IDENTITY
        fe = zetas.verify_functional_equation(n, witness)
        print(fe, file=out)
        return EXIT_OK if fe.holds else EXIT_IDENTITY
    raise PreconditionError("need one of --scheme, --group, --powers")


def _cmd_local(config: RunConfig, out) -> int:
    scheme = load_scheme(str(_require(config, "scheme_path", "--scheme")))
    p = parse_base(str(_require(config, "p", "--p")))
    if not isinstance(p, int):
        raise PreconditionError("local series need an integer prime base")
    order = config.terms if config.terms is not None else 8
    series = local_zeta_series(scheme, p, order)
    for n, c in enumerate(series.coefficients):
        print(f"{n}\t{c.numerator}/{c.denominator}", file=out)
    return EXIT_OK


def _cmd_limit(config: RunConfig, out) -> int:
    scheme = load_scheme(str(_require(config, "scheme_path", "--scheme")))
    s = parse_complex_value(str(_require(config, "s", "--s")))
    count = config.terms if config.terms is not None else 6
    seq = default_base_sequence(count)
    values = limit_toward_one(scheme, s, seq)
    for p, v in zip(seq, values):
        print(f"{p!r}\t{_fmt_complex(v)}", file=out)
    if config.fmt == "pretty":
        target = zetas.evaluate_zeta(zeta_of_scheme(scheme), s)
        print(f"target\t{_fmt_complex(target)}", file=out)
        print(f"pole_order\t{pole_order(scheme)}", file=out)
    return EXIT_OK


def _cmd_dual(config: RunConfig, out) -> int:
    n = _load_powers(str(_require(config, "powers", "--powers")))
    d = n.dual()
    if config.fmt == "records":
        for rec in to_records(d):
            print("\t".join(str(v) for v in rec), file=out)
    else:
        print(d, file=out)
    return EXIT_OK


def _cmd_epsilon(config: RunConfig, out) -> int:
    n = _load_powers(str(_require(config, "powers", "--powers")))
    eps = epsilon_factor(n)
    if config.fmt == "records":
        print(f"sign\t{eps.sign}", file=out)
        print(f"residual\t{eps.numeric_residual!r}", file=out)
    else:
        print(eps.sign, file=out)
    if eps.numeric_residual > config.tol:
        return EXIT_TOLERANCE
    return EXIT_OK


def _cmd_group(config: RunConfig, out) -> int:
    name = str(_require(config, "group", "--group"))
    group = _resolve_group(name)
    n = group_counting(group)
    report = group_functional_equation(group)
    print(f"group\t{group.name or name}", file=out)
    print(f"counting\t{n}", file=out)
    print(f"zeta\t{pretty_zeta(group_zeta(group))}", file=out)
    print(f"fe\t{str(report.holds).lower()}\tcenter\t{report.expected_center}"
          f"\tsign\t{report.expected_sign}", file=out)
    status = EXIT_OK if report.holds else EXIT_IDENTITY
    key = name.split(":")[0].lower()
    if key in ("gl", "gm"):
        family = "gl" if key == "gl" else "gm_power"
        fam = verify_family_identities(group.rank, family)
        for label, ok in fam.results:
            print(f"identity\t{str(ok).lower()}\t{label}", file=out)
        if not fam.holds:
            status = EXIT_IDENTITY
    return status


def _cmd_regdet(config: RunConfig, out) -> int:
    spec = spectrum_by_name(config.spectrum)
    s = parse_complex_value(str(_require(config, "s", "--s")))
    if s.imag != 0:
        raise PreconditionError("regularized determinants are evaluated at real s")
    value = regularized_det(spec, s.real, tol=config.tol, terms=config.terms)
    print(repr(value), file=out)
    return EXIT_OK


def _cmd_fourier(config: RunConfig, out) -> int:
    scheme = load_scheme(str(_require(config, "scheme_path", "--scheme")))
    p = parse_base(str(_require(config, "p", "--p")))
    if not isinstance(p, int):
        raise PreconditionError("Fourier coefficients need an integer prime base")
    data = fourier_data(scheme, p)
    print(f"period\t{data.period}", file=out)
    for x, jidx, t, coeffs in data.entries:
        for nu, c in enumerate(coeffs, start=1):
            print(f"{x}\t{jidx}\t{t}\t{nu}\t{c.real!r}\t{c.imag!r}", file=out)
    err = data.reconstruction_error()
    print(f"reconstruction_error\t{err!r}", file=out)
    if err > config.tol:
        return EXIT_TOLERANCE
    return EXIT_OK


_HANDLERS = {
    "count": _cmd_count,
    "zeta": _cmd_zeta,
    "fe-check": _cmd_fe_check,
    "local": _cmd_local,
    "limit": _cmd_limit,
    "dual": _cmd_dual,
    "epsilon": _cmd_epsilon,
    "group": _cmd_group,
    "regdet": _cmd_regdet,
    "fourier": _cmd_fourier,
}


def run(config: RunConfig, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        return _HANDLERS[config.command](config, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConvergenceError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def _default_tol() -> float:
    raw = os.environ.get(DEFAULT_TOL_ENV)
    if raw is None:
        return 1e-9
    try:
        tol = float(raw)
    except ValueError:
        return 1e-9
    return tol if tol > 0 else 1e-9


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="f1zeta",
        description="Counting functions and zeta functions over the one-element base.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, helptext in [
        ("count", "point count of a scheme over F_q"),
        ("zeta", "factored zeta of a scheme, group or counting function"),
        ("fe-check", "verify a functional equation exactly"),
        ("local", "local zeta series coefficients at a prime"),
        ("limit", "(p-1)^N Z~(p, p^-s) along p -> 1"),
        ("dual", "dual counting function u -> 1/u"),
        ("epsilon", "epsilon factor of a counting function"),
        ("group", "reductive-group counting, zeta and identities"),
        ("regdet", "regularized determinant of a spectrum shifted by s"),
        ("fourier", "Fourier coefficients of gcd(t, p^n - 1)"),
    ]:
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("--scheme", dest="scheme_path", metavar="FILE")
        cmd.add_argument("--powers", metavar="EXPR|FILE")
        cmd.add_argument("--group", metavar="NAME|FILE")
        cmd.add_argument("--spectrum", default="circle", metavar="NAME")
        cmd.add_argument("--q", type=int)
        cmd.add_argument("--p", metavar="PRIME|REAL")
        cmd.add_argument("--s", metavar="COMPLEX")
        cmd.add_argument("--w", metavar="COMPLEX")
        cmd.add_argument("--terms", type=int)
        cmd.add_argument("--tol", type=float)
        cmd.add_argument("--format", dest="fmt", choices=("pretty", "records"),
                         default="pretty")
        cmd.add_argument("--pretty", action="store_const", const="pretty", dest="fmt",
                         help="shorthand for --format pretty")
    return parser


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    tol = args.tol if args.tol is not None else _default_tol()
    if tol <= 0:
        raise ParseError("tolerances must be positive")
    return RunConfig(
        command=args.command,
        scheme_path=args.scheme_path,
        powers=args.powers,
        group=args.group,
        spectrum=args.spectrum,
        q=args.q,
        p=args.p,
        s=args.s,
        w=args.w,
        terms=args.terms,
        tol=tol,
        fmt=args.fmt,
    )


def main(argv: list[str] | None = None) -> int:
    try:
        config = config_from_args(argv)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return run(config)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
