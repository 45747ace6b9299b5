"""
Command-line front end.

    python -m pyns2 spectrum --m 2
    python -m pyns2 gram --m 2 --label 1/2,1/2 --level 1 --charge 0
    python -m pyns2 fusion-bound --m 2 --labels "(1/2,3/2);(1/2,3/2);(1/2,1/2)"
    python -m pyns2 coset verify --m 1 --label 1/2,1/2 --cutoff 5/2
    python -m pyns2 oddvar check --c 3/2

Reports go to stdout as JSON (or CSV); diagnostics go to stderr. Exit status
is 0 on success, 2 on invalid input and 3 when a verification report
contains failures.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from . import DEFAULT_CACHE_DIR
from .cache import ResultCache
from .exactfield import parse_rational, to_json
from .minimal import (
    CONVENTIONS,
    STANDARD,
    MinimalLabel,
    charge_components,
    check_unitarity,
    classify_chirality,
    fusion_table,
    fusion_upper_bound,
    labels_json,
    leading_exponent,
    parse_label,
    parse_labels,
    spectrum,
)
from .pbw import VermaParams
from .verma import character, gram, primitive_vectors, singular_vectors, vacuum_params

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILED = 3

FORMATS = ("json", "csv")


def _half_integer(text: str, what: str) -> Fraction:
    value = parse_rational(text)
    if value < 0 or (2 * value).denominator != 1:
        raise ValueError(f"{what} must be a nonnegative half-integer, got {text}")
    return value


@dataclass(frozen=True)
class SessionConfig:
    m: int = 2
    convention: str = STANDARD
    cutoff: Fraction = Fraction(4)
    window: int = 3
    cache_dir: Optional[str] = DEFAULT_CACHE_DIR
    fmt: str = "json"
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}, expected one of {CONVENTIONS}")
        if self.cutoff < 0 or (2 * self.cutoff).denominator != 1:
            raise ValueError(f"cutoff must be a nonnegative half-integer, got {self.cutoff}")
        if self.window < 0:
            raise ValueError(f"window must be >= 0, got {self.window}")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}, expected one of {FORMATS}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> SessionConfig:
        return cls(
            m=args.m,
            convention=args.convention,
            cutoff=_half_integer(getattr(args, "cutoff", "4"), "cutoff"),
            window=getattr(args, "window", 3),
            cache_dir=None if args.no_cache else args.cache_dir,
            fmt=args.format,
            verbose=args.verbose,
        )

    @property
    def c(self) -> Fraction:
        return Fraction(3 * self.m, self.m + 2)

    def label(self, text: Optional[str]) -> Optional[MinimalLabel]:
        return parse_label(text, self.m) if text else None


Command = Callable[[SessionConfig, argparse.Namespace, ResultCache], Any]


def _params(config: SessionConfig, args: argparse.Namespace) -> VermaParams:
    label = config.label(args.label)
    if label is not None:
        return label.params
    if args.c is not None:
        return VermaParams(parse_rational(args.c), parse_rational(args.h), parse_rational(args.q))
    return vacuum_params(config.c)


def _params_json(p: VermaParams) -> Dict[str, Any]:
    return {"c": to_json(p.c), "h": to_json(p.h), "q": to_json(p.q)}


def _grade(args: argparse.Namespace) -> Tuple[Fraction, int]:
    return _half_integer(args.level, "level"), args.charge


def cmd_spectrum(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    return labels_json(spectrum(config.m, config.convention))


def cmd_gram(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    p = _params(config, args)
    level, charge = _grade(args)
    key = {**_params_json(p), "level": str(level), "charge": charge}
    return cache.cached("gram", key, lambda: {**key, **gram(p, level, charge).to_json()})


def cmd_singular(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    p = _params(config, args)
    level, charge = _grade(args)
    key = {**_params_json(p), "level": str(level), "charge": charge, "strict": args.strict}
    find = primitive_vectors if args.strict else singular_vectors

    def compute() -> Any:
        return {**key, "vectors": [v.to_json() for v in find(p, level, charge)]}

    return cache.cached("singular", key, compute)


def cmd_character(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    p = _params(config, args)
    key = {**_params_json(p), "cutoff": str(config.cutoff), "method": args.method}
    return cache.cached("character", key, lambda: character(p, config.cutoff, args.method).to_json())


def cmd_fusion_bound(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    if not args.labels:
        return fusion_table(config.m, config.convention)
    labels = parse_labels(args.labels, config.m)
    if len(labels) != 3:
        raise ValueError(f"fusion-bound needs exactly three labels, got {len(labels)}")
    l1, l2, l3 = labels
    return {
        "labels": [str(label) for label in labels],
        "bound": fusion_upper_bound(l1, l2, l3),
        "components": charge_components(l1, l2, l3),
        "delta": to_json(leading_exponent(l1, l2, l3)),
    }


def cmd_chirality(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    label = config.label(args.label)
    labels = [label] if label is not None else spectrum(config.m, config.convention)
    return [{**lb.to_json(), "chirality": str(classify_chirality(lb))} for lb in labels]


def cmd_unitarity(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    level = _half_integer(args.level, "level")
    key = {"m": config.m, "level": str(level), "convention": config.convention}
    return cache.cached(
        "unitarity", key, lambda: check_unitarity(config.m, level, config.convention, config.verbose).to_json()
    )


def cmd_coset_verify(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    from .coset import verify_affine_relations, verify_rho_and_virasoro

    label = config.label(args.label)
    key = {
        "m": config.m,
        "label": str(label) if label else None,
        "cutoff": str(config.cutoff),
        "window": config.window,
        "max_index": args.max_index,
    }

    def compute() -> Any:
        window = (config.cutoff, config.window, args.max_index, config.verbose)
        report = verify_affine_relations(config.m, label, *window)
        report.merge(verify_rho_and_virasoro(config.m, label, *window))
        return report.to_json()

    return cache.cached("coset verify", key, compute)


def cmd_coset_decompose(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    from .coset import find_affine_hw

    label = config.label(args.label)
    key = {"m": config.m, "label": str(label) if label else None, "cutoff": str(config.cutoff), "window": config.window}
    return cache.cached(
        "coset decompose",
        key,
        lambda: find_affine_hw(config.m, label, config.cutoff, config.window, config.verbose).to_json(),
    )


def cmd_oddvar_check(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    from .oddvar import verify_odd_calculus

    c = parse_rational(args.c) if args.c is not None else config.c
    max_weight = _half_integer(args.level, "level")
    key = {"c": str(c), "cutoff": str(config.cutoff), "level": str(max_weight), "max_index": args.max_index}
    return cache.cached(
        "oddvar check",
        key,
        lambda: verify_odd_calculus(c, config.cutoff, max_weight, args.max_index, config.verbose).to_json(),
    )


def cmd_shell(config: SessionConfig, args: argparse.Namespace, cache: ResultCache) -> Any:
    from .shell import interactive_shell

    asyncio.run(interactive_shell(config))
    return None


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", help="level of the minimal model, c = 3m/(m+2)", default=2, type=int)
    common.add_argument("--convention", help="spectrum bound", default=STANDARD, choices=CONVENTIONS)
    common.add_argument("--format", help="output format", default="json", choices=FORMATS)
    common.add_argument("--cache-dir", help="result cache directory", default=DEFAULT_CACHE_DIR)
    common.add_argument("--no-cache", help="do not read or write the cache", default=False, action="store_true")
    common.add_argument("--verbose", help="list failures on stderr", default=False, action="store_true")
    return common


def _module_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--label", help="minimal-model label j,k (uses --m)", default=None)
    parser.add_argument("--c", help="central charge, instead of --label", default=None)
    parser.add_argument("--h", help="L(0) eigenvalue", default="0")
    parser.add_argument("--q", help="J(0) eigenvalue", default="0")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    common = _common()
    parser = argparse.ArgumentParser(prog="pyns2", description="N=2 superconformal algebra engine", formatter_class=fmt)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Command, summary: str, into: Any = sub) -> argparse.ArgumentParser:
        p = into.add_parser(name, parents=[common], help=summary, formatter_class=fmt)
        p.set_defaults(func=func)
        return p

    add("spectrum", cmd_spectrum, "labels of the unitary minimal model")

    for name, func, summary in (
        ("gram", cmd_gram, "contravariant form at one grade"),
        ("singular", cmd_singular, "singular vectors at one grade"),
    ):
        p = add(name, func, summary)
        _module_args(p)
        p.add_argument("--level", help="L(0) level above the highest weight", default="0")
        p.add_argument("--charge", help="J(0) charge above the highest weight", default=0, type=int)
        if name == "singular":
            p.add_argument("--strict", help="primitive vectors only", default=False, action="store_true")

    p = add("character", cmd_character, "graded dimensions of the irreducible quotient")
    _module_args(p)
    p.add_argument("--cutoff", help="weight cutoff", default="4")
    p.add_argument("--method", help="dimension method", default="recursive", choices=("recursive", "gram"))

    p = add("fusion-bound", cmd_fusion_bound, "fusion-rule upper bounds")
    p.add_argument("--labels", help="three labels, e.g. (1/2,1/2);(1/2,3/2);(1/2,3/2)", default=None)

    p = add("chirality", cmd_chirality, "chiral / anti-chiral classification")
    p.add_argument("--label", help="label j,k (default: whole spectrum)", default=None)

    p = add("unitarity", cmd_unitarity, "Gram positivity on the whole spectrum")
    p.add_argument("--level", help="highest level checked", default="2")

    coset = sub.add_parser("coset", help="anti-Kazama-Suzuki coset", formatter_class=fmt)
    coset_sub = coset.add_subparsers(dest="action", required=True)
    for name, func, cutoff, summary in (
        ("verify", cmd_coset_verify, "5/2", "affine sl2, rho and Virasoro relations"),
        ("decompose", cmd_coset_decompose, "2", "affine highest-weight vectors"),
    ):
        p = add(name, func, summary, into=coset_sub)
        p.add_argument("--label", help="label j,k (default: vacuum)", default=None)
        p.add_argument("--cutoff", help="affine weight cutoff", default=cutoff)
        p.add_argument("--window", help="lattice sectors |p| <= window", default=2, type=int)
        if name == "verify":
            p.add_argument("--max-index", help="largest |mode index|", default=2, type=int)

    oddvar = sub.add_parser("oddvar", help="odd formal variables", formatter_class=fmt)
    oddvar_sub = oddvar.add_subparsers(dest="action", required=True)
    p = add("check", cmd_oddvar_check, "vertex-operator identities on V(c)", into=oddvar_sub)
    p.add_argument("--c", help="central charge (default: 3m/(m+2))", default=None)
    p.add_argument("--cutoff", help="weight cutoff for series coefficients", default="7/2")
    p.add_argument("--level", help="largest weight of the states checked", default="2")
    p.add_argument("--max-index", help="largest |mode index| in the bracket check", default=2, type=int)

    add("shell", cmd_shell, "interactive evaluator")
    return parser


def _cell(value: Any) -> Any:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return value


def write_csv(payload: Any, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    if isinstance(payload, dict) and "checks" in payload:
        writer.writerow(["check", "checked", "failed"])
        for name, check in payload["checks"].items():
            writer.writerow([name, check["checked"], check["failed"]])
    elif isinstance(payload, list) and all(isinstance(row, dict) for row in payload):
        columns: List[str] = []
        for row in payload:
            columns.extend(k for k in row if k not in columns)
        writer.writerow(columns)
        for row in payload:
            writer.writerow([_cell(row.get(k)) for k in columns])
    elif isinstance(payload, dict):
        writer.writerow(["key", "value"])
        for k in sorted(payload):
            writer.writerow([k, _cell(payload[k])])
    else:
        writer.writerow([_cell(payload)])


def emit(payload: Any, fmt: str, out: TextIO) -> None:
    if fmt == "csv":
        write_csv(payload, out)
    else:
        out.write(json.dumps(payload, indent=4, sort_keys=True) + "\n")


def failed(payload: Any) -> bool:
    return isinstance(payload, dict) and payload.get("passed") is False


def run_command(argv: Sequence[str], out: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else EXIT_USAGE
    try:
        config = SessionConfig.from_args(args)
        cache = ResultCache(config.cache_dir)
        payload = args.func(config, args, cache)
    except ValueError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    if payload is None:
        return EXIT_OK
    emit(payload, config.fmt, out)
    return EXIT_FAILED if failed(payload) else EXIT_OK


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
