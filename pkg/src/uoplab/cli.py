"""
Command line driver: run verification suites, emit integrality certificates,
and load custom root data from JSON.

    uoplab verify --group gl3 --suites hecke,satake
    uoplab integrality --group gl2 --lambda 1,0 --emit-cert cert.json
    uoplab tree --q 3 --depth 8
    uoplab datum --group sp4 > sp4.json
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import checks
from .checks import SUITES, CheckResult
from .errors import ConfigError, InvalidDatum, ParseError, UoplabError
from .rootdata import PRESETS, RootDatum, preset


@dataclass
class RunConfig:
    group: str = "gl2"
    suites: Tuple[str, ...] = ("coeffs", "rootdata", "hecke", "satake", "integrality")
    lam: Optional[Tuple[int, ...]] = None
    q: int = 2
    depth: int = 8
    output: str = "text"
    parallel: bool = False
    box: int = 2
    seed: int = 0
    emit_cert: Optional[str] = None

    def validate(self) -> RootDatum:
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        if self.q < 2:
            raise ConfigError(f"--q must be at least 2, got {self.q}")
        if self.depth < 2:
            raise ConfigError(f"--depth must be at least 2, got {self.depth}")
        if self.box < 0:
            raise ConfigError(f"--box must be nonnegative, got {self.box}")
        if self.output not in ("text", "json"):
            raise ConfigError(f"--output must be text or json, got {self.output!r}")
        d = resolve_group(self.group)
        if self.lam is not None:
            check_lambda(d, self.lam)
        return d


@dataclass
class Report:
    config: RunConfig
    results: List[CheckResult] = field(default_factory=list)
    certificates: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        cfg = self.config
        return {
            "config": {
                "group": cfg.group, "suites": list(cfg.suites),
                "lambda": list(cfg.lam) if cfg.lam is not None else None,
                "q": cfg.q, "depth": cfg.depth, "box": cfg.box, "seed": cfg.seed,
            },
            "passed": self.passed,
            "results": [r.to_json() for r in self.results],
            "certificates": [c.to_json() for c in self.certificates],
        }

    def text(self) -> str:
        lines = [r.line() for r in self.results]
        for cert in self.certificates:
            lines.append("")
            lines.append(str(cert))
        failed = sum(not r.passed for r in self.results)
        lines.append("")
        lines.append(f"{len(self.results) - failed} passed, {failed} failed")
        return "\n".join(lines)


# -- root data ----------------------------------------------------------------


def load_root_datum(path) -> RootDatum:
    """Read {name, rank, simple_roots, positive_roots, positive_coroots} from JSON."""
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: expected a JSON object")
    missing = [k for k in ("rank", "simple_roots", "positive_roots", "positive_coroots") if k not in raw]
    if missing:
        raise ParseError(f"{path}: missing field(s) {', '.join(missing)}")

    def vectors(key):
        val = raw[key]
        if not isinstance(val, list) or not all(
            isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v)
            for v in val
        ):
            raise ParseError(f"{path}: {key} must be a list of integer vectors")
        return tuple(tuple(v) for v in val)

    rank = raw["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise ParseError(f"{path}: rank must be an integer")
    name = raw.get("name", Path(path).stem)
    if not isinstance(name, str):
        raise ParseError(f"{path}: name must be a string")
    d = RootDatum(name, rank, vectors("simple_roots"), vectors("positive_roots"),
                  vectors("positive_coroots"))
    d.weyl  # finite-type check happens here
    return d


def resolve_group(group: str) -> RootDatum:
    if group in PRESETS:
        return preset(group)
    if os.path.exists(group):
        try:
            return load_root_datum(group)
        except (ParseError, InvalidDatum) as exc:
            raise ConfigError(f"custom datum {group}: {exc}") from exc
    raise ConfigError(f"unknown group {group!r}: use one of {', '.join(PRESETS)} or a JSON file path")


def parse_coweight(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise ConfigError(f"bad coweight {text!r}; expected comma-separated integers like 1,0") from None


def check_lambda(d: RootDatum, lam: Sequence[int]) -> None:
    lam = tuple(lam)
    if len(lam) != d.n:
        raise ConfigError(f"lambda {lam} has {len(lam)} entries but {d.name} has rank {d.n}")
    if not d.is_antidominant(lam):
        rep = next(mu for mu in d.weyl.orbit(lam) if d.is_antidominant(mu))
        raise ConfigError(
            f"NotAntidominant: {','.join(map(str, lam))} is outside the cone <lambda, alpha> >= 0 "
            f"for positive alpha; U-operators are indexed by the cone, e.g. use "
            f"--lambda {','.join(map(str, rep))} (its Weyl conjugate in the cone)"
        )


def default_lambdas(d: RootDatum) -> List[Tuple[int, ...]]:
    return [lam for lam in checks.cone_box(d, 1) if any(lam)]


# -- running suites -----------------------------------------------------------


def _run_case(case):
    """One independent unit of work; top level so it can run in a worker process."""
    suite, group, arg, cfg = case
    if suite == "coeffs":
        return checks.coeffs_suite(cfg.seed), []
    if suite == "tree":
        return checks.tree_suite(cfg.q, cfg.depth), []
    d = resolve_group(group)
    if suite == "rootdata":
        return checks.rootdata_suite(d, cfg.box, cfg.seed), []
    if suite == "hecke":
        return checks.hecke_suite(d, cfg.box, cfg.seed), []
    if suite == "satake":
        return checks.satake_suite(d, cfg.box), []
    if suite == "integrality":
        certs: list = []
        return checks.integrality_suite(d, arg, certs), certs
    raise ConfigError(f"unknown suite {suite}")


def run(cfg: RunConfig) -> Tuple[int, Report]:
    d = cfg.validate()
    cases = []
    for suite in cfg.suites:
        if suite == "integrality":
            for lam in [cfg.lam] if cfg.lam is not None else default_lambdas(d):
                cases.append((suite, cfg.group, lam, cfg))
        else:
            cases.append((suite, cfg.group, None, cfg))
    report = Report(cfg)
    if cfg.parallel and len(cases) > 1:
        with ProcessPoolExecutor() as pool:
            outcomes = list(pool.map(_run_case, cases))
    else:
        outcomes = [_run_case(c) for c in cases]
    for results, certs in outcomes:
        report.results.extend(results)
        report.certificates.extend(certs)
    if cfg.emit_cert:
        docs = [c.to_json() for c in report.certificates]
        Path(cfg.emit_cert).write_text(json.dumps(docs[0] if len(docs) == 1 else docs, indent=2) + "\n")
    return (0 if report.passed else 1), report


# -- argument parsing ---------------------------------------------------------


def _common(p: argparse.ArgumentParser, group: bool = True) -> None:
    if group:
        p.add_argument("--group", default="gl2", help="preset name or path to a root-datum JSON file")
    p.add_argument("--suites", help=f"comma-separated subset of {','.join(SUITES)}")
    p.add_argument("--lambda", dest="lam", help="cone coweight, e.g. 1,0")
    p.add_argument("--q", type=int, default=2, help="residue field size for the tree suite")
    p.add_argument("--depth", type=int, default=8, help="tree truncation depth")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--parallel", action="store_true", help="run independent cases in worker processes")
    p.add_argument("--emit-cert", metavar="PATH", help="write integrality certificates as JSON")
    p.add_argument("--box", type=int, default=2, help="coordinate box radius for property suites")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uoplab", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("verify", help="run verification suites"))
    _common(sub.add_parser("integrality", help="build and check an integrality certificate"))
    _common(sub.add_parser("tree", help="run the tree suite"), group=False)
    dump = sub.add_parser("datum", help="print a root datum as JSON")
    dump.add_argument("--group", default="gl2")
    return parser


_DEFAULT_SUITES = {
    "verify": ("coeffs", "rootdata", "hecke", "satake", "integrality"),
    "integrality": ("integrality",),
    "tree": ("tree",),
}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    suites = (
        tuple(s.strip() for s in args.suites.split(",") if s.strip())
        if args.suites
        else _DEFAULT_SUITES[args.command]
    )
    if args.lam is not None and "integrality" not in suites and args.command == "verify":
        suites = suites + ("integrality",)
    return RunConfig(
        group=getattr(args, "group", "gl2"),
        suites=suites,
        lam=parse_coweight(args.lam) if args.lam is not None else None,
        q=args.q,
        depth=args.depth,
        output=args.output,
        parallel=args.parallel,
        box=args.box,
        seed=args.seed,
        emit_cert=args.emit_cert,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "datum":
            print(json.dumps(resolve_group(args.group).to_json(), indent=2))
            return 0
        code, report = run(config_from_args(args))
    except ConfigError as exc:
        print(f"uoplab: error: {exc}", file=sys.stderr)
        return 2
    except UoplabError as exc:
        print(f"uoplab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if report.config.output == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.text())
    return code


if __name__ == "__main__":
    sys.exit(main())
