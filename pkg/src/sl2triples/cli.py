"""Command line interface.

Exit codes: 0 expected outcome, 2 invalid configuration, 3 domain
precondition failed, 4 verdict contradicts the theorem, 5 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable

from .algebra import check_power_relations, dimension_of_A, expected_dimension, verify_basis_S
from .errors import BudgetExceeded, InvalidLabel, OddRankForSp, OutsideMaxVariety, RankTooSmall, Sl2Error
from .gfp import check_prime, jordan_type
from .partitions import GroupKind, OrbitLabel, Partition, VarietyKind, enumerate_orbits, hasse_dot, in_variety
from .triples import construct_triple, slp_counterexample, standard_group, triple_self_checks
from .verify import DEFAULT_BUDGET, Verdict, verify_maximality, verify_sl2_property

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_CONTRADICTION = 4
EXIT_BUDGET = 5


class ConfigError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    group: GroupKind | None
    n: int | None
    p: int
    variety: VarietyKind | None
    budget: int
    seed: int
    threads: int
    fmt: str
    output: str | None
    label: str | None = None
    spin: str | None = None
    progress: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "CliConfig":
        try:
            check_prime(ns.p)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        group = None
        if getattr(ns, "group", None) is not None:
            try:
                group = GroupKind.parse(ns.group)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        n = getattr(ns, "n", None)
        if n is not None and n < 1:
            raise ConfigError("--n must be positive")
        if group is GroupKind.Sp and n is not None and n % 2:
            raise ConfigError(f"Sp needs even n, got {n}")
        variety = None
        if getattr(ns, "variety", None):
            try:
                variety = VarietyKind.parse(ns.variety)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if ns.budget <= 0:
            raise ConfigError("--budget must be positive")
        if ns.threads < 1:
            raise ConfigError("--threads must be at least 1")
        return cls(
            command=ns.command,
            group=group,
            n=n,
            p=ns.p,
            variety=variety,
            budget=ns.budget,
            seed=ns.seed,
            threads=ns.threads,
            fmt=ns.format,
            output=ns.output,
            label=getattr(ns, "label", None),
            spin=getattr(ns, "spin", None),
            progress=getattr(ns, "progress", False),
        )


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(cfg: CliConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _progress(cfg: CliConfig) -> Callable[[str], None] | None:
    if not cfg.progress:
        return None
    return lambda line: print(line, file=sys.stderr, flush=True)


# -- commands -----------------------------------------------------------------


def cmd_orbits(cfg: CliConfig) -> int:
    v = cfg.variety or VarietyKind.NilAll
    rows = []
    for lab in enumerate_orbits(cfg.group, cfg.n, cfg.p, v):
        rows.append(
            {
                "label": lab.to_json(),
                "name": str(lab),
                "NpMinus1": in_variety(lab.partition, VarietyKind.NpMinus1, cfg.p),
                "OneNp": in_variety(lab.partition, VarietyKind.OneNp, cfg.p),
                "Np": in_variety(lab.partition, VarietyKind.Np, cfg.p),
            }
        )
    if cfg.fmt == "text":
        lines = [
            f"{r['name']}\tNpMinus1={int(r['NpMinus1'])}\tOneNp={int(r['OneNp'])}\tNp={int(r['Np'])}" for r in rows
        ]
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        _emit(cfg, dumps({"group": cfg.group.value, "n": cfg.n, "p": cfg.p, "variety": v.value, "orbits": rows}))
    return EXIT_OK


def _parse_label(cfg: CliConfig) -> OrbitLabel:
    if not cfg.label:
        raise ConfigError("--label is required")
    try:
        lam = Partition.parse(cfg.label)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return OrbitLabel(lam, cfg.spin)


def cmd_construct(cfg: CliConfig) -> int:
    label = _parse_label(cfg)
    g = standard_group(cfg.group, cfg.n, cfg.p)
    t, grp = construct_triple(g, label)
    out = t.to_json(grp)
    out["checks"] = triple_self_checks(grp, t, label)
    out["jordan_e"] = jordan_type(t.e).to_json()
    out["jordan_f"] = jordan_type(t.f).to_json()
    _emit(cfg, dumps(out))
    return EXIT_OK


def _report_exit(verdict: Verdict, expected: Verdict) -> int:
    if verdict is Verdict.BudgetExceeded:
        return EXIT_BUDGET
    return EXIT_OK if verdict is expected else EXIT_CONTRADICTION


def cmd_verify(cfg: CliConfig) -> int:
    g = standard_group(cfg.group, cfg.n, cfg.p)
    rep = verify_sl2_property(g, cfg.variety, cfg.budget, cfg.seed, cfg.threads, _progress(cfg))
    _emit(cfg, dumps(rep.to_json()))
    return _report_exit(rep.verdict, Verdict.Holds)


def cmd_maximality(cfg: CliConfig) -> int:
    g = standard_group(cfg.group, cfg.n, cfg.p)
    rep = verify_maximality(g, cfg.budget, cfg.seed, cfg.threads, _progress(cfg))
    _emit(cfg, dumps(rep.to_json()))
    return _report_exit(rep.verdict, Verdict.FailsWithWitness)


def cmd_algebra_check(cfg: CliConfig) -> int:
    p = cfg.p
    dim = dimension_of_A(p)
    out = {
        "p": p,
        "dim": dim,
        "expected": expected_dimension(p),
        "basis_ok": verify_basis_S(p),
        "relations_ok": check_power_relations(p, p - 2),
    }
    _emit(cfg, dumps(out))
    ok = out["dim"] == out["expected"] and out["basis_ok"] and out["relations_ok"]
    return EXIT_OK if ok else EXIT_CONTRADICTION


def cmd_hasse(cfg: CliConfig) -> int:
    _emit(cfg, hasse_dot(cfg.group, cfg.n, cfg.p, cfg.variety or VarietyKind.NilAll))
    return EXIT_OK


def cmd_witness_slp(cfg: CliConfig) -> int:
    w = slp_counterexample(standard_group(cfg.group, cfg.n, cfg.p))
    _emit(cfg, dumps(w.to_json()))
    return EXIT_OK


COMMANDS: dict[str, tuple[Callable[[CliConfig], int], bool, str]] = {
    # name: (handler, needs group and n, help)
    "orbits": (cmd_orbits, True, "list nilpotent orbits with variety membership"),
    "construct": (cmd_construct, True, "build the canonical triple of an orbit"),
    "verify": (cmd_verify, True, "brute-force check of the sl2-property"),
    "maximality": (cmd_maximality, True, "witnesses just outside the maximal variety"),
    "algebra-check": (cmd_algebra_check, False, "dimension and basis of the quotient algebra"),
    "hasse": (cmd_hasse, True, "closure order as a DOT graph"),
    "witness-slp": (cmd_witness_slp, True, "two completions of one nilpotent with different modules"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sl2triples", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs_group, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        if needs_group:
            sp.add_argument("--group", required=True, help="GL, SL, Sp, O or SO")
            sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", type=int, required=True)
        if name in ("orbits", "verify", "hasse"):
            sp.add_argument("--variety", default=None, help="NilAll, NpMinus1, OneNp or Np")
        if name == "construct":
            sp.add_argument("--label", required=True, help="comma separated parts, e.g. 3,1")
            sp.add_argument("--spin", choices=["I", "II"], default=None)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=1)
        default_fmt = "dot" if name == "hasse" else "json"
        sp.add_argument("--format", choices=["json", "dot", "text"], default=default_fmt)
        sp.add_argument("--output", default=None)
        if name in ("verify", "maximality"):
            sp.add_argument("--progress", action="store_true", help="one line per orbit on stderr")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = CliConfig.from_args(ns)
        handler = COMMANDS[cfg.command][0]
        return handler(cfg)
    except (ConfigError, OddRankForSp) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OutsideMaxVariety, InvalidLabel, RankTooSmall) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except Sl2Error as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
