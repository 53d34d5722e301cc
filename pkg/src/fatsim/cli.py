"""The ``fat`` command.

Exit codes: 0 success, 1 rejected input or failed check, 2 usage error,
invalid machine (including ``fat validate`` finding violations) or refused
(infeasible) workload.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from . import analysis
from .advice import make_advice
from .catalog import CONSTRUCTION_IDS, ORACLE_IDS, build, finite_language, oracle
from .core import MachineError, validate_machine
from .engine import Verdict, fraction, run, run_language_sweep
from .enumeration import InfeasibleError, words_upto
from .fatfile import FatParseError, load_fat, save_fat
from .stochastic import (
    STOCHASTIC_CONSTRUCTIONS,
    acceptance,
    acceptance_probability_pfat,
    check_error_bound,
    compare_constructions,
)

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _value(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _params(args) -> dict:
    out = {}
    for item in getattr(args, "param", None) or []:
        key, eq, val = item.partition("=")
        if not eq or not key:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        out[key] = _value(val)
    for key in ("s", "k", "f"):
        val = getattr(args, key, None)
        if val is not None:
            out[key] = _value(str(val))
    if getattr(args, "language", None) and args.construction in ("universal2", "expall"):
        out["language"] = args.language
    if getattr(args, "words", None) is not None and args.construction in ("universal2", "expall"):
        out["language"] = frozenset(w for w in args.words.split(",") if w)
    return out


def _construction(args):
    if args.construction is None:
        raise UsageError("--construction is required")
    return build(args.construction, **_params(args))


def _machine_from_file(path):
    m = load_fat(path)
    report = validate_machine(m)
    if not report.ok:
        lines = [f"invalid machine {m.name}:"] + [f"  {v}" for v in report.violations]
        raise UsageError("\n".join(lines))
    return m


def _add_construction(p, required=False):
    p.add_argument("--construction", "-c", required=required,
                   help="one of: " + ", ".join(CONSTRUCTION_IDS))
    p.add_argument("--param", "-p", action="append", metavar="KEY=VALUE",
                   help="construction parameter (repeatable)")
    p.add_argument("--s", type=int, help="number of alternatives for equal3-*")
    p.add_argument("--k", type=int, help="level for l_k")
    p.add_argument("--f", help="growth function for l_f (sqrt or log)")
    p.add_argument("--language", help="oracle id for universal2/expall")
    p.add_argument("--words", help="comma-separated finite language for universal2/expall")


# commands ------------------------------------------------------------------

def cmd_run(args) -> int:
    if args.machine:
        m = _machine_from_file(args.machine)
        advice = tuple(args.advice or [""] * m.tapes)
    else:
        c = _construction(args)
        m = c.machine
        if c.advice.randomized or m.probabilistic:
            raise UsageError(f"{c.id} is probabilistic; use 'fat prob'")
        advice = c.advice.tapes(len(args.input))
    if m.probabilistic:
        raise UsageError(f"{m.name} is probabilistic; use 'fat prob'")
    if args.write:
        save_fat(m, args.write)
    out = run(m, args.input, advice, trace=args.trace)
    if args.trace:
        for step in out.trace:
            print(step.format())
    print(out.format())
    return OK if out.verdict is Verdict.ACCEPT else FAIL


def _random_languages(count: int, seed: int, alphabet: str, n_max: int):
    rng = random.Random(seed)
    pool = list(words_upto(alphabet, n_max))
    return [frozenset(w for w in pool if rng.random() < 0.5) for _ in range(count)]


def cmd_verify(args) -> int:
    name = args.construction
    if name in STOCHASTIC_CONSTRUCTIONS:
        s = args.s or _params(args).get("s", 4)
        report = check_error_bound(name, s, args.max_n)
        print(report.format())
        return OK if report.ok else FAIL
    if name == "universal2" and args.random_languages:
        total_runs = total_bad = 0
        langs = _random_languages(args.random_languages, args.seed, "ab", args.max_n)
        for i, lang in enumerate(langs):
            c = build("universal2", language=finite_language(lang, "ab", f"random{i}"))
            r = run_language_sweep(c.machine, c.advice, c.oracle, args.max_n, args.jobs, args.min_n)
            total_runs += r.runs
            total_bad += r.mismatches
            if r.first is not None:
                print(f"language random{i}: {r.format()}")
        print(f"{len(langs)} languages, {total_runs} runs, {total_bad} mismatches")
        return OK if total_bad == 0 else FAIL
    c = _construction(args)
    r = run_language_sweep(c.machine, c.advice, c.oracle, args.max_n, args.jobs, args.min_n)
    print(r.format())
    return OK if r.mismatches == 0 else FAIL


def cmd_prob(args) -> int:
    if args.machine:
        m = _machine_from_file(args.machine)
        res = acceptance_probability_pfat(m, args.input, tuple(args.advice or [""] * m.tapes))
    else:
        res = acceptance(_construction(args), args.input)
    print(res.format())
    if args.compare:
        s = args.s or _params(args).get("s", 4)
        diffs = compare_constructions(s, args.compare)
        print(f"{len(diffs)} inputs where randomized advice and pfat disagree")
        for w, a, b in diffs[:10]:
            print(f"  {w!r}: {fraction(a)} vs {fraction(b)}")
        return OK if not diffs else FAIL
    return OK


def cmd_classes(args) -> int:
    if args.family:
        report = analysis.check_witness_family(args.family, args.n, args.k)
        print(report.format())
        if args.witnesses:
            for (x, y), z in sorted(report.distinguishers.items()):
                print(f"  {x!r} / {y!r}: suffix {z!r}")
        return OK if report.ok else FAIL
    if args.language is None or args.k is None:
        raise UsageError("classes needs --language and --k (or --family)")
    params = {"k": args.level} if args.level is not None else {}
    orc = oracle(args.language, **params)
    report = analysis.count_equivalence_classes(orc, args.n, args.k)
    print(report.format(witnesses=args.witnesses))
    return OK


def cmd_advice(args) -> int:
    params = _params(args)
    if args.construction in ("universal2", "expall"):
        h = build(args.construction, **params).advice
    else:
        name = args.construction
        if name.startswith("l_") and name[2:].isdigit():
            params.setdefault("k", int(name[2:]))
            name = "l_k"
        h = make_advice(name, **params)
    if h.randomized:
        for tapes, p in h.distribution(args.n):
            print(f"{fraction(p)} ({float(p):.6g}) {' '.join(tapes)}")
        return OK
    tapes = h.tapes(args.n)
    if len(tapes) == 1:
        print(tapes[0])
    else:
        for j, t in enumerate(tapes):
            print(f"advice[{j}]: {t}")
    return OK


def cmd_growth(args) -> int:
    table = analysis.measure_advice_growth(args.construction, args.n_max, args.n_min,
                                           **_params(args))
    print(table.format())
    return OK


def cmd_validate(args) -> int:
    machines = []
    if args.machine:
        machines.append(load_fat(args.machine))
    if args.construction:
        machines.append(_construction(args).machine)
    if args.all:
        for name in CONSTRUCTION_IDS:
            machines.append(build(name).machine)
        machines += [build("l_k", k=k).machine for k in (2, 3)]
    if not machines:
        raise UsageError("validate needs --machine, --construction or --all")
    status = OK
    for m in machines:
        report = validate_machine(m)
        if report.ok:
            print(f"OK {m.name} ({len(m.states)} states, {len(m.transitions)} transitions)")
        else:
            status = USAGE
            print(f"INVALID {m.name}: {len(report)} violations")
            for v in report.violations:
                print(f"  {v}")
    if args.write:
        if len(machines) != 1:
            raise UsageError("--write needs exactly one machine")
        save_fat(machines[0], args.write)
    return status


# parser --------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fat", description="Finite automata with advice tapes.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a deterministic machine on one input")
    _add_construction(r)
    r.add_argument("--machine", "-m", help=".fat file to run instead of a construction")
    r.add_argument("--advice", "-a", action="append", help="advice string (one per tape)")
    r.add_argument("--input", "-i", required=True)
    r.add_argument("--trace", action="store_true")
    r.add_argument("--write", metavar="FILE", help="also save the machine as .fat")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="compare a construction with its oracle")
    _add_construction(v, required=True)
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--min-n", type=int, default=0)
    v.add_argument("--jobs", "-j", type=int, default=1)
    v.add_argument("--random-languages", type=int, default=0,
                   help="universal2: check this many random languages")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("prob", help="exact acceptance probability")
    _add_construction(pr)
    pr.add_argument("--machine", "-m")
    pr.add_argument("--advice", "-a", action="append")
    pr.add_argument("--input", "-i", required=True)
    pr.add_argument("--compare", type=int, metavar="N_MAX",
                    help="also compare both equal3 constructions up to this length")
    pr.set_defaults(func=cmd_prob)

    c = sub.add_parser("classes", help="count prefix equivalence classes")
    c.add_argument("--language", "-l", help="one of: " + ", ".join(ORACLE_IDS))
    c.add_argument("--level", type=int, help="k parameter of l_k")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, help="prefix length (family parameter with --family)")
    c.add_argument("--family", choices=analysis.WITNESS_FAMILIES)
    c.add_argument("--witnesses", action="store_true")
    c.set_defaults(func=cmd_classes)

    a = sub.add_parser("advice", help="print the advice for one length")
    _add_construction(a, required=True)
    a.add_argument("--n", type=int, required=True)
    a.set_defaults(func=cmd_advice)

    g = sub.add_parser("growth", help="advice length table")
    _add_construction(g, required=True)
    g.add_argument("--n-max", type=int, required=True)
    g.add_argument("--n-min", type=int, default=1)
    g.set_defaults(func=cmd_growth)

    val = sub.add_parser("validate", help="check machine well-formedness")
    _add_construction(val)
    val.add_argument("--machine", "-m")
    val.add_argument("--all", action="store_true", help="every catalog machine")
    val.add_argument("--write", metavar="FILE")
    val.set_defaults(func=cmd_validate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"fat: {exc}", file=sys.stderr)
        return USAGE
    except (UsageError, FatParseError, MachineError, ValueError, OSError) as exc:
        print(f"fat: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
