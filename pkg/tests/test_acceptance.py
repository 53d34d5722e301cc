"""Acceptance criteria, each run at its stated tolerance.

Every test prints one ``PASS``/``FAIL`` line naming the criterion, then
asserts. Sub-checks are collected first so a failing line says which part
broke.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction

import pytest

from fatsim import cli
from fatsim.advice import make_advice
from fatsim.analysis import (
    check_witness_family,
    count_equivalence_classes,
    fit_quadratic,
    lk_ratio_check,
)
from fatsim.catalog import CONSTRUCTION_IDS, build, oracle
from fatsim.core import HeadMode, specialize_with_advice, validate_machine
from fatsim.engine import Verdict, iter_trace, run, step_bound
from fatsim.enumeration import words
from fatsim.stochastic import check_error_bound

from support import broken_machines, naive_run, random_machine, random_word


def _verdict(name: str, results: dict[str, bool], detail: str = "") -> tuple[str, bool]:
    ok = all(results.values())
    failed = [k for k, v in results.items() if not v]
    tail = detail if ok else "failed: " + ", ".join(failed)
    return f"{'PASS' if ok else 'FAIL'} {name}: {tail}", ok


# 1. construction correctness ------------------------------------------------

VERIFY_SUITES = [
    ("equal2 n<=14", ["-c", "equal2", "--max-n", "14"]),
    ("equal n<=11", ["-c", "equal", "--max-n", "11"]),
    ("l_f sqrt n<=11", ["-c", "l_f", "--f", "sqrt", "--max-n", "11"]),
    ("l_1 n<=10", ["-c", "l_k", "--k", "1", "--max-n", "10"]),
    ("l_2 n<=9", ["-c", "l_k", "--k", "2", "--max-n", "9"]),
    ("l_3 n<=8", ["-c", "l_k", "--k", "3", "--max-n", "8"]),
    ("pal2w n<=14", ["-c", "pal2w", "--max-n", "14"]),
    ("expall[pal] n<=8", ["-c", "expall", "--language", "pal", "--max-n", "8"]),
    ("universal2 x20 n<=7", ["-c", "universal2", "--random-languages", "20",
                             "--seed", "2024", "--max-n", "7"]),
]


def test_construction_correctness(capsys, report_criterion):
    results, runs = {}, 0
    for label, argv in VERIFY_SUITES:
        code = cli.main(["verify", *argv])
        out = capsys.readouterr().out
        counts = re.findall(r"(\d+) runs, (\d+) mismatches", out)
        results[label] = code == 0 and bool(counts) and counts[-1][1] == "0"
        runs += int(counts[-1][0]) if counts else 0
    line, ok = _verdict("construction correctness", results,
                        f"{len(results)} sweeps, {runs} runs, 0 mismatches")
    report_criterion(line)
    assert ok, results


# 2. error bounds ------------------------------------------------------------

S_VALUES = (4, 8, 16)
STOCHASTIC_N_MAX = 9


@pytest.fixture(scope="module")
def stochastic_runs():
    """Acceptance of both constructions on every input, computed once per s.

    The observer re-checks mass conservation after every propagation event.
    """
    events = {"count": 0, "drift": 0}

    def observer(acc, rej, unres, flight):
        events["count"] += 1
        if acc + rej + unres + flight != 1:
            events["drift"] += 1

    out = {}
    for s in S_VALUES:
        rand_res, pfat_res = {}, {}
        rand_rep = check_error_bound("equal3-rand", s, STOCHASTIC_N_MAX, results=rand_res)
        pfat_rep = check_error_bound("equal3-pfat", s, STOCHASTIC_N_MAX, results=pfat_res,
                                     observer=observer)
        out[s] = (rand_rep, pfat_rep, rand_res, pfat_res)
    return out, events


def test_error_bounds(stochastic_runs, report_criterion):
    runs, _ = stochastic_runs
    results, worst = {}, {}
    equal3 = oracle("equal3")
    for s, (rand_rep, pfat_rep, rand_res, pfat_res) in runs.items():
        bound = Fraction(2, s)
        for name, res in (("rand", rand_res), ("pfat", pfat_res)):
            members_sure = all(r.accept == 1 for w, r in res.items() if equal3(w))
            nonmember_max = max(r.accept for w, r in res.items() if not equal3(w))
            results[f"{name} s={s} members"] = members_sure
            results[f"{name} s={s} non-members"] = nonmember_max <= bound
            worst[(name, s)] = nonmember_max
        results[f"reports s={s}"] = rand_rep.ok and pfat_rep.ok
        results[f"agreement s={s}"] = (rand_res.keys() == pfat_res.keys() and
                                       all(rand_res[w] == pfat_res[w] for w in rand_res))
    inputs = len(runs[S_VALUES[0]][2])
    detail = (f"{inputs} inputs per s, max non-member acceptance " +
              ", ".join(f"s={s}: {worst[('pfat', s)]}" for s in S_VALUES) +
              "; randomized advice and pfat agree exactly")
    line, ok = _verdict("error bounds", results, detail)
    report_criterion(line)
    assert ok, results


# 3. lower-bound machinery ---------------------------------------------------

def test_lower_bound_machinery(report_criterion):
    results = {}
    pal = oracle("pal")
    for n in (4, 8, 12):
        count = count_equivalence_classes(pal, n, n // 2, witnesses=False).count
        results[f"pal n={n}"] = count == 2 ** (n // 2)
    l2 = oracle("l_k", k=2)
    points = [(n, count_equivalence_classes(l2, n, n // 2 + 1, witnesses=False).count)
              for n in (8, 10, 12)]
    c, factor = fit_quadratic(points)
    results["l_2 quadratic fit"] = factor <= 2
    for k in (2, 3, 4):
        rep = check_witness_family("equal3-prefixes", 3 * k, k)
        results[f"equal3 k={k}"] = rep.size == math.comb(k + 2, 2) and rep.ok and \
            len(rep.distinguishers) == rep.pairs
    detail = (f"pal 4/16/64 classes; l_2 counts {[p[1] for p in points]} "
              f"fit c={c:.4f} within factor {factor:.3f}; equal3 witness sets 6/10/15")
    line, ok = _verdict("lower-bound machinery", results, detail)
    report_criterion(line)
    assert ok, results


# 4. advice-length laws ------------------------------------------------------

def test_advice_length_laws(report_criterion):
    results = {}
    equal2, equal, pal2w = make_advice("equal2"), make_advice("equal"), make_advice("pal2w")
    evens = range(0, 101, 2)
    results["equal2 n/2"] = all(equal2.length(n) == n // 2 for n in evens)
    results["equal 2n"] = all(equal.length(n) == 2 * n for n in range(0, 101))
    results["pal2w n^2/2+n/2+1"] = all(pal2w.length(n) == n * n // 2 + n // 2 + 1
                                       for n in range(0, 61, 2))
    ratios = {}
    for k in (1, 2, 3):
        worst, limit = lk_ratio_check(k, 20, 100)
        ratios[k] = worst
        results[f"l_{k} ratio"] = worst <= limit
    detail = ("exact lengths hold; worst |h_k(2n)|/|h_k(n)| on [20,100]: " +
              ", ".join(f"k={k}: {r:.3f} <= {1.25 * 2**k}" for k, r in ratios.items()))
    line, ok = _verdict("advice-length laws", results, detail)
    report_criterion(line)
    assert ok, results


# 5. model invariants --------------------------------------------------------

def _catalog_machines():
    machines = [build(name).machine for name in CONSTRUCTION_IDS]
    machines += [build("l_k", k=k).machine for k in (2, 3)]
    machines += [build(name, s=s).machine for name in ("equal3-rand", "equal3-pfat")
                 for s in (3, 8, 16)]
    return machines


def _trial(rng: random.Random) -> bool:
    m = random_machine(rng)
    x = random_word(rng, "ab", rng.randint(0, 6))
    advice = tuple(random_word(rng, "01", rng.randint(0, 4)) for _ in range(m.tapes))
    gen = iter_trace(m, x, advice)
    prev = None
    steps = 0
    while True:
        try:
            step = next(gen)
        except StopIteration as stop:
            outcome = stop.value
            break
        conf = step.config
        if prev is not None:
            if m.input_mode is not HeadMode.TWO_WAY and conf.input_pos < prev.input_pos:
                return False
            if any(a < b for a, b in zip(conf.advice_pos, prev.advice_pos)):
                return False
        prev = conf
        steps += 1
    if outcome.steps != steps or steps > step_bound(m, len(x), [len(a) for a in advice]):
        return False
    verdict, _, _ = naive_run(m, x, advice)
    if outcome.verdict is not Verdict.CYCLE and verdict != outcome.verdict.name:
        return False
    return run(m, x, advice).verdict is outcome.verdict


def test_model_invariants(stochastic_runs, report_criterion):
    results = {}
    machines = _catalog_machines()
    results["catalog machines valid"] = all(validate_machine(m).ok for m in machines)
    broken = broken_machines()
    for rule, m in broken.items():
        report = validate_machine(m)
        results[f"rejects: {rule}"] = report.rules() == [rule]
    rng = random.Random(20240601)
    results["1000 randomized trials"] = all(_trial(rng) for _ in range(1000))
    _, events = stochastic_runs
    results["mass conserved"] = events["count"] > 0 and events["drift"] == 0
    detail = (f"{len(machines)} catalog machines valid, {len(broken)} broken fixtures "
              f"rejected, 1000 trials within bounds, {events['count']} propagation "
              f"events conserve mass")
    line, ok = _verdict("model invariants", results, detail)
    report_criterion(line)
    assert ok, results


# 6. specialization ----------------------------------------------------------

def test_specialization_equivalence(report_criterion):
    results, runs = {}, 0
    for name in ("equal2", "pal2w"):
        c = build(name)
        for n in (4, 6, 8):
            advice = c.advice.tapes(n)
            hard = specialize_with_advice(c.machine, advice)
            empty = ("",) * hard.tapes
            agree = True
            for x in words(c.alphabet, n):
                runs += 1
                if run(hard, x, empty).verdict is not run(c.machine, x, advice).verdict:
                    agree = False
            results[f"{name} n={n}"] = agree
    line, ok = _verdict("specialization equivalence", results,
                        f"{runs} inputs, specialized and advised runs agree")
    report_criterion(line)
    assert ok, results
