"""Exact acceptance probabilities.

Two sources of randomness are covered: probabilistic machines reading fixed
advice, and deterministic machines whose advice is drawn from a finite
distribution. Everything is computed with :class:`fractions.Fraction`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import Machine, MachineError
from .engine import (_BRANCH, _CYCLE, _HALT, Configuration, Verdict, advance, compile_machine,
                     fraction, prepare_tapes, run, step_bound)


@dataclass(frozen=True)
class RandomizedAdvice:
    """A finite distribution over advice strings (one tuple of tapes per alternative)."""

    alternatives: tuple[tuple[tuple[str, ...], Fraction], ...]

    def __post_init__(self):
        alts = []
        for advice, p in self.alternatives:
            advice = (advice,) if isinstance(advice, str) else tuple(advice)
            p = Fraction(p)
            if p <= 0:
                raise ValueError(f"advice probability must be positive, got {p}")
            alts.append((advice, p))
        if sum(p for _, p in alts) != 1:
            raise ValueError("advice probabilities must sum to 1")
        object.__setattr__(self, "alternatives", tuple(alts))

    @classmethod
    def uniform(cls, items: Sequence) -> "RandomizedAdvice":
        p = Fraction(1, len(items))
        return cls(tuple((a, p) for a in items))

    def __iter__(self):
        return iter(self.alternatives)

    def __len__(self):
        return len(self.alternatives)


@dataclass(frozen=True)
class AcceptanceResult:
    accept: Fraction
    reject: Fraction
    unresolved: Fraction = Fraction(0)

    def __post_init__(self):
        if self.accept + self.reject + self.unresolved != 1:
            raise ValueError(f"probabilities do not sum to 1: {self}")

    def format(self) -> str:
        rows = [("accept", self.accept), ("reject", self.reject), ("unresolved", self.unresolved)]
        return "\n".join(f"{name} = {fraction(p)} ({float(p):.6g})" for name, p in rows)


class MassNotConserved(MachineError):
    pass


def acceptance_probability_pfat(m: Machine, input: str, advice=("",),
                                observer: Callable[[Fraction, Fraction, Fraction, Fraction], None] | None = None,
                                ) -> AcceptanceResult:
    """Propagate the exact distribution over configurations of ``m``.

    Mass is grouped by elapsed step count and configuration, so equal
    configurations reached at the same time merge exactly as in step-by-step
    propagation. Deterministic stretches between probabilistic keys are run in
    one go. Mass still running after the step bound is reported as unresolved.
    ``observer`` receives ``(accept, reject, unresolved, in_flight)`` after
    every update; the four always sum to 1.
    """
    tin, advs = prepare_tapes(m, input, advice)
    cm = compile_machine(m)
    bound = step_bound(m, len(input), [len(a) - 1 for a in advs])

    accept = reject = unresolved = Fraction(0)
    in_flight = Fraction(1)
    frontier: dict[int, dict[Configuration, Fraction]] = {
        0: {Configuration(m.start, 0, (0,) * m.tapes): Fraction(1)}}
    times = [0]

    def push(t, conf, mass):
        bucket = frontier.get(t)
        if bucket is None:
            bucket = frontier[t] = {}
            heapq.heappush(times, t)
        bucket[conf] = bucket.get(conf, 0) + mass

    while times:
        t = heapq.heappop(times)
        for conf, mass in frontier.pop(t).items():
            status, conf, steps, _ = advance(cm, tin, advs, conf, t, bound)
            in_flight -= mass
            if status == _HALT:
                if conf.state == m.accept:
                    accept += mass
                else:
                    reject += mass
            elif status == _BRANCH and steps < bound:
                key = (conf.state, tin[conf.input_pos], advs[0][conf.advice_pos[0]]) if cm.k == 1 \
                    else (conf.state, tin[conf.input_pos],
                          tuple(a[p] for a, p in zip(advs, conf.advice_pos)))
                for w, nq, di, da in cm.table[key].choices:
                    npos = tuple(p + d for p, d in zip(conf.advice_pos, da))
                    push(steps + 1, Configuration(nq, conf.input_pos + di, npos), mass * w)
                    in_flight += mass * w
            else:
                # cycle, or the step bound reached
                unresolved += mass
            if accept + reject + unresolved + in_flight != 1:
                raise MassNotConserved(f"mass drifted to {accept + reject + unresolved + in_flight}")
            if observer is not None:
                observer(accept, reject, unresolved, in_flight)
    return AcceptanceResult(accept, reject, unresolved)


def acceptance_probability_randomized_advice(m: Machine, input: str, ra) -> AcceptanceResult:
    """Average the verdict of deterministic ``m`` over the advice distribution ``ra``.

    ``ra`` is a :class:`RandomizedAdvice`, or an advice function whose
    ``distribution(n)`` gives one.
    """
    if hasattr(ra, "distribution"):
        ra = ra.distribution(len(input))
    accept = reject = unresolved = Fraction(0)
    for advice, p in ra:
        try:
            out = run(m, input, advice)
        except MachineError as exc:
            raise MachineError(f"with advice {advice!r}: {exc}") from exc
        if out.verdict is Verdict.ACCEPT:
            accept += p
        elif out.verdict is Verdict.REJECT:
            reject += p
        else:
            unresolved += p
    return AcceptanceResult(accept, reject, unresolved)


STOCHASTIC_CONSTRUCTIONS = ("equal3-rand", "equal3-pfat")


@dataclass
class ErrorBoundReport:
    construction: str
    s: int
    n_max: int
    bound: Fraction
    inputs: int = 0
    members: int = 0
    max_nonmember: Fraction = Fraction(0)
    worst: str | None = None
    violations: list[tuple[str, Fraction, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def format(self) -> str:
        lines = [
            f"{self.construction} s={self.s} n<={self.n_max}: {self.inputs} inputs "
            f"({self.members} members)",
            f"max non-member acceptance = {fraction(self.max_nonmember)} "
            f"({float(self.max_nonmember):.6g}) on {self.worst!r}; "
            f"bound 2/s = {fraction(self.bound)}",
            f"{len(self.violations)} violations",
        ]
        for word, p, why in self.violations[:10]:
            lines.append(f"  {word!r}: {fraction(p)} ({why})")
        return "\n".join(lines)


def acceptance(construction, input: str, observer=None) -> AcceptanceResult:
    """Acceptance probability of a built stochastic construction on ``input``.

    ``observer`` is passed on to :func:`acceptance_probability_pfat` for
    probabilistic machines.
    """
    if construction.advice.randomized:
        return acceptance_probability_randomized_advice(construction.machine, input,
                                                        construction.advice)
    return acceptance_probability_pfat(construction.machine, input,
                                       construction.advice.tapes(len(input)), observer)


def check_error_bound(construction: str, s: int, n_max: int,
                      inputs: Iterable[str] | None = None, results: dict | None = None,
                      observer=None) -> ErrorBoundReport:
    """Check one-sided error: members accepted surely, non-members with probability <= 2/s.

    If ``results`` is given, each input's :class:`AcceptanceResult` is stored in it.
    """
    from .catalog import build

    if construction not in STOCHASTIC_CONSTRUCTIONS:
        raise ValueError(f"unknown stochastic construction {construction!r}")
    if s < 2:
        raise ValueError("s must be at least 2")
    c = build(construction, s=s)
    report = ErrorBoundReport(construction, s, n_max, Fraction(2, s))
    if inputs is None:
        from .enumeration import words_upto
        inputs = words_upto(c.oracle.alphabet, n_max)
    for w in inputs:
        res = acceptance(c, w, observer)
        if results is not None:
            results[w] = res
        report.inputs += 1
        if res.unresolved:
            report.violations.append((w, res.unresolved, "unresolved mass"))
        if c.oracle(w):
            report.members += 1
            if res.accept != 1:
                report.violations.append((w, res.accept, "member not accepted surely"))
        else:
            if report.worst is None or res.accept > report.max_nonmember:
                report.max_nonmember = res.accept
                report.worst = w
            if res.accept > report.bound:
                report.violations.append((w, res.accept, "non-member above 2/s"))
    return report


def compare_constructions(s: int, n_max: int) -> list[tuple[str, Fraction, Fraction]]:
    """Inputs on which the randomized-advice and probabilistic machines disagree."""
    from .catalog import build
    from .enumeration import words_upto

    rand = build("equal3-rand", s=s)
    pfat = build("equal3-pfat", s=s)
    out = []
    for w in words_upto(rand.oracle.alphabet, n_max):
        a = acceptance(rand, w).accept
        b = acceptance(pfat, w).accept
        if a != b:
            out.append((w, a, b))
    return out
