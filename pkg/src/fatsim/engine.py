"""Deterministic execution of advised machines.

The fast path collapses stretches in which the input head (and every other
advice head) stays put while a single advice head walks right over a run of
identical symbols: the sequence of states visited depends only on the state
and the scanned symbols, so it is computed once per machine and the head jumps
to the end of the run. Tracing always steps one square at a time.
"""

from __future__ import annotations

import enum
import weakref
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, NamedTuple, Sequence

from .core import (LEND, REND, HeadMode, HeadModeError, IncompleteMachineError, Machine,
                   MachineError, Move, move_violation)
from .enumeration import word_range


class Verdict(enum.Enum):
    ACCEPT = "ACCEPT"
    REJECT = "REJECT"
    CYCLE = "CYCLE"


class Configuration(NamedTuple):
    state: str
    input_pos: int
    advice_pos: tuple[int, ...]


class TraceStep(NamedTuple):
    step: int
    config: Configuration
    scanned: tuple[str, tuple[str, ...]]
    next_state: str
    input_move: Move
    advice_moves: tuple[Move, ...]

    def format(self) -> str:
        c = self.config
        sym, adv = self.scanned
        parts = [f"step={self.step}", f"state={c.state}", f"in[{c.input_pos}]={sym}"]
        parts += [f"adv{j}[{p}]={a}" for j, (p, a) in enumerate(zip(c.advice_pos, adv))]
        moves = " ".join(mv.letter for mv in (self.input_move, *self.advice_moves))
        return " ".join(parts) + f" -> {self.next_state} {moves}"


@dataclass(frozen=True)
class RunOutcome:
    verdict: Verdict
    steps: int
    trace: tuple[TraceStep, ...] | None = None
    repeated: Configuration | None = None

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPT

    def format(self) -> str:
        return f"VERDICT {self.verdict.value} steps={self.steps}"


def step_bound(m: Machine, n: int, advice_lengths: Sequence[int]) -> int:
    """Number of distinct configurations; no run takes more steps than this."""
    bound = len(m.states) * (n + 2)
    for length in advice_lengths:
        bound *= length + 1
    return bound


# compiled machines ---------------------------------------------------------

_HALT, _BRANCH, _CYCLE, _LIMIT = range(4)


class _Bad(NamedTuple):
    rule: str


class _Branch(NamedTuple):
    # (weight, next state, input delta, advice deltas) per choice
    choices: tuple


class _Compiled:
    def __init__(self, m: Machine):
        self.machine = m
        self.k = m.tapes
        self.halting = frozenset((m.accept, m.reject))
        self.accept = m.accept
        self.two_way = m.input_mode is HeadMode.TWO_WAY
        self.table = {}
        self.paths = {}
        for key, choices in m.transitions.items():
            state, sym, adv = key
            rule = None
            for c in choices:
                rule = rule or move_violation(m.input_mode, sym, c.input_move, advice=False)
                for mode, a, mv in zip(m.advice_modes, adv, c.advice_moves):
                    rule = rule or move_violation(mode, a, mv, advice=True)
            flat = (state, sym, adv[0]) if self.k == 1 else key
            if rule:
                self.table[flat] = _Bad(rule)
            elif len(choices) == 1:
                c = choices[0]
                da = int(c.advice_moves[0]) if self.k == 1 else tuple(map(int, c.advice_moves))
                self.table[flat] = (c.state, int(c.input_move), da)
            else:
                self.table[flat] = _Branch(tuple(
                    (c.weight, c.state, int(c.input_move), tuple(map(int, c.advice_moves)))
                    for c in choices))

    def path(self, q: str, x: str, y: str):
        """States visited while the advice head alone walks right over ``y``.

        Returns ``(states, cycle_start)``: ``states[t]`` is the state after t
        such steps; if the walk loops, ``states[cycle_start:]`` repeats forever.
        """
        cached = self.paths.get((q, x, y))
        if cached is not None:
            return cached
        seq = [q]
        index = {q: 0}
        cycle_start = None
        cur = q
        while cur not in self.halting:
            t = self.table.get((cur, x, y))
            if t is None or t.__class__ is not tuple or t[1] != 0 or t[2] != 1:
                break
            nxt = t[0]
            if nxt in index:
                cycle_start = index[nxt]
                break
            index[nxt] = len(seq)
            seq.append(nxt)
            cur = nxt
        result = (tuple(seq), cycle_start)
        self.paths[(q, x, y)] = result
        return result


_compiled_cache: "weakref.WeakKeyDictionary[Machine, _Compiled]" = weakref.WeakKeyDictionary()


def compile_machine(m: Machine) -> _Compiled:
    cm = _compiled_cache.get(m)
    if cm is None:
        cm = _compiled_cache[m] = _Compiled(m)
    return cm


@lru_cache(maxsize=256)
def _run_ends(tape: str) -> tuple[int, ...]:
    """``ends[p]`` is the first position after p holding a different symbol."""
    ends = [0] * len(tape)
    end = len(tape)
    for p in range(len(tape) - 1, -1, -1):
        if p + 1 < len(tape) and tape[p + 1] != tape[p]:
            end = p + 1
        ends[p] = end
    return tuple(ends)


def _advance_single(cm: _Compiled, tin: str, adv: str, q: str, ip: int, ap: int,
                    steps: int, limit: int, accelerate: bool = True):
    """Step a one-advice-tape machine until it halts, branches, cycles or hits ``limit``."""
    table = cm.table
    halting = cm.halting
    two_way = cm.two_way
    ends = _run_ends(adv) if accelerate else None
    visited = set()
    while True:
        if q in halting:
            return _HALT, q, ip, ap, steps, None
        if steps >= limit:
            return _LIMIT, q, ip, ap, steps, None
        x = tin[ip]
        y = adv[ap]
        t = table.get((q, x, y))
        if t is None:
            raise IncompleteMachineError((q, x, (y,)))
        if t.__class__ is not tuple:
            if t.__class__ is _Branch:
                return _BRANCH, q, ip, ap, steps, None
            raise HeadModeError(f"{t.rule} at ({q}, {x}, {y})")
        nq, di, da = t
        if da:
            if visited:
                visited.clear()
            if accelerate and not di:
                seq, mu = cm.path(q, x, y)
                run = ends[ap] - ap
                avail = len(seq) - 1 if mu is None else run
                n = min(run, avail, limit - steps)
                if n >= len(seq):
                    lam = len(seq) - mu
                    q = seq[mu + (n - mu) % lam]
                else:
                    q = seq[n]
                ap += n
                steps += n
                continue
        elif di and not two_way:
            if visited:
                visited.clear()
        else:
            conf = (q, ip, ap)
            if conf in visited:
                return _CYCLE, q, ip, ap, steps, Configuration(q, ip, (ap,))
            visited.add(conf)
        q = nq
        ip += di
        ap += da
        steps += 1


def _advance_multi(cm: _Compiled, tin: str, advs: Sequence[str], q: str, ip: int,
                   pos: tuple[int, ...], steps: int, limit: int):
    table = cm.table
    halting = cm.halting
    two_way = cm.two_way
    pos = list(pos)
    visited = set()
    while True:
        if q in halting:
            return _HALT, q, ip, tuple(pos), steps, None
        if steps >= limit:
            return _LIMIT, q, ip, tuple(pos), steps, None
        key = (q, tin[ip], tuple(a[p] for a, p in zip(advs, pos)))
        t = table.get(key)
        if t is None:
            raise IncompleteMachineError(key)
        if t.__class__ is not tuple:
            if t.__class__ is _Branch:
                return _BRANCH, q, ip, tuple(pos), steps, None
            raise HeadModeError(f"{t.rule} at {key}")
        nq, di, da = t
        if any(da) or (di and not two_way):
            if visited:
                visited.clear()
        else:
            conf = (q, ip, tuple(pos))
            if conf in visited:
                return _CYCLE, q, ip, tuple(pos), steps, Configuration(q, ip, tuple(pos))
            visited.add(conf)
        q = nq
        ip += di
        for j, d in enumerate(da):
            pos[j] += d
        steps += 1


def advance(cm: _Compiled, tin: str, advs: Sequence[str], config: Configuration,
            steps: int, limit: int, accelerate: bool = True):
    """Run from ``config`` until halting, a probabilistic key, a cycle or ``limit`` steps.

    ``tin`` and ``advs`` are full tape contents including endmarkers. Returns
    ``(status, configuration, steps, repeated)``.
    """
    q, ip, pos = config
    if cm.k == 1:
        status, q, ip, ap, steps, rep = _advance_single(
            cm, tin, advs[0], q, ip, pos[0], steps, limit, accelerate)
        return status, Configuration(q, ip, (ap,)), steps, rep
    status, q, ip, pos, steps, rep = _advance_multi(cm, tin, advs, q, ip, pos, steps, limit)
    return status, Configuration(q, ip, pos), steps, rep


def prepare_tapes(m: Machine, input: str, advice) -> tuple[str, tuple[str, ...]]:
    """Check symbols and lay out the tapes with their endmarkers."""
    if isinstance(advice, str):
        advice = (advice,)
    advice = tuple(advice)
    if len(advice) != m.tapes:
        raise ValueError(f"{m.name} reads {m.tapes} advice tape(s), got {len(advice)} string(s)")
    bad = set(input) - set(m.input_alphabet)
    if bad:
        raise ValueError(f"input uses symbols outside the input alphabet: {sorted(bad)}")
    for j, (a, alpha) in enumerate(zip(advice, m.advice_alphabets)):
        bad = set(a) - set(alpha)
        if bad:
            raise ValueError(f"advice {j} uses symbols outside its alphabet: {sorted(bad)}")
    return LEND + input + REND, tuple(a + REND for a in advice)


def iter_trace(m: Machine, input: str, advice) -> Iterator[TraceStep]:
    """Yield one :class:`TraceStep` per transition; the generator returns the outcome."""
    tin, advs = prepare_tapes(m, input, advice)
    limit = step_bound(m, len(input), [len(a) - 1 for a in advs])
    one_way_heads = m.input_mode is not HeadMode.TWO_WAY
    q, ip, pos = m.start, 0, [0] * m.tapes
    visited = set()
    steps = 0
    while q not in (m.accept, m.reject):
        scanned = tuple(a[p] for a, p in zip(advs, pos))
        key = (q, tin[ip], scanned)
        choices = m.transitions.get(key)
        if choices is None:
            raise IncompleteMachineError(key)
        if len(choices) != 1:
            raise MachineError(f"run needs a deterministic machine; {key} has {len(choices)} choices")
        c = choices[0]
        rule = move_violation(m.input_mode, tin[ip], c.input_move, advice=False)
        for mode, a, mv in zip(m.advice_modes, scanned, c.advice_moves):
            rule = rule or move_violation(mode, a, mv, advice=True)
        if rule:
            raise HeadModeError(f"{rule} at {key}")
        conf = Configuration(q, ip, tuple(pos))
        if any(c.advice_moves) or (c.input_move and one_way_heads):
            visited.clear()
        elif conf in visited:
            return RunOutcome(Verdict.CYCLE, steps, repeated=conf)
        else:
            visited.add(conf)
        if steps >= limit:
            raise MachineError(f"step bound {limit} exceeded without a repeated configuration")
        yield TraceStep(steps, conf, (tin[ip], scanned), c.state, c.input_move, c.advice_moves)
        q = c.state
        ip += c.input_move
        pos = [p + mv for p, mv in zip(pos, c.advice_moves)]
        steps += 1
    verdict = Verdict.ACCEPT if q == m.accept else Verdict.REJECT
    return RunOutcome(verdict, steps)


def run(m: Machine, input: str, advice=("",), trace: bool = False,
        accelerate: bool = True) -> RunOutcome:
    """Run deterministic machine ``m`` on ``input`` with concrete advice strings."""
    if trace:
        steps = []
        gen = iter_trace(m, input, advice)
        while True:
            try:
                steps.append(next(gen))
            except StopIteration as stop:
                out = stop.value
                return RunOutcome(out.verdict, out.steps, tuple(steps), out.repeated)
    tin, advs = prepare_tapes(m, input, advice)
    cm = compile_machine(m)
    limit = step_bound(m, len(input), [len(a) - 1 for a in advs])
    status, conf, steps, rep = advance(cm, tin, advs, Configuration(m.start, 0, (0,) * m.tapes),
                                       0, limit, accelerate)
    if status == _HALT:
        verdict = Verdict.ACCEPT if conf.state == m.accept else Verdict.REJECT
        return RunOutcome(verdict, steps)
    if status == _CYCLE:
        return RunOutcome(Verdict.CYCLE, steps, repeated=rep)
    if status == _BRANCH:
        raise MachineError(f"run needs a deterministic machine; branching key at state {conf.state}")
    raise MachineError(f"step bound {limit} exceeded without a repeated configuration")


# sweeps --------------------------------------------------------------------

class SweepError(MachineError):
    def __init__(self, word: str, cause: Exception):
        self.word = word
        self.cause = cause
        super().__init__(f"on input {word!r}: {cause}")


class Mismatch(NamedTuple):
    word: str
    expected: bool
    verdict: Verdict


@dataclass(frozen=True)
class SweepReport:
    runs: int
    mismatches: int
    first: Mismatch | None

    def format(self) -> str:
        line = f"{self.runs} runs, {self.mismatches} mismatches"
        if self.first is not None:
            w = self.first
            line += (f"; first counterexample {w.word!r}: oracle says "
                     f"{'member' if w.expected else 'non-member'}, machine {w.verdict.value}")
        return line


def _advice_at(h, n: int) -> tuple[str, ...]:
    if hasattr(h, "tapes"):
        return h.tapes(n)
    a = h(n)
    return (a,) if isinstance(a, str) else tuple(a)


def _sweep_chunk(args) -> tuple[int, int, Mismatch | None]:
    m, h, oracle, n, lo, hi = args
    alphabet = m.input_alphabet.symbols
    advice = _advice_at(h, n)
    runs = bad = 0
    first = None
    for w in word_range(alphabet, n, lo, hi):
        try:
            out = run(m, w, advice)
        except MachineError as exc:
            raise SweepError(w, exc) from exc
        expected = bool(oracle(w))
        runs += 1
        if out.accepted != expected:
            bad += 1
            if first is None:
                first = Mismatch(w, expected, out.verdict)
    return runs, bad, first


def run_language_sweep(m: Machine, h, oracle: Callable[[str], bool], n_max: int,
                       jobs: int = 1, n_min: int = 0) -> SweepReport:
    """Compare machine verdicts with ``oracle`` on every input of length <= ``n_max``.

    Inputs are visited by length, then lexicographically in the order of the
    machine's input alphabet; the first counterexample is the least one in that
    order no matter how the work is split across ``jobs`` processes.
    """
    size = len(m.input_alphabet)
    chunks = []
    for n in range(n_min, n_max + 1):
        total = size**n
        parts = max(1, min(jobs * 4, total // 2048)) if jobs > 1 else 1
        step = -(-total // parts)
        chunks += [(m, h, oracle, n, lo, min(lo + step, total)) for lo in range(0, total, step)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_chunk, chunks))
    else:
        results = [_sweep_chunk(c) for c in chunks]
    runs = sum(r[0] for r in results)
    bad = sum(r[1] for r in results)
    # chunks are already in canonical order
    first = next((r[2] for r in results if r[2] is not None), None)
    return SweepReport(runs, bad, first)


def fraction(p: Fraction) -> str:
    return f"{p.numerator}/{p.denominator}" if p.denominator != 1 else str(p.numerator)
