"""Machines with one input tape and one or more advice tapes.

Symbols are single-character tokens. Two tokens are reserved: ``<`` marks the
left end of the input tape and ``>`` marks the right end of every tape. The
input tape is laid out as ``< x >`` and each advice tape as ``h >``; advice
heads never move left, so advice tapes need no left endmarker.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, NamedTuple, Sequence

LEND = "<"
REND = ">"
RESERVED = frozenset({LEND, REND})


class MachineError(Exception):
    """Base class for errors raised while building or running machines."""


class IncompleteMachineError(MachineError):
    def __init__(self, key):
        self.key = key
        super().__init__(f"incomplete machine: no transition for {format_key(key)}")


class HeadModeError(MachineError):
    pass


class HeadMode(enum.Enum):
    REAL_TIME = "real-time"
    ONE_WAY = "one-way"
    TWO_WAY = "two-way"


class Move(enum.IntEnum):
    LEFT = -1
    STAY = 0
    RIGHT = 1

    @property
    def letter(self) -> str:
        return "LSR"[self.value + 1]

    @classmethod
    def from_letter(cls, letter: str) -> "Move":
        try:
            return cls("LSR".index(letter) - 1)
        except ValueError:
            raise ValueError(f"unknown move {letter!r}") from None


L, S, R = Move.LEFT, Move.STAY, Move.RIGHT


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    role: str = "input"

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in {self.role} alphabet: {self.symbols}")
        for sym in self.symbols:
            if len(sym) != 1 or sym.isspace():
                raise ValueError(f"symbols must be single non-space characters, got {sym!r}")
            if sym in RESERVED:
                raise ValueError(f"{sym!r} is a reserved endmarker")

    def __contains__(self, sym) -> bool:
        return sym in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


class Choice(NamedTuple):
    """One weighted outcome of a transition."""

    weight: Fraction
    state: str
    input_move: Move
    advice_moves: tuple[Move, ...]


# (state, scanned input symbol, scanned advice symbols)
Key = tuple[str, str, tuple[str, ...]]


def format_key(key: Key) -> str:
    state, sym, adv = key
    return f"({state}, {sym}, {' '.join(adv)})"


@dataclass(frozen=True, eq=False)
class Machine:
    """A finite automaton with advice tapes.

    ``transitions`` maps ``(state, input symbol, advice symbols)`` to a tuple of
    :class:`Choice`. A deterministic machine has exactly one choice of weight 1
    per key; a probabilistic one has positive weights summing to 1.
    """

    name: str
    states: tuple[str, ...]
    start: str
    accept: str
    reject: str
    input_alphabet: Alphabet
    advice_alphabets: tuple[Alphabet, ...]
    input_mode: HeadMode
    advice_modes: tuple[HeadMode, ...]
    transitions: Mapping[Key, tuple[Choice, ...]] = field(repr=False)
    probabilistic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "advice_alphabets", tuple(self.advice_alphabets))
        object.__setattr__(self, "advice_modes", tuple(self.advice_modes))
        object.__setattr__(self, "transitions", MappingProxyType(dict(self.transitions)))

    def __reduce__(self):
        # MappingProxyType does not pickle; rebuild from a plain dict
        return (Machine, (self.name, self.states, self.start, self.accept, self.reject,
                          self.input_alphabet, self.advice_alphabets, self.input_mode,
                          self.advice_modes, dict(self.transitions), self.probabilistic))

    @property
    def tapes(self) -> int:
        return len(self.advice_alphabets)

    @property
    def deterministic(self) -> bool:
        return all(len(c) == 1 for c in self.transitions.values())

    def with_name(self, name: str) -> "Machine":
        return Machine(name, self.states, self.start, self.accept, self.reject,
                       self.input_alphabet, self.advice_alphabets, self.input_mode,
                       self.advice_modes, self.transitions, self.probabilistic)


class Violation(NamedTuple):
    key: Key | None
    rule: str

    def __str__(self):
        where = format_key(self.key) if self.key is not None else "machine"
        return f"{where}: {self.rule}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __len__(self) -> int:
        return len(self.violations)

    def rules(self) -> list[str]:
        return [v.rule for v in self.violations]


def move_violation(mode: HeadMode, sym: str, move: Move, advice: bool) -> str | None:
    """Return the rule broken by moving a head in ``mode`` that scans ``sym``."""
    if move is Move.LEFT and advice:
        return "two-way advice forbidden"
    if move is Move.LEFT and sym == LEND:
        return "left move from left endmarker"
    if move is Move.RIGHT and sym == REND:
        return "right move from right endmarker"
    if mode is HeadMode.ONE_WAY and move is Move.LEFT:
        return "one-way head moved left"
    if mode is HeadMode.REAL_TIME:
        if sym == REND and move is not Move.STAY:
            return "real-time head must stay on right endmarker"
        if sym != REND and move is not Move.RIGHT:
            return "real-time head must move right"
    return None


def validate_machine(m: Machine) -> ValidationReport:
    out: list[Violation] = []
    states = set(m.states)
    k = m.tapes

    if len(m.advice_modes) != k:
        out.append(Violation(None, "advice mode count differs from advice tape count"))
    if k < 1:
        out.append(Violation(None, "at least one advice tape required"))
    for mode in m.advice_modes:
        if mode is HeadMode.TWO_WAY:
            out.append(Violation(None, "two-way advice forbidden"))
    for s in (m.start, m.accept, m.reject):
        if s not in states:
            out.append(Violation(None, f"undeclared state {s}"))
    if m.accept == m.reject:
        out.append(Violation(None, "accept and reject states coincide"))

    in_syms = set(m.input_alphabet) | RESERVED
    adv_syms = [set(a) | {REND} for a in m.advice_alphabets]

    for key, choices in m.transitions.items():
        state, sym, adv = key
        if state not in states:
            out.append(Violation(key, f"undeclared state {state}"))
        if state in (m.accept, m.reject):
            out.append(Violation(key, "halting state has outgoing transition"))
        if sym not in in_syms:
            out.append(Violation(key, f"symbol {sym!r} not in input alphabet"))
        if len(adv) != k:
            out.append(Violation(key, "advice symbol count differs from tape count"))
            continue
        for j, a in enumerate(adv):
            if a == LEND:
                out.append(Violation(key, "left endmarker on advice tape"))
            elif a not in adv_syms[j]:
                out.append(Violation(key, f"symbol {a!r} not in advice alphabet {j}"))
        if not choices:
            out.append(Violation(key, "empty choice set"))
            continue

        if not m.probabilistic:
            if len(choices) != 1:
                out.append(Violation(key, "deterministic key has several choices"))
            elif choices[0].weight != 1:
                out.append(Violation(key, "deterministic choice weight must be 1"))
        else:
            if any(c.weight <= 0 for c in choices):
                out.append(Violation(key, "non-positive weight"))
            elif sum(c.weight for c in choices) != 1:
                out.append(Violation(key, "weights sum ≠ 1"))

        for c in choices:
            if c.state not in states:
                out.append(Violation(key, f"undeclared state {c.state}"))
            rule = move_violation(m.input_mode, sym, c.input_move, advice=False)
            if rule:
                out.append(Violation(key, rule))
            if len(c.advice_moves) != k:
                out.append(Violation(key, "advice move count differs from tape count"))
                continue
            for j, (a, mv) in enumerate(zip(adv, c.advice_moves)):
                mode = m.advice_modes[j] if j < len(m.advice_modes) else HeadMode.ONE_WAY
                rule = move_violation(mode, a, mv, advice=True)
                if rule:
                    out.append(Violation(key, rule))
    return ValidationReport(tuple(out))


def specialize_with_advice(m: Machine, advice: Sequence[str]) -> Machine:
    """Hard-wire concrete advice strings into the finite control of ``m``.

    The result reads no advice: its single advice tape has an empty alphabet and
    its head rests on the right endmarker. States are pairs of an original state
    and the advice head positions, written ``q@p`` (``q@p1,p2`` for two tapes).
    Only pairs reachable from the start are produced.
    """
    if isinstance(advice, str):
        advice = [advice]
    if not m.deterministic or any(c[0].weight != 1 for c in m.transitions.values()):
        raise MachineError("only deterministic machines can be specialized")
    if len(advice) != m.tapes:
        raise ValueError(f"expected {m.tapes} advice strings, got {len(advice)}")
    for j, (a, alpha) in enumerate(zip(advice, m.advice_alphabets)):
        bad = [ch for ch in a if ch not in alpha]
        if bad:
            raise ValueError(f"advice {j} uses symbols outside its alphabet: {sorted(set(bad))}")

    tapes = [a + REND for a in advice]
    scan_syms = (LEND, *m.input_alphabet, REND)

    def name(q, pos):
        if q in (m.accept, m.reject):
            return q
        return f"{q}@{','.join(map(str, pos))}"

    start = (m.start, (0,) * m.tapes)
    seen = {start}
    queue = deque([start])
    table = {}
    while queue:
        q, pos = queue.popleft()
        if q in (m.accept, m.reject):
            continue
        scanned = tuple(t[p] for t, p in zip(tapes, pos))
        for sym in scan_syms:
            choices = m.transitions.get((q, sym, scanned))
            if choices is None:
                continue
            c = choices[0]
            npos = tuple(p + mv for p, mv in zip(pos, c.advice_moves))
            if any(p < 0 or p >= len(t) for p, t in zip(npos, tapes)):
                raise HeadModeError(f"advice head leaves its tape from {format_key((q, sym, scanned))}")
            nxt = (c.state, npos)
            table[(name(q, pos), sym, (REND,))] = (Choice(Fraction(1), name(*nxt), c.input_move, (S,)),)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    states = [m.accept, m.reject]
    states += sorted({name(q, p) for q, p in seen} - {m.accept, m.reject})
    return Machine(
        name=f"{m.name}[hardwired]",
        states=tuple(states),
        start=name(*start),
        accept=m.accept,
        reject=m.reject,
        input_alphabet=m.input_alphabet,
        advice_alphabets=(Alphabet((), role="advice"),),
        input_mode=m.input_mode,
        advice_modes=(HeadMode.ONE_WAY,),
        transitions=table,
    )


def det(state: str, input_move: Move, *advice_moves: Move) -> tuple[Choice, ...]:
    """Shorthand for a deterministic choice tuple."""
    return (Choice(Fraction(1), state, Move(input_move), tuple(Move(a) for a in advice_moves)),)
