"""Incremental construction of transition tables."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable

from ..core import LEND, REND, Alphabet, Choice, HeadMode, Machine, MachineError, Move, S

ACCEPT = "acc"
REJECT = "rej"


def _syms(spec) -> tuple[str, ...]:
    if isinstance(spec, str):
        return tuple(spec)
    return tuple(spec)


class Table:
    """Collects transitions for one machine.

    Symbol arguments take a string (each character one symbol, so ``"ab>"``
    means a, b or the right endmarker) or an iterable of symbols. Transitions
    for keys left undefined are routed to the reject state by :meth:`build`.
    """

    def __init__(self, name: str, input_symbols: str, advice_symbols: Iterable[str],
                 input_mode: HeadMode, advice_modes: Iterable[HeadMode]):
        self.name = name
        self.input_alphabet = Alphabet(tuple(input_symbols), "input")
        self.advice_alphabets = tuple(Alphabet(tuple(a), "advice") for a in advice_symbols)
        self.input_mode = input_mode
        self.advice_modes = tuple(advice_modes)
        self.rows: dict = {}
        self.order: dict[str, None] = {}

    @property
    def k(self) -> int:
        return len(self.advice_alphabets)

    def state(self, *names: str) -> None:
        for n in names:
            self.order.setdefault(n, None)

    def _keys(self, state, ins, advs):
        if self.k == 1 and not isinstance(advs, tuple):
            advs = (advs,)
        if len(advs) != self.k:
            raise ValueError(f"{self.name}: expected {self.k} advice symbol sets")
        for x in _syms(ins):
            for adv in itertools.product(*(_syms(a) for a in advs)):
                yield (state, x, adv)

    def put(self, key, choices):
        if key in self.rows and self.rows[key] != choices:
            raise MachineError(f"{self.name}: conflicting transitions for {key}")
        self.rows[key] = choices
        self.state(key[0], *(c.state for c in choices))

    def go(self, state: str, ins, advs, nxt: str, in_move: Move, *adv_moves: Move) -> None:
        choice = (Choice(Fraction(1), nxt, Move(in_move), tuple(Move(m) for m in adv_moves)),)
        for key in self._keys(state, ins, advs):
            self.put(key, choice)

    def branch(self, state: str, ins, advs, choices) -> None:
        """``choices`` holds ``(weight, next state, input move, advice moves...)`` rows."""
        row = tuple(Choice(Fraction(w), nxt, Move(im), tuple(Move(m) for m in ams))
                    for w, nxt, im, *ams in choices)
        for key in self._keys(state, ins, advs):
            self.put(key, row)

    def halt_moves(self, sym: str, adv: tuple[str, ...]) -> tuple[Move, tuple[Move, ...]]:
        """Head moves legal under the declared modes for a step into a halting state."""
        def legal(mode, s):
            if mode is HeadMode.REAL_TIME and s != REND:
                return Move.RIGHT
            return S
        return legal(self.input_mode, sym), tuple(legal(m, a) for m, a in zip(self.advice_modes, adv))

    def halt(self, state: str, ins, advs, accept: bool = False) -> None:
        target = ACCEPT if accept else REJECT
        for key in self._keys(state, ins, advs):
            im, ams = self.halt_moves(key[1], key[2])
            self.put(key, (Choice(Fraction(1), target, im, ams),))

    def accept(self, state, ins, advs) -> None:
        self.halt(state, ins, advs, accept=True)

    def reject(self, state, ins, advs) -> None:
        self.halt(state, ins, advs, accept=False)

    def all_input(self) -> str:
        return "".join(self.input_alphabet) + LEND + REND

    def all_advice(self, j: int = 0) -> str:
        return "".join(self.advice_alphabets[j]) + REND

    def build(self, start: str, probabilistic: bool = False, complete: bool = True) -> Machine:
        self.state(start, ACCEPT, REJECT)
        rows = dict(self.rows)
        if complete:
            in_syms = self.all_input()
            adv_syms = [self.all_advice(j) for j in range(self.k)]
            for q in self.order:
                if q in (ACCEPT, REJECT):
                    continue
                for x in in_syms:
                    for adv in itertools.product(*adv_syms):
                        key = (q, x, adv)
                        if key not in rows:
                            im, ams = self.halt_moves(x, adv)
                            rows[key] = (Choice(Fraction(1), REJECT, im, ams),)
        return Machine(
            name=self.name,
            states=tuple(self.order),
            start=start,
            accept=ACCEPT,
            reject=REJECT,
            input_alphabet=self.input_alphabet,
            advice_alphabets=self.advice_alphabets,
            input_mode=self.input_mode,
            advice_modes=self.advice_modes,
            transitions=rows,
            probabilistic=probabilistic,
        )
