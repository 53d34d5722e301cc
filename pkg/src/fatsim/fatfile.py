"""Read and write machines in the line-oriented ``.fat`` text format.

Example::

    name: demo
    alphabet input: a b
    alphabet advice[0]: 1 #
    mode input: one-way
    mode advice[0]: one-way
    states: q0 q1 acc rej
    start: q0
    accept: acc
    reject: rej
    trans: q0 a 1 -> q1 R S
    trans: q1 a 1 -> 1/2 q1 R S | 1/2 acc S R

A ``#`` in the first column starts a comment. ``#`` is an ordinary advice
symbol elsewhere, except that anything after ``->`` starting with ``#`` is a
trailing comment. ``kind: pfat`` marks a probabilistic machine; without it
the kind is inferred from whether any key branches.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .core import Alphabet, Choice, HeadMode, Machine, MachineError, Move

_ADVICE_KEY = re.compile(r"^(alphabet|mode) advice\[(\d+)\]$")


class FatParseError(MachineError):
    def __init__(self, line: int, message: str, source: str = "<string>"):
        super().__init__(f"{source}:{line}: {message}")
        self.line = line
        self.source = source


def _mode(text: str, where) -> HeadMode:
    try:
        return HeadMode(text)
    except ValueError:
        where(f"unknown head mode {text!r}")


def _move(tok: str, where) -> Move:
    try:
        return Move.from_letter(tok)
    except (KeyError, ValueError):
        where(f"bad move {tok!r} (expected L, S or R)")


def _weight(tok: str, where) -> Fraction:
    try:
        w = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        where(f"bad weight {tok!r}")
    return w


def parse_fat(text: str, source: str = "<string>") -> Machine:
    """Parse ``.fat`` text. Errors name the offending line."""
    header: dict[str, tuple[int, str]] = {}
    advice_alpha: dict[int, tuple[int, str]] = {}
    advice_mode: dict[int, tuple[int, str]] = {}
    trans_lines: list[tuple[int, str]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        def fail(msg, _n=lineno):
            raise FatParseError(_n, msg, source)

        if raw.startswith("#") or not raw.strip():
            continue
        if ":" not in raw:
            fail("expected 'field: value'")
        field_, _, value = raw.partition(":")
        field_ = field_.strip()
        value = value.strip()
        m = _ADVICE_KEY.match(field_)
        if m:
            table = advice_alpha if m.group(1) == "alphabet" else advice_mode
            j = int(m.group(2))
            if j in table:
                fail(f"duplicate {field_}")
            table[j] = (lineno, value)
        elif field_ == "trans":
            trans_lines.append((lineno, value))
        elif field_ in ("name", "alphabet input", "mode input", "states", "start",
                        "accept", "reject", "kind"):
            if field_ in header:
                fail(f"duplicate {field_}")
            header[field_] = (lineno, value)
        else:
            fail(f"unknown field {field_!r}")

    last = len(text.splitlines()) or 1

    def need(name):
        if name not in header:
            raise FatParseError(last, f"missing '{name}:' line", source)
        return header[name]

    def at(lineno):
        def fail(msg):
            raise FatParseError(lineno, msg, source)
        return fail

    k = len(advice_alpha)
    if sorted(advice_alpha) != list(range(k)):
        raise FatParseError(last, "advice tapes must be numbered 0..k-1", source)
    if sorted(advice_mode) != list(range(k)):
        raise FatParseError(last, "every advice tape needs a 'mode advice[j]:' line", source)

    try:
        ln, v = need("alphabet input")
        input_alphabet = Alphabet(tuple(v.split()), "input")
        alphas = []
        for j in range(k):
            ln, v = advice_alpha[j]
            alphas.append(Alphabet(tuple(v.split()), "advice"))
    except (MachineError, ValueError) as exc:
        raise FatParseError(ln, str(exc), source) from None

    ln, v = need("mode input")
    input_mode = _mode(v, at(ln))
    modes = tuple(_mode(advice_mode[j][1], at(advice_mode[j][0])) for j in range(k))
    states = tuple(need("states")[1].split())
    singles = {}
    for name in ("start", "accept", "reject"):
        ln, v = need(name)
        if len(v.split()) != 1:
            at(ln)(f"'{name}:' takes exactly one state")
        singles[name] = v
    kind = header.get("kind", (0, ""))[1]
    if kind not in ("", "dfat", "pfat"):
        at(header["kind"][0])(f"unknown kind {kind!r}")

    transitions: dict = {}
    for ln, value in trans_lines:
        fail = at(ln)
        lhs, arrow, rhs = value.partition("->")
        if not arrow:
            fail("transition needs '->'")
        key_toks = lhs.split()
        if len(key_toks) != k + 2:
            fail(f"expected state, input symbol and {k} advice symbol(s) before '->'")
        key = (key_toks[0], key_toks[1], tuple(key_toks[2:]))
        if key in transitions:
            fail("duplicate transition for this key")
        toks = rhs.split()
        cut = next((i for i, t in enumerate(toks) if t.startswith("#")), len(toks))
        rhs = " ".join(toks[:cut])
        choices = []
        for part in rhs.split("|"):
            ct = part.split()
            if len(ct) == k + 2:
                w = Fraction(1)
            elif len(ct) == k + 3:
                w = _weight(ct[0], fail)
                ct = ct[1:]
            else:
                fail(f"choice {part.strip()!r} needs [weight] state and {k + 1} moves")
            choices.append(Choice(w, ct[0], _move(ct[1], fail),
                                  tuple(_move(t, fail) for t in ct[2:])))
        transitions[key] = tuple(choices)

    probabilistic = kind == "pfat" or (not kind and any(len(c) > 1 for c in transitions.values()))
    return Machine(
        name=header.get("name", (0, Path(source).stem if source != "<string>" else "machine"))[1],
        states=states,
        start=singles["start"],
        accept=singles["accept"],
        reject=singles["reject"],
        input_alphabet=input_alphabet,
        advice_alphabets=tuple(alphas),
        input_mode=input_mode,
        advice_modes=modes,
        transitions=transitions,
        probabilistic=probabilistic,
    )


def load_fat(path) -> Machine:
    p = Path(path)
    return parse_fat(p.read_text(encoding="utf-8"), source=str(p))


def _check_name(q: str) -> None:
    if not q or any(ch.isspace() for ch in q) or q.startswith("#") or "|" in q or "->" in q:
        raise MachineError(f"state name {q!r} cannot be written to a .fat file")


def dump_fat(m: Machine) -> str:
    """Serialize ``m``; :func:`parse_fat` inverts this exactly."""
    for q in m.states:
        _check_name(q)
    lines = [f"name: {m.name}", f"kind: {'pfat' if m.probabilistic else 'dfat'}",
             "alphabet input: " + " ".join(m.input_alphabet)]
    lines += [f"alphabet advice[{j}]: " + " ".join(a) for j, a in enumerate(m.advice_alphabets)]
    lines.append(f"mode input: {m.input_mode.value}")
    lines += [f"mode advice[{j}]: {mode.value}" for j, mode in enumerate(m.advice_modes)]
    lines += [f"states: {' '.join(m.states)}", f"start: {m.start}",
              f"accept: {m.accept}", f"reject: {m.reject}"]
    for (q, x, adv), choices in m.transitions.items():
        parts = []
        for c in choices:
            moves = " ".join(mv.letter for mv in (c.input_move, *c.advice_moves))
            w = "" if len(choices) == 1 and c.weight == 1 else f"{c.weight} "
            parts.append(f"{w}{c.state} {moves}")
        lines.append(f"trans: {q} {x} {' '.join(adv)} -> {' | '.join(parts)}")
    return "\n".join(lines) + "\n"


def save_fat(m: Machine, path) -> None:
    Path(path).write_text(dump_fat(m), encoding="utf-8")
