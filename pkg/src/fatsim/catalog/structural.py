"""Machines that check block structure: ``a^k b^m c^k`` and the nested-counter family."""

from __future__ import annotations

from ..advice import LEVEL_SEPARATORS, MAX_LEVEL, lk_advice_alphabet
from ..core import LEND, REND, Choice, HeadMode, Machine, R, S
from ._table import REJECT, Table
from .oracles import l_k_alphabet

OW = HeadMode.ONE_WAY


def l_f_machine(f_name: str = "sqrt") -> Machine:
    """One-way input and advice ``##a#aa#...#a^f(n)#``.

    Each leading ``a`` moves the advice head to the next ``#``, so after k of
    them it rests on the (k+1)-th ``#``, whose block holds exactly k a's. The
    trailing c's are then matched against that block.
    """
    t = Table(f"l_f[{f_name}]", "abc", ["a#"], OW, [OW])
    t.go("start", "<", "a#>", "A", R, S)
    t.go("A", "a", "#", "seek", S, R)
    t.go("seek", "abc", "a", "seek", S, R)
    t.go("seek", "a", "#", "A", R, S)
    t.reject("seek", "abc", ">")
    for q in ("A", "B"):
        t.go(q, "b", "#", "B", R, S)
        t.go(q, "c>", "#", "C", S, R)
    t.go("C", "c", "a", "C", R, R)
    t.reject("C", "c", "#>")
    t.accept("C", ">", "#")
    # advice past the last '#' means more a's than blocks
    t.reject("C", ">", "a>")
    return t.build("start")


def l_1_machine() -> Machine:
    """Advice ``1^n``: c1's before the centre cost nothing, each c0 one square,
    each trailing c1 two squares; accept iff both tapes end together."""
    t = Table("l_1", "01", ["1"], OW, [OW])
    t.go("start", "<", "1>", "lead", R, S)
    t.go("lead", "1", "1>", "lead", R, S)
    t.go("lead", "0", "1", "mid", R, R)
    t.go("mid", "0", "1", "mid", R, R)
    for q in ("mid", "tail"):
        t.go(q, "1", "1", "tail2", S, R)
        t.accept(q, ">", ">")
    t.go("tail2", "1", "1", "tail", R, R)
    return t.build("start")


def _embed(t: Table, inner: Machine, prefix: str, entry: str, on_accept: str,
           input_end: str, advice_end: str) -> str:
    """Copy ``inner``'s transitions into ``t`` under ``prefix``.

    Keys reading the right endmarker also fire on the symbols in
    ``input_end`` / ``advice_end``, so the copy treats them as the end of its
    tapes. Its accept state becomes ``on_accept`` and its reject state the
    outer reject. The start state and left-endmarker keys are dropped: the copy
    is entered at ``entry``, the state ``inner`` reaches after leaving the left
    endmarker. Returns the prefixed entry state.
    """
    def rename(q):
        if q == inner.accept:
            return on_accept
        if q == inner.reject:
            return REJECT
        return prefix + q

    for (q, x, (y,)), choices in inner.transitions.items():
        if q == inner.start or x == LEND:
            continue
        xs = (x,) + (tuple(input_end) if x == REND else ())
        ys = (y,) + (tuple(advice_end) if y == REND else ())
        row = tuple(Choice(c.weight, rename(c.state), c.input_move, c.advice_moves)
                    for c in choices)
        for xx in xs:
            for yy in ys:
                t.put((prefix + q, xx, (yy,)), row)
    return prefix + entry


def l_k_machine(k: int) -> Machine:
    """Nested-counter machine of depth ``k``, built recursively.

    Level i+1 skips one ``#``-block of advice per leading c_{i+1}, hands the
    middle of the input to a copy of level i (which sees the next c_{i+1} and
    the level's advice symbols as endmarkers), then skips the rest of the
    inner advice and matches trailing c_{i+1}'s with the block's c_{i+1} run.
    """
    if not 1 <= k <= MAX_LEVEL:
        raise ValueError(f"k must be in 1..{MAX_LEVEL}")
    if k == 1:
        return l_1_machine()
    inner = l_k_machine(k - 1)
    c, sep = str(k), LEVEL_SEPARATORS[k]
    inner_advice = lk_advice_alphabet(k - 1)
    t = Table(f"l_{k}", l_k_alphabet(k), [lk_advice_alphabet(k)], OW, [OW])
    everything = t.all_advice()

    t.go("start", "<", everything, "lead", R, S)
    t.go("lead", c, sep, "lead", R, R)
    t.go("lead", c, inner_advice + c, "skip", S, R)
    t.go("skip", c, inner_advice + c, "skip", S, R)
    t.go("skip", c, sep, "lead", R, R)
    t.reject("lead", c + ">", ">")
    t.reject("skip", c, ">")

    body = _embed(t, inner, "m.", "lead", "post", input_end=c, advice_end=c + sep)
    t.go("lead", l_k_alphabet(k - 1), everything, body, S, S)

    t.go("post", c + ">", inner_advice, "post", S, R)
    for q in ("post", "match"):
        t.go(q, c, c, "match", R, R)
        t.accept(q, ">", sep)
    return t.build("start")

