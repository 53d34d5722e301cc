"""Machines that compare letter counts against the length of an advice block."""

from __future__ import annotations

from fractions import Fraction

from ..core import HeadMode, R, S
from ._table import Table

RT, OW = HeadMode.REAL_TIME, HeadMode.ONE_WAY


def equal2_machine():
    """Real-time input, one-way advice ``a^(n/2)``: one advice step per input ``a``."""
    t = Table("equal2", "ab", ["ar"], RT, [OW])
    t.reject("start", "<", "r")
    t.go("start", "<", "a>", "scan", R, S)
    t.go("scan", "a", "a", "scan", R, R)
    t.reject("scan", "a", ">")
    t.go("scan", "b", "a>", "scan", R, S)
    t.accept("scan", ">", ">")
    t.reject("scan", ">", "a")
    return t.build("start")


EQUAL_COST = {"a": 1, "b": 3, "c": 2}


def equal_machine():
    """One-way input, real-time advice ``a^(2n)``.

    The advice head is forced to move on every step, so the input head waits
    instead. State ``bal<d>`` records d = advice squares consumed minus squares
    charged to input symbols read so far; a symbol is charged (and the input
    head advanced) once enough squares have gone by. Advice running out while
    a charge is still owed rejects.
    """
    t = Table("equal", "abc", ["a"], HeadMode.ONE_WAY, [RT])
    t.go("start", "<", ">", "bal0", R, S)
    t.go("start", "<", "a", "bal1", R, R)
    top = max(EQUAL_COST.values())
    for d in range(top + 1):
        q = f"bal{d}"
        for x, cost in EQUAL_COST.items():
            if d >= cost:
                t.go(q, x, "a", f"bal{d - cost + 1}", R, R)
                t.go(q, x, ">", f"bal{d - cost}", R, S)
            else:
                t.go(q, x, "a", f"bal{d + 1}", S, R)
                t.reject(q, x, ">")
        t.halt(q, ">", ">", accept=(d == 0))
        t.reject(q, ">", "a")
    return t.build("start")


def _displacement(t: Table, i: int, block_end: str) -> None:
    """Advance the advice head 1, i or i*i squares per a, b, c.

    Starts in ``read<i>`` with the advice head on the first square of the
    block; accepts when the input and the block end together.
    """
    read = f"read{i}"
    cost = {"a": 1, "b": i, "c": i * i}
    for x, d in cost.items():
        if d == 1:
            t.go(read, x, "1", read, R, R)
        else:
            t.go(read, x, "1", f"mv{i}.{d - 1}", S, R)
        t.reject(read, x, block_end)
    for owed in range(1, i * i):
        q = f"mv{i}.{owed}"
        if owed == 1:
            t.go(q, "abc", "1", read, R, R)
        else:
            t.go(q, "abc", "1", f"mv{i}.{owed - 1}", S, R)
        t.reject(q, "abc", block_end)
    t.accept(read, ">", block_end)
    t.reject(read, ">", "1")


def equal3_rand_machine(s: int):
    """Deterministic one-way machine for advice ``1^i # 1^(k i^2 + k i + k)``."""
    t = Table(f"equal3-rand[s={s}]", "abc", ["1#r"], OW, [OW])
    t.reject("start", "<", "r")
    t.go("start", "<", "1", "cnt1", R, R)
    for c in range(1, s + 1):
        if c < s:
            t.go(f"cnt{c}", "abc>", "1", f"cnt{c + 1}", S, R)
        else:
            t.reject(f"cnt{c}", "abc>", "1")
        t.go(f"cnt{c}", "abc>", "#", f"read{c}", S, R)
        _displacement(t, c, ">")
    return t.build("start")


def equal3_pfat_machine(s: int):
    """Probabilistic one-way machine reading ``#1^(k+k+k) #1^(4k+2k+k) ...``.

    It draws i uniformly from 1..s (by fair coin flips when s is a power of
    two, by one s-way choice otherwise), skips to the i-th ``#`` and then runs
    the same displacement check, with ``#`` or the endmarker closing the block.
    """
    t = Table(f"equal3-pfat[s={s}]", "abc", ["1#r"], OW, [OW])
    t.reject("start", "<", "r")
    anywhere = "abc>"

    if s == 1:
        t.go("start", "<", "#", "pick1", R, S)
    elif s & (s - 1) == 0:
        depth = s.bit_length() - 1
        t.go("start", "<", "#", "toss0.0", R, S)
        for d in range(depth):
            for v in range(2**d):
                if d + 1 == depth:
                    kids = [f"pick{2 * v + 1}", f"pick{2 * v + 2}"]
                else:
                    kids = [f"toss{d + 1}.{2 * v}", f"toss{d + 1}.{2 * v + 1}"]
                half = Fraction(1, 2)
                t.branch(f"toss{d}.{v}", anywhere, "#",
                         [(half, kids[0], S, S), (half, kids[1], S, S)])
    else:
        t.go("start", "<", "#", "draw", R, S)
        t.branch("draw", anywhere, "#",
                 [(Fraction(1, s), f"pick{i}", S, S) for i in range(1, s + 1)])

    for i in range(1, s + 1):
        if i == 1:
            t.go("pick1", anywhere, "#", "read1", S, R)
        else:
            t.go(f"pick{i}", anywhere, "#", f"skip{i}.{i - 1}", S, R)
        for r in range(1, i):
            q = f"skip{i}.{r}"
            t.go(q, anywhere, "1", q, S, R)
            t.go(q, anywhere, "#", f"read{i}" if r == 1 else f"skip{i}.{r - 1}", S, R)
            t.reject(q, anywhere, ">")
        _displacement(t, i, "#>")
    return t.build("start", probabilistic=True)
