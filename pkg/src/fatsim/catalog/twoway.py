"""Machines with a two-way input head."""

from __future__ import annotations

from ..advice import BLANK
from ..core import LEND, REND, HeadMode, Machine, Move, L, R, S
from ._table import Table

TW, RT = HeadMode.TWO_WAY, HeadMode.REAL_TIME


def pal2w_machine() -> Machine:
    """Even palindromes over {a, b}.

    Each advice block is a 0/1 mask with ones at a mirrored pair of positions.
    The input head sweeps forward over one block and backward over the next,
    remembering the symbol under the first 1 and comparing it with the one
    under the second.
    """
    t = Table("pal2w", "ab", ["01#r"], TW, [RT])
    t.reject("start", "<", "r")
    t.go("start", "<", "#", "F0", R, R)
    for d, step in (("F", R), ("B", L)):
        for x in "ab":
            t.go(f"{d}0", x, "0", f"{d}0", step, R)
            t.go(f"{d}0", x, "1", f"{d}{x}", step, R)
            for y in "ab":
                t.go(f"{d}{y}", x, "0", f"{d}{y}", step, R)
                if x == y:
                    t.go(f"{d}{y}", x, "1", f"{d}done", step, R)
                else:
                    t.reject(f"{d}{y}", x, "1")
            t.go(f"{d}done", x, "0", f"{d}done", step, R)
        t.accept(f"{d}0", t.all_input(), ">")
    t.go("Fdone", ">", "#", "B0", L, R)
    t.go("Bdone", "<", "#", "F0", R, R)
    return t.build("start")


def expall_machine(alphabet: str = "ab") -> Machine:
    """Membership in any language whose length-n members are listed on the advice.

    The input is compared with the advice word under the head one square
    behind: state ``cmp.<s>`` holds the advice symbol s read on the previous
    step. On a mismatch the input head rewinds to the left endmarker while the
    advice head skips to the next separator; the blank run is long enough for
    the rewind to finish first.
    """
    t = Table("expall", alphabet, [alphabet + BLANK], TW, [RT])
    letters = tuple(alphabet)
    end = "cmp.end"

    def cmp_state(y: str) -> str:
        return end if y == REND else f"cmp.{y}"

    for y in letters + (BLANK,):
        t.go("start", "<", y, cmp_state(y), R, R)
    t.reject("start", "<", ">")

    for s in letters:
        for x in letters:
            for y in letters + (BLANK, REND):
                adv_move = S if y == REND else R
                if x == s:
                    t.go(f"cmp.{s}", x, y, cmp_state(y), R, adv_move)
                elif y == REND:
                    t.reject(f"cmp.{s}", x, y)
                else:
                    t.go(f"cmp.{s}", x, y, "rw2" if y == BLANK else "rw1", L, R)
    for q in (f"cmp.{BLANK}", end):
        t.accept(q, ">", t.all_advice())

    for q in ("rw1", "rw2"):
        for x in t.all_input():
            move = S if x == LEND else L
            t.go(q, x, BLANK, "rw2", move, R)
            t.reject(q, x, ">")
            if q == "rw1":
                t.go(q, x, alphabet, "rw1", move, R)
    for y in letters:
        t.go("rw2", "<", y, cmp_state(y), R, R)
    return t.build("start")
