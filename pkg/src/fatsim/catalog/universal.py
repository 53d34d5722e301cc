"""One-way input, two advice tapes: a lookup table of every word of length n."""

from __future__ import annotations

from ..advice import MARK_ACCEPT as YES, MARK_REJECT as NO
from ..core import HeadMode, Machine, R, S
from ._table import Table

OW = HeadMode.ONE_WAY


def universal2_machine(alphabet: str = "ab") -> Machine:
    """Scan the word list on tape 1 for the input.

    While the current candidate agrees with the input both heads advance. On
    a disagreement the input head waits and tape 2, which holds ``+ -^n`` per
    candidate, walks tape 1 to the start of the next candidate; the input head
    is then still on the first unmatched symbol, and earlier candidates in
    lexicographic order agree with the input on the matched prefix, so the
    comparison resumes there. At the input end tape 1 shows the verdict mark.
    """
    sigma = "".join(alphabet)
    tape1 = sigma + YES + NO
    t = Table("universal2", sigma, [tape1, YES + NO], OW, [OW, OW])
    t.go("start", "<", (t.all_advice(0), t.all_advice(1)), "match", R, S, S)
    for x in sigma:
        for y in sigma:
            if x == y:
                t.go("match", x, (y, YES), "match", R, R, S)
            else:
                t.go("match", x, (y, YES), "skip", S, R, R)
        t.go("skip", x, (tape1, NO), "skip", S, R, R)
        t.go("skip", x, (tape1, YES), "match", S, S, S)
    t.accept("match", ">", (YES, YES))
    t.reject("match", ">", (NO, YES))
    return t.build("start")
