"""Lexicographic word enumeration and the work budget guard."""

from __future__ import annotations

import itertools
import os
from typing import Iterator, Sequence

DEFAULT_BUDGET = 10**8


class InfeasibleError(ValueError):
    def __init__(self, what: str, cost: int, budget: int):
        self.cost = cost
        self.budget = budget
        super().__init__(
            f"refusing {what}: estimated cost {cost:,} exceeds budget {budget:,} "
            f"(set FAT_BUDGET to raise it)")


def work_budget() -> int:
    raw = os.environ.get("FAT_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    return int(float(raw))


def check_budget(what: str, cost: int, budget: int | None = None) -> None:
    budget = work_budget() if budget is None else budget
    if cost > budget:
        raise InfeasibleError(what, cost, budget)


def words(alphabet: Sequence[str], n: int) -> Iterator[str]:
    """All words of length ``n`` in lexicographic order of ``alphabet``."""
    for t in itertools.product(alphabet, repeat=n):
        yield "".join(t)


def words_upto(alphabet: Sequence[str], n_max: int) -> Iterator[str]:
    for n in range(n_max + 1):
        yield from words(alphabet, n)


def word_at(alphabet: Sequence[str], n: int, index: int) -> str:
    base = len(alphabet)
    out = []
    for _ in range(n):
        index, d = divmod(index, base)
        out.append(alphabet[d])
    return "".join(reversed(out))


def word_range(alphabet: Sequence[str], n: int, lo: int, hi: int) -> Iterator[str]:
    """Words with lexicographic indices in ``[lo, hi)``."""
    if lo >= hi:
        return
    # product() cannot seek, so count upward from the first word's digits
    digits = [alphabet.index(c) for c in word_at(alphabet, n, lo)]
    base = len(alphabet)
    count = hi - lo
    while count:
        yield "".join(alphabet[d] for d in digits)
        count -= 1
        i = n - 1
        while i >= 0:
            digits[i] += 1
            if digits[i] < base:
                break
            digits[i] = 0
            i -= 1


def count_upto(alphabet_size: int, n_max: int) -> int:
    return sum(alphabet_size**n for n in range(n_max + 1))
