"""Prefix equivalence classes and advice growth.

Two prefixes x, y of length k are equivalent for a language L at length n
when xz and yz agree on membership for every suffix z of length n - k. A
one-way machine whose advice has length g(n) can only tell apart as many
prefixes as it has (state, advice position) pairs when its input head first
crosses position k, so class counts give lower bounds on advice length.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .enumeration import check_budget, words
from .engine import iter_trace


def _predicate(oracle) -> Callable[[str], bool]:
    return getattr(oracle, "predicate", oracle)


def _alphabet(oracle, alphabet) -> str:
    if alphabet is not None:
        return "".join(alphabet)
    try:
        return oracle.alphabet
    except AttributeError:
        raise ValueError("oracle has no alphabet; pass one explicitly") from None


# class counting -------------------------------------------------------------

@dataclass
class ClassCountReport:
    language: str
    n: int
    k: int
    count: int
    representatives: list[str] = field(default_factory=list)

    def format(self, witnesses: bool = False) -> str:
        line = f"{self.language} n={self.n} k={self.k}: {self.count} classes"
        if not witnesses:
            return line
        return "\n".join([line] + [f"  {r!r}" for r in self.representatives])


def signature(pred: Callable[[str], bool], x: str, suffixes: Sequence[str]) -> bytes:
    """Membership of ``x + z`` for each suffix, packed eight to a byte."""
    bits = bytearray((len(suffixes) + 7) // 8)
    for i, z in enumerate(suffixes):
        if pred(x + z):
            bits[i >> 3] |= 1 << (i & 7)
    return bytes(bits)


def count_equivalence_classes(oracle, n: int, k: int, alphabet: str | None = None,
                              witnesses: bool = True) -> ClassCountReport:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    sigma = _alphabet(oracle, alphabet)
    check_budget(f"class count at n={n}", len(sigma) ** n)
    pred = _predicate(oracle)
    suffixes = list(words(sigma, n - k))
    classes: dict[bytes, str] = {}
    for x in words(sigma, k):
        classes.setdefault(signature(pred, x, suffixes), x)
    reps = sorted(classes.values(), key=lambda w: [sigma.index(c) for c in w]) if witnesses else []
    return ClassCountReport(getattr(oracle, "id", "custom"), n, k, len(classes), reps)


def fit_quadratic(points: Iterable[tuple[int, int]]) -> tuple[float, float]:
    """Constant c for count ~ c * n^2 (geometric mean) and the worst factor off it."""
    pts = list(points)
    logs = [math.log(count / (n * n)) for n, count in pts]
    c = math.exp(sum(logs) / len(logs))
    worst = max(max(count / (c * n * n), c * n * n / count) for n, count in pts)
    return c, worst


# witness families -----------------------------------------------------------

@dataclass
class WitnessReport:
    family: str
    n: int
    k: int
    members: list[str]
    expected_size: int
    distinguishers: dict[tuple[str, str], str]
    undistinguished: list[tuple[str, str]]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def pairs(self) -> int:
        return self.size * (self.size - 1) // 2

    @property
    def ok(self) -> bool:
        return self.size == self.expected_size and not self.undistinguished

    def format(self) -> str:
        lines = [
            f"{self.family} n={self.n} k={self.k}: |S| = {self.size} "
            f"(closed form {self.expected_size})",
            f"{len(self.distinguishers)}/{self.pairs} pairs distinguished",
        ]
        for x, y in self.undistinguished[:10]:
            lines.append(f"  no suffix separates {x!r} and {y!r}")
        return "\n".join(lines)


def _pal_halves(n: int, k: int | None):
    if n % 2:
        raise ValueError("pal-halves needs even n")
    half = n // 2
    members = list(words("ab", half))
    return "pal", half, members, 2**half, lambda x: [x[::-1]]


def _equal3_prefixes(n: int, k: int | None):
    if k is None:
        if n % 3:
            raise ValueError("equal3-prefixes needs n divisible by 3")
        k = n // 3
    if n != 3 * k:
        raise ValueError("equal3-prefixes needs n = 3k")
    members = ["a" * p + "b" * q + "c" * (k - p - q)
               for p in range(k + 1) for q in range(k - p + 1)]

    def completions(x):
        return ["a" * (k - x.count("a")) + "b" * (k - x.count("b")) + "c" * (k - x.count("c"))]

    return "equal3", k, members, math.comb(k + 2, 2), completions


def _li_prefixes(n: int, level: int):
    length = n // 2 + 1
    members = []
    # counts n_level..n_1 >= 0 and n_0 >= 1 summing to the prefix length
    for parts in itertools.product(range(length + 1), repeat=level):
        if sum(parts) < length:
            x = "".join(str(level - j) * c for j, c in enumerate(parts))
            members.append(x + "0" * (length - sum(parts)))

    def completions(x):
        outer = x.rstrip("0")
        zeros = n - length - len(outer)
        if zeros < 0:
            return []
        return ["0" * zeros + outer[::-1]]

    expected = math.comb(length - 1 + level, level)
    return f"l_{level}", length, members, expected, completions


def witness_family(family: str, n: int, k: int | None = None):
    """``(language id, prefix length, members, closed-form size, completions)``."""
    if family == "pal-halves":
        return _pal_halves(n, k)
    if family == "equal3-prefixes":
        return _equal3_prefixes(n, k)
    if family == "li-prefixes":
        return _li_prefixes(n, 2 if k is None else k)
    raise ValueError(f"unknown witness family {family!r}; known: {', '.join(WITNESS_FAMILIES)}")


WITNESS_FAMILIES = ("pal-halves", "li-prefixes", "equal3-prefixes")


def check_witness_family(family: str, n: int, k: int | None = None) -> WitnessReport:
    """Enumerate a witness set and find a separating suffix for every pair.

    ``k`` is the prefix length k for equal3-prefixes (n must equal 3k) and
    the level i for li-prefixes. Each member's own completion to a word of
    the language is tried first; failing that, every suffix is searched. All
    separators are confirmed with the oracle.
    """
    from .catalog.oracles import oracle as lookup

    lang, length, members, expected, completions = witness_family(family, n, k)
    orc = lookup(lang)
    pred = orc.predicate
    check_budget(f"{family} at n={n}", len(members) ** 2 * (n + 1))
    suffixes = None
    found: dict[tuple[str, str], str] = {}
    missing: list[tuple[str, str]] = []
    for x, y in itertools.combinations(members, 2):
        z = next((z for z in completions(x) + completions(y) if pred(x + z) != pred(y + z)), None)
        if z is None:
            if suffixes is None:
                check_budget(f"{family} suffix search at n={n}",
                             len(members) ** 2 * len(orc.alphabet) ** (n - length))
                suffixes = list(words(orc.alphabet, n - length))
            z = next((z for z in suffixes if pred(x + z) != pred(y + z)), None)
        if z is not None and orc(x + z) != orc(y + z):
            found[(x, y)] = z
        else:
            missing.append((x, y))
    return WitnessReport(family, n, length, members, expected, found, missing)


# crossing configurations ----------------------------------------------------

def crossing_configuration(m, x: str, advice, k: int):
    """(state, advice positions) when the input head first moves past ``x[:k]``,
    or the verdict if the run halts before that."""
    gen = iter_trace(m, x, advice)
    while True:
        try:
            step = next(gen)
        except StopIteration as stop:
            return stop.value.verdict
        if step.config.input_pos == k + 1:
            gen.close()
            return (step.config.state, step.config.advice_pos)


@dataclass
class CrossingReport:
    construction: str
    n: int
    k: int
    classes: int
    crossings: int
    states: int
    advice_length: int

    @property
    def bound(self) -> int:
        return self.states * (self.advice_length + 1) + 2

    @property
    def constant(self) -> float:
        return self.classes / max(self.advice_length, 1)

    @property
    def ok(self) -> bool:
        return self.classes <= self.crossings <= self.bound

    def format(self) -> str:
        return (f"{self.construction} n={self.n} k={self.k}: {self.classes} classes <= "
                f"{self.crossings} crossing configurations <= |Q|(g+1)+2 = {self.bound}; "
                f"classes/g = {self.constant:.3g}")


def crossing_check(construction, n: int, k: int) -> CrossingReport:
    """Compare the class count with the configurations a one-way machine reaches
    when it leaves a length-k prefix. Equal configurations force equivalence,
    so the class count can never exceed the configuration count."""
    m = construction.machine
    if m.input_mode.value == "two-way":
        raise ValueError("crossing configurations are defined for one-way input heads")
    sigma = construction.alphabet
    advice = construction.advice.tapes(n)
    check_budget(f"crossing check at n={n}", len(sigma) ** n)
    filler = sigma[0] * (n - k)
    seen = {crossing_configuration(m, x + filler, advice, k) for x in words(sigma, k)}
    classes = count_equivalence_classes(construction.oracle, n, k, witnesses=False).count
    return CrossingReport(construction.id, n, k, classes, len(seen), len(m.states),
                          sum(map(len, advice)))


# advice growth --------------------------------------------------------------

@dataclass
class GrowthTable:
    construction: str
    rows: list[tuple[int, int]]

    def length(self, n: int) -> int:
        return dict(self.rows)[n]

    def ratios(self) -> list[tuple[int, float]]:
        table = dict(self.rows)
        return [(n, table[2 * n] / table[n]) for n, _ in self.rows
                if 2 * n in table and table[n] > 0]

    @property
    def fitted_ratio(self) -> float | None:
        r = self.ratios()
        return r[-1][1] if r else None

    def format(self) -> str:
        table = dict(self.rows)
        width = max(len(str(v)) for v in table.values()) if table else 1
        nw = max(len(str(n)) for n in table) if table else 1
        lines = [f"{'n':>{nw}}  {'|h(n)|':>{width}}  |h(2n)|/|h(n)|"]
        for n, length in self.rows:
            ratio = f"{table[2 * n] / length:.4f}" if 2 * n in table and length else "-"
            lines.append(f"{n:>{nw}}  {length:>{width}}  {ratio}")
        if self.fitted_ratio is not None:
            lines.append(f"fitted ratio {self.fitted_ratio:.4f}")
        return "\n".join(lines)


def measure_advice_growth(construction: str, n_max: int, n_min: int = 1,
                          ns: Iterable[int] | None = None, **params) -> GrowthTable:
    from .advice import make_advice

    name = construction
    if name.startswith("l_") and name[2:].isdigit():
        params.setdefault("k", int(name[2:]))
        name = "l_k"
    if name in ("universal2", "expall"):
        from .catalog import build
        h = build(name, **params).advice
    else:
        h = make_advice(name, **params)
    points = sorted(set(ns)) if ns is not None else range(n_min, n_max + 1)
    return GrowthTable(construction, [(n, h.length(n)) for n in points])


def lk_ratio_check(k: int, lo: int = 20, hi: int = 100) -> tuple[float, float]:
    """Largest |h_k(2n)|/|h_k(n)| over lo..hi and the allowed 1.25 * 2^k."""
    table = measure_advice_growth("l_k", 2 * hi, ns=list(range(lo, hi + 1)) +
                                  list(range(2 * lo, 2 * hi + 1, 2)), k=k)
    worst = max(r for n, r in table.ratios() if lo <= n <= hi)
    return worst, 1.25 * 2**k

