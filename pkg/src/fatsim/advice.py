"""Advice functions: input length in, advice out.

Every generator is a pure function of ``n``. Lengths a construction rejects
outright (odd lengths for the balance and palindrome machines, lengths not
divisible by three for the three-letter balance machines) receive the
one-symbol advice ``r``, which those machines reject on sight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
from typing import Callable, Container, Sequence

from .enumeration import check_budget, words
from .stochastic import RandomizedAdvice

REJECT_MARK = "r"
BLANK = "_"
MARK_ACCEPT = "+"
MARK_REJECT = "-"

# separator symbol of level j in the nested-counter advice; c_j is written str(j)
LEVEL_SEPARATORS = {2: "#", 3: "$", 4: "%", 5: "&", 6: "@", 7: "=", 8: "~", 9: "^"}
MAX_LEVEL = 9


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def ceil_log2(n: int) -> int:
    return (n).bit_length() if n > 0 else 0


GROWTH_FUNCTIONS: dict[str, Callable[[int], int]] = {
    "sqrt": ceil_sqrt,
    "log": ceil_log2,
}


def growth_function(f) -> Callable[[int], int]:
    if callable(f):
        return f
    try:
        return GROWTH_FUNCTIONS[f]
    except KeyError:
        raise ValueError(f"unknown growth function {f!r}; known: {sorted(GROWTH_FUNCTIONS)}") from None


@dataclass(frozen=True)
class AdviceFunction:
    name: str
    params: tuple[tuple[str, object], ...]
    alphabets: tuple[str, ...]
    length_class: str
    evaluator: Callable[[int], object]
    randomized: bool = False

    def eval(self, n: int):
        """Advice for length ``n``: a string for one tape, a tuple for several,
        or a :class:`RandomizedAdvice` for randomized functions."""
        if n < 0:
            raise ValueError("input length must be non-negative")
        return self.evaluator(n)

    __call__ = eval

    def tapes(self, n: int) -> tuple[str, ...]:
        if self.randomized:
            raise TypeError(f"{self.name} is randomized; use distribution()")
        a = self.eval(n)
        return (a,) if isinstance(a, str) else tuple(a)

    def distribution(self, n: int) -> RandomizedAdvice:
        if self.randomized:
            return self.eval(n)
        return RandomizedAdvice(((self.tapes(n), Fraction(1)),))

    def length(self, n: int) -> int:
        """Total advice length over all tapes (longest alternative if randomized)."""
        if self.randomized:
            return max(sum(map(len, a)) for a, _ in self.eval(n))
        return sum(map(len, self.tapes(n)))


# generators -----------------------------------------------------------------

def equal2_advice(n: int) -> str:
    return REJECT_MARK if n % 2 else "a" * (n // 2)


def equal_advice(n: int) -> str:
    return "a" * (2 * n)


def l_f_advice(n: int, f="sqrt") -> str:
    top = growth_function(f)(n)
    return "#" + "".join("a" * j + "#" for j in range(top + 1))


@lru_cache(maxsize=4096)
def eval_lk_advice(k: int, n: int) -> str:
    """Advice for the nested-counter language of depth ``k`` at length ``n``.

    Level 1 is ``1^n``; level i+1 concatenates ``h_i(n-2j) c^j #`` for
    j = 0 .. n//2, where ``c`` and ``#`` are the level's counter and separator.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > MAX_LEVEL:
        raise ValueError(f"k must be at most {MAX_LEVEL}")
    if n < 0:
        raise ValueError("n must be non-negative")
    if k == 1:
        return "1" * n
    c, sep = str(k), LEVEL_SEPARATORS[k]
    return "".join(eval_lk_advice(k - 1, n - 2 * j) + c * j + sep for j in range(n // 2 + 1))


def lk_advice_alphabet(k: int) -> str:
    return "1" + "".join(str(j) + LEVEL_SEPARATORS[j] for j in range(2, k + 1))


def pal2w_advice(n: int) -> str:
    if n % 2:
        return REJECT_MARK
    blocks = []
    for i in range(n // 2):
        block = ["0"] * n
        block[i] = block[n - 1 - i] = "1"
        blocks.append("".join(block))
    return "#" + "".join(b + "#" for b in blocks)


def equal3_alternative(n: int, i: int) -> str:
    k = n // 3
    return "1" * i + "#" + "1" * (k * i * i + k * i + k)


def equal3_rand_advice(n: int, s: int) -> RandomizedAdvice:
    if n % 3:
        return RandomizedAdvice(((REJECT_MARK, Fraction(1)),))
    return RandomizedAdvice.uniform([equal3_alternative(n, i) for i in range(1, s + 1)])


def equal3_pfat_advice(n: int, s: int) -> str:
    if n % 3:
        return REJECT_MARK
    k = n // 3
    return "".join("#" + "1" * (k * i * i + k * i + k) for i in range(1, s + 1))


def _member(language, w: str) -> bool:
    return bool(language(w)) if callable(language) else w in language


def eval_universal2_advice(language: Container[str] | Callable[[str], bool], n: int,
                           alphabet: Sequence[str] = "ab") -> tuple[str, str]:
    """Two advice tapes that let a one-way machine decide any language.

    Tape 1 lists every word of length ``n`` in lexicographic order, each
    followed by ``+`` (member) or ``-``. Tape 2 is ``(+ -^n)`` repeated once per
    word, then a final ``+``; the machine uses it to count n+1 squares.
    """
    size = len(alphabet) ** n
    check_budget(f"universal2 advice at n={n}", size * (n + 1))
    tape1 = "".join(w + (MARK_ACCEPT if _member(language, w) else MARK_REJECT)
                    for w in words(alphabet, n))
    tape2 = (MARK_ACCEPT + MARK_REJECT * n) * size + MARK_ACCEPT
    return tape1, tape2


def eval_expall_advice(oracle: Callable[[str], bool], n: int,
                       alphabet: Sequence[str] = "ab") -> str:
    """Members of length ``n``, lexicographic, separated by ``n+2`` blanks.

    At n = 0 the listing of the single empty member would be the empty string,
    which is indistinguishable from "no members"; it is written as one
    separator (two blanks) instead.
    """
    check_budget(f"expall advice at n={n}", len(alphabet) ** n * (n + 1))
    members = [w for w in words(alphabet, n) if oracle(w)]
    if n == 0 and members:
        return BLANK * 2
    return (BLANK * (n + 2)).join(members)


# registry -------------------------------------------------------------------

def _build_equal2():
    return AdviceFunction("equal2", (), ("a" + REJECT_MARK,), "O(n)", equal2_advice)


def _build_equal():
    return AdviceFunction("equal", (), ("a",), "O(n)", equal_advice)


def _build_l_f(f="sqrt"):
    growth_function(f)
    return AdviceFunction("l_f", (("f", f),), ("a#",), "O(f(n)^2)", partial(l_f_advice, f=f))


def _build_l_k(k=1):
    k = int(k)
    if not 1 <= k <= MAX_LEVEL:
        raise ValueError(f"l_k needs 1 <= k <= {MAX_LEVEL}, got {k}")
    return AdviceFunction("l_k", (("k", k),), (lk_advice_alphabet(k),), f"O(n^{k})",
                          partial(eval_lk_advice, k))


def _build_pal2w():
    return AdviceFunction("pal2w", (), ("01#" + REJECT_MARK,), "O(n^2)", pal2w_advice)


def _check_s(s):
    s = int(s)
    if s < 1:
        raise ValueError("s must be a positive integer")
    return s


def _build_equal3_rand(s=4):
    s = _check_s(s)
    return AdviceFunction("equal3-rand", (("s", s),), ("1#" + REJECT_MARK,), "O(n)",
                          partial(equal3_rand_advice, s=s), randomized=True)


def _build_equal3_pfat(s=4):
    s = _check_s(s)
    return AdviceFunction("equal3-pfat", (("s", s),), ("1#" + REJECT_MARK,), "O(n)",
                          partial(equal3_pfat_advice, s=s))


def _build_universal2(language=frozenset(), alphabet="ab"):
    alphabet = "".join(alphabet)
    evaluator = partial(_universal2_eval, language, alphabet)
    return AdviceFunction("universal2", (("alphabet", alphabet),),
                          (alphabet + MARK_ACCEPT + MARK_REJECT, MARK_ACCEPT + MARK_REJECT),
                          "2^O(n)", evaluator)


def _universal2_eval(language, alphabet, n):
    return eval_universal2_advice(language, n, alphabet)


def _build_expall(oracle=None, alphabet="ab"):
    if oracle is None:
        raise ValueError("expall needs an oracle")
    alphabet = "".join(alphabet)
    return AdviceFunction("expall", (("oracle", getattr(oracle, "id", repr(oracle))),),
                          (alphabet + BLANK,), "2^O(n)",
                          partial(_expall_eval, oracle, alphabet))


def _expall_eval(oracle, alphabet, n):
    return eval_expall_advice(oracle, n, alphabet)


GENERATORS: dict[str, Callable[..., AdviceFunction]] = {
    "equal2": _build_equal2,
    "equal": _build_equal,
    "l_f": _build_l_f,
    "l_k": _build_l_k,
    "pal2w": _build_pal2w,
    "equal3-rand": _build_equal3_rand,
    "equal3-pfat": _build_equal3_pfat,
    "universal2": _build_universal2,
    "expall": _build_expall,
}


def make_advice(name: str, **params) -> AdviceFunction:
    try:
        factory = GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown advice generator {name!r}; known: {sorted(GENERATORS)}") from None
    try:
        return factory(**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from None
