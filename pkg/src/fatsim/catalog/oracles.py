"""Brute-force membership deciders used as ground truth."""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterable

from ..advice import growth_function


@dataclass(frozen=True)
class LanguageOracle:
    id: str
    alphabet: str
    predicate: Callable[[str], bool]

    def __call__(self, x: str) -> bool:
        for ch in x:
            if ch not in self.alphabet:
                raise ValueError(f"{self.id}: symbol {ch!r} outside alphabet {self.alphabet!r}")
        return bool(self.predicate(x))


def is_equal2(w: str) -> bool:
    return w.count("a") == w.count("b")


def is_equal3(w: str) -> bool:
    return w.count("a") == w.count("b") == w.count("c")


def is_pal(w: str) -> bool:
    return len(w) % 2 == 0 and w == w[::-1]


def is_l_f(w: str, f="sqrt") -> bool:
    k = len(w) - len(w.lstrip("a"))
    rest = w[k:]
    m = len(rest) - len(rest.lstrip("b"))
    tail = rest[m:]
    return tail == "c" * k and k <= growth_function(f)(len(w))


def runs(w: str) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    for ch in w:
        if out and out[-1][0] == ch:
            out[-1] = (ch, out[-1][1] + 1)
        else:
            out.append((ch, 1))
    return out


def is_l_k(w: str, k: int = 1) -> bool:
    """``c_k^{n_k} .. c_1^{n_1} c_0^{n_0} c_1^{n_1} .. c_k^{n_k}`` with n_0 > 0.

    ``c_j`` is written as the digit j.
    """
    blocks = runs(w)
    centre = [i for i, (ch, _) in enumerate(blocks) if ch == "0"]
    if len(centre) != 1:
        return False
    i = centre[0]
    left, right = blocks[:i], blocks[i + 1:]
    # left side strictly descends towards c_0, right side mirrors it
    if left != right[::-1]:
        return False
    levels = [int(ch) for ch, _ in left]
    return all(1 <= a <= k for a in levels) and all(a > b for a, b in zip(levels, levels[1:]))


def _contains(words: frozenset, w: str) -> bool:
    return w in words


def _never(w: str) -> bool:
    return False


def _always(w: str) -> bool:
    return True


def l_k_alphabet(k: int) -> str:
    return "".join(str(j) for j in range(k + 1))


def oracle(id: str, **params) -> LanguageOracle:
    """Look up a registered oracle. ``l_1`` .. ``l_9`` are shorthands for ``l_k``."""
    if id.startswith("l_") and id[2:].isdigit():
        params.setdefault("k", int(id[2:]))
        id = "l_k"
    if id == "equal2":
        return LanguageOracle("equal2", "ab", is_equal2)
    if id == "equal":
        return LanguageOracle("equal", "abc", is_equal2)
    if id == "equal3":
        return LanguageOracle("equal3", "abc", is_equal3)
    if id == "pal":
        return LanguageOracle("pal", "ab", is_pal)
    if id == "l_f":
        f = params.get("f", "sqrt")
        growth_function(f)
        return LanguageOracle(f"l_f[{f}]", "abc", partial(is_l_f, f=f))
    if id == "l_k":
        k = int(params.get("k", 1))
        return LanguageOracle(f"l_{k}", l_k_alphabet(k), partial(is_l_k, k=k))
    if id == "empty":
        return LanguageOracle("empty", params.get("alphabet", "ab"), _never)
    if id == "all":
        return LanguageOracle("all", params.get("alphabet", "ab"), _always)
    if id == "set":
        return finite_language(params.get("words", ()), params.get("alphabet", "ab"))
    raise ValueError(f"unknown language {id!r}; known: {', '.join(ORACLE_IDS)}")


ORACLE_IDS = ("equal2", "equal", "equal3", "pal", "l_f", "l_k", "l_1", "l_2", "l_3",
              "empty", "all", "set")


def finite_language(words: Iterable[str], alphabet: str = "ab", id: str = "set") -> LanguageOracle:
    return LanguageOracle(id, alphabet, partial(_contains, frozenset(words)))


def oracle_membership(id: str, x: str, **params) -> bool:
    return oracle(id, **params)(x)
