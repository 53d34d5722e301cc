"""Named constructions: a machine, its advice function and a membership oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..advice import AdviceFunction, make_advice
from ..core import HeadMode, Machine
from .counting import equal2_machine, equal3_pfat_machine, equal3_rand_machine, equal_machine
from .oracles import (
    ORACLE_IDS,
    LanguageOracle,
    finite_language,
    oracle,
    oracle_membership,
)
from .structural import l_f_machine, l_k_machine
from .twoway import expall_machine, pal2w_machine
from .universal import universal2_machine

RT, OW, TW = HeadMode.REAL_TIME, HeadMode.ONE_WAY, HeadMode.TWO_WAY


@dataclass(frozen=True)
class Construction:
    id: str
    machine: Machine
    advice: AdviceFunction
    oracle: LanguageOracle
    profile: tuple[HeadMode, tuple[HeadMode, ...]]
    length_class: str
    params: dict = field(default_factory=dict, compare=False)

    @property
    def alphabet(self) -> str:
        return self.oracle.alphabet

    def profile_matches(self) -> bool:
        m = self.machine
        return (m.input_mode, tuple(m.advice_modes)) == self.profile

    def describe(self) -> str:
        ins, advs = self.profile
        modes = ", ".join(a.value for a in advs)
        extra = "".join(f" {k}={v}" for k, v in sorted(self.params.items()) if k != "language")
        return (f"{self.id}{extra}: input {ins.value}, advice [{modes}], "
                f"{len(self.machine.states)} states, advice length {self.length_class}")


def _language_oracle(language, alphabet: str) -> LanguageOracle:
    if isinstance(language, LanguageOracle):
        return language
    if isinstance(language, str):
        return oracle(language, alphabet=alphabet)
    if callable(language):
        return LanguageOracle("custom", alphabet, language)
    return finite_language(language, alphabet)


def _make(id, machine, advice, orc, profile, params):
    c = Construction(id, machine, advice, orc, profile, advice.length_class, params)
    if not c.profile_matches():
        raise AssertionError(f"{id}: machine head modes differ from the declared profile")
    return c


def build_equal2() -> Construction:
    return _make("equal2", equal2_machine(), make_advice("equal2"), oracle("equal2"),
                 (RT, (OW,)), {})


def build_equal() -> Construction:
    return _make("equal", equal_machine(), make_advice("equal"), oracle("equal"),
                 (OW, (RT,)), {})


def build_l_f(f: str = "sqrt") -> Construction:
    return _make("l_f", l_f_machine(f), make_advice("l_f", f=f), oracle("l_f", f=f),
                 (OW, (OW,)), {"f": f})


def build_l_k(k: int = 1) -> Construction:
    k = int(k)
    return _make("l_k", l_k_machine(k), make_advice("l_k", k=k), oracle("l_k", k=k),
                 (OW, (OW,)), {"k": k})


def build_pal2w() -> Construction:
    return _make("pal2w", pal2w_machine(), make_advice("pal2w"), oracle("pal"),
                 (TW, (RT,)), {})


def build_universal2(language=frozenset(), alphabet: str = "ab") -> Construction:
    """``language`` is a set of words, a predicate, or a registered oracle id."""
    orc = _language_oracle(language, alphabet)
    return _make("universal2", universal2_machine(alphabet),
                 make_advice("universal2", language=orc, alphabet=alphabet), orc,
                 (OW, (OW, OW)), {"alphabet": alphabet, "language": orc.id})


def build_expall(language="pal", alphabet: str = "ab") -> Construction:
    orc = _language_oracle(language, alphabet)
    return _make("expall", expall_machine(alphabet),
                 make_advice("expall", oracle=orc, alphabet=alphabet), orc,
                 (TW, (RT,)), {"alphabet": alphabet, "language": orc.id})


def build_equal3_rand(s: int = 4) -> Construction:
    s = int(s)
    if s < 1:
        raise ValueError("s must be a positive integer")
    return _make("equal3-rand", equal3_rand_machine(s), make_advice("equal3-rand", s=s),
                 oracle("equal3"), (OW, (OW,)), {"s": s})


def build_equal3_pfat(s: int = 4) -> Construction:
    s = int(s)
    if s < 1:
        raise ValueError("s must be a positive integer")
    return _make("equal3-pfat", equal3_pfat_machine(s), make_advice("equal3-pfat", s=s),
                 oracle("equal3"), (OW, (OW,)), {"s": s})


BUILDERS: dict[str, Callable[..., Construction]] = {
    "equal2": build_equal2,
    "equal": build_equal,
    "l_f": build_l_f,
    "l_k": build_l_k,
    "pal2w": build_pal2w,
    "universal2": build_universal2,
    "expall": build_expall,
    "equal3-rand": build_equal3_rand,
    "equal3-pfat": build_equal3_pfat,
}

CONSTRUCTION_IDS = tuple(BUILDERS)


class UnknownConstruction(ValueError):
    pass


def build(name: str, **params) -> Construction:
    """Build a named construction. ``l_1`` .. ``l_9`` are shorthands for ``l_k``."""
    if name.startswith("l_") and name[2:].isdigit():
        params.setdefault("k", int(name[2:]))
        name = "l_k"
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise UnknownConstruction(
            f"unknown construction {name!r}; known: {', '.join(CONSTRUCTION_IDS)}") from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from None


__all__ = [
    "BUILDERS", "CONSTRUCTION_IDS", "Construction", "LanguageOracle", "ORACLE_IDS",
    "UnknownConstruction", "build", "finite_language", "oracle", "oracle_membership",
]
