import random

import pytest

from fatsim.catalog import CONSTRUCTION_IDS, build
from fatsim.core import validate_machine
from fatsim.engine import run
from fatsim.fatfile import FatParseError, dump_fat, load_fat, parse_fat, save_fat
from fatsim.stochastic import acceptance_probability_pfat
from support import broken_machines, random_machine, random_word

SAMPLE = """\
# comment
alphabet input: a b
alphabet advice[0]: 1 #
mode input: one-way
mode advice[0]: one-way
states: q0 q1 qacc qrej
start: q0
accept: qacc
reject: qrej
trans: q0 < 1 -> q1 R S            # deterministic
trans: q1 a # -> 1/2 qacc R S | 1/2 qrej S R   # probabilistic
"""


def test_parse_sample():
    m = parse_fat(SAMPLE)
    assert m.probabilistic
    assert len(m.transitions) == 2
    assert tuple(m.advice_alphabets[0]) == ("1", "#")
    assert sum(c.weight for c in m.transitions[("q1", "a", ("#",))]) == 1


@pytest.mark.parametrize("name", CONSTRUCTION_IDS)
def test_catalog_round_trip(name):
    c = build(name)
    text = dump_fat(c.machine)
    m = parse_fat(text)
    assert dump_fat(m) == text
    assert dict(m.transitions) == dict(c.machine.transitions)
    assert validate_machine(m) == validate_machine(c.machine)
    if not m.probabilistic and not c.advice.randomized:
        for x in ("", "a", "ab", "abc"[:len(c.alphabet)]):
            x = "".join(ch for ch in x if ch in c.alphabet)
            adv = c.advice.tapes(len(x))
            assert run(m, x, adv, trace=True) == run(c.machine, x, adv, trace=True)


def test_random_round_trip():
    rng = random.Random(5)
    for _ in range(50):
        m = random_machine(rng, probabilistic=rng.random() < 0.5)
        m2 = parse_fat(dump_fat(m))
        x = random_word(rng, "ab", 3)
        adv = [random_word(rng, "01", 2) for _ in m.advice_alphabets]
        if m.probabilistic:
            assert acceptance_probability_pfat(m2, x, adv) == acceptance_probability_pfat(m, x, adv)
        else:
            assert run(m2, x, adv, trace=True) == run(m, x, adv, trace=True)


def test_broken_machines_round_trip_with_same_violations():
    for m in broken_machines().values():
        assert validate_machine(parse_fat(dump_fat(m))).rules() == validate_machine(m).rules()


def test_file_io(tmp_path):
    p = tmp_path / "m.fat"
    save_fat(build("equal2").machine, p)
    assert dict(load_fat(p).transitions) == dict(build("equal2").machine.transitions)


@pytest.mark.parametrize("text,line", [
    ("alphabet input: a b\nmode input: sideways\n", 2),
    ("alphabet input: a b\nbogus line\n", 2),
    (SAMPLE.replace("-> q1 R S", "-> q1 R"), 10),
    (SAMPLE.replace("1/2 qacc", "x/2 qacc"), 11),
    (SAMPLE.replace("-> q1 R S", "-> q1 Q S"), 10),
    (SAMPLE.replace("q0 < 1 ->", "q0 < 1"), 10),
    (SAMPLE + "trans: q0 < 1 -> q1 R S\n", 12),
    (SAMPLE.replace("alphabet input: a b", "alphabet input: a <"), 2),
])
def test_errors_report_line(text, line):
    with pytest.raises(FatParseError) as err:
        parse_fat(text, source="t.fat")
    assert err.value.line == line
    assert f"t.fat:{line}:" in str(err.value)


def test_missing_header():
    with pytest.raises(FatParseError, match="missing 'start:'"):
        parse_fat(SAMPLE.replace("start: q0\n", ""))


def test_hash_is_a_symbol_mid_line():
    m = parse_fat(SAMPLE)
    assert ("q1", "a", ("#",)) in m.transitions
