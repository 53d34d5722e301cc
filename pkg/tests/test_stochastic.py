import random
from fractions import Fraction
from functools import lru_cache

import pytest

from fatsim.advice import make_advice
from fatsim.catalog import build
from fatsim.stochastic import (
    AcceptanceResult, RandomizedAdvice, acceptance, acceptance_probability_pfat,
    acceptance_probability_randomized_advice, check_error_bound, compare_constructions,
)
from support import naive_pfat, random_machine, random_word


@lru_cache(maxsize=None)
def built(name, s):
    return build(name, s=s)


def pfat(s, x):
    c = built("equal3-pfat", s)
    return acceptance_probability_pfat(c.machine, x, c.advice.tapes(len(x)))


def rand(s, x):
    c = built("equal3-rand", s)
    return acceptance_probability_randomized_advice(c.machine, x, c.advice.distribution(len(x)))


class TestPfatExamples:
    def test_member(self):
        assert pfat(4, "abc").accept == 1

    def test_single_root(self):
        assert pfat(4, "aab").accept == Fraction(1, 4)

    def test_length_not_divisible(self):
        r = pfat(4, "abca")
        assert r.accept == 0 and r.reject == 1


class TestRandomizedAdviceExamples:
    def test_member(self):
        assert rand(4, "abc").accept == 1

    def test_single_root(self):
        assert rand(4, "aab").accept == Fraction(1, 4)

    def test_double_root(self):
        assert rand(8, "bbb").accept == Fraction(1, 8)

    def test_accepts_advice_function(self):
        c = build("equal3-rand", s=4)
        assert acceptance_probability_randomized_advice(c.machine, "aab", c.advice).accept == Fraction(1, 4)


def _roots(x, s):
    k = len(x) // 3
    a, b, c = x.count("a") - k, x.count("b") - k, x.count("c") - k
    return sum(1 for i in range(1, s + 1) if c * i * i + b * i + a == 0)


@pytest.mark.parametrize("s", [2, 3, 4, 5])
def test_acceptance_is_root_count_over_s(s):
    from fatsim.enumeration import words_upto
    for x in words_upto("abc", 6):
        expected = Fraction(_roots(x, s), s) if len(x) % 3 == 0 else Fraction(0)
        assert pfat(s, x).accept == expected
        assert rand(s, x).accept == expected


def test_error_bound_report():
    r = check_error_bound("equal3-rand", 4, 6)
    assert r.ok and r.max_nonmember == Fraction(1, 2)
    assert "0 violations" in r.format()


def test_error_bound_vacuous_at_s2():
    r = check_error_bound("equal3-rand", 2, 3)
    assert r.ok and r.bound == 1


def test_error_bound_rejects_small_s():
    with pytest.raises(ValueError):
        check_error_bound("equal3-rand", 1, 3)


def test_constructions_agree():
    assert compare_constructions(3, 6) == []


def test_result_must_sum_to_one():
    with pytest.raises(ValueError):
        AcceptanceResult(Fraction(1, 2), Fraction(1, 3))


def test_format():
    assert AcceptanceResult(Fraction(1, 4), Fraction(3, 4)).format().splitlines()[0] == "accept = 1/4 (0.25)"


class TestRandomizedAdvice:
    def test_must_sum_to_one(self):
        with pytest.raises(ValueError):
            RandomizedAdvice((("a", Fraction(1, 2)),))

    def test_positive(self):
        with pytest.raises(ValueError):
            RandomizedAdvice((("a", Fraction(3, 2)), ("b", Fraction(-1, 2))))

    def test_uniform(self):
        ra = RandomizedAdvice.uniform(["a", "b", "c"])
        assert len(ra) == 3 and all(p == Fraction(1, 3) for _, p in ra)

    def test_generator_distribution(self):
        ra = make_advice("equal3-rand", s=4).eval(3)
        assert sum(p for _, p in ra) == 1


def test_mass_conserved_at_every_update():
    c = build("equal3-pfat", s=5)
    seen = []
    acceptance_probability_pfat(c.machine, "abcabc", c.advice.tapes(6),
                                observer=lambda *parts: seen.append(sum(parts)))
    assert seen and all(total == 1 for total in seen)


def test_pfat_matches_naive_propagation():
    rng = random.Random(3)
    for _ in range(150):
        m = random_machine(rng, probabilistic=True)
        x = random_word(rng, "ab", rng.randint(0, 3))
        adv = [random_word(rng, "01", rng.randint(0, 3)) for _ in m.advice_alphabets]
        got = acceptance_probability_pfat(m, x, adv)
        assert (got.accept, got.reject, got.unresolved) == naive_pfat(m, x, adv)


def test_acceptance_helper_dispatches():
    assert acceptance(build("equal3-rand", s=4), "aab").accept == Fraction(1, 4)
    assert acceptance(build("equal3-pfat", s=4), "aab").accept == Fraction(1, 4)
