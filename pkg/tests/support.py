"""Reference simulators and machine generators shared by the tests.

The simulators here are deliberately naive: one step at a time, a plain step
counter instead of cycle detection, a full distribution per step. They share
no code with the engine beyond the data types.
"""

from __future__ import annotations

import random
from fractions import Fraction

from fatsim.core import LEND, REND, Alphabet, Choice, HeadMode, Machine, Move

RT, OW, TW = HeadMode.REAL_TIME, HeadMode.ONE_WAY, HeadMode.TWO_WAY
L, S, R = Move.LEFT, Move.STAY, Move.RIGHT


def tapes(x, advice):
    return LEND + x + REND, [a + REND for a in advice]


def bound(m, x, advice):
    b = len(m.states) * (len(x) + 2)
    for a in advice:
        b *= len(a) + 1
    return b


def naive_run(m, x, advice):
    """(verdict, steps, trace of configurations) with a step counter."""
    tin, advs = tapes(x, advice)
    q, ip, pos = m.start, 0, [0] * len(advs)
    trace = [(q, ip, tuple(pos))]
    limit = bound(m, x, advice)
    steps = 0
    while q not in (m.accept, m.reject):
        if steps > limit:
            return "CYCLE", steps, trace
        (c,) = m.transitions[(q, tin[ip], tuple(a[p] for a, p in zip(advs, pos)))]
        q = c.state
        ip += c.input_move
        pos = [p + d for p, d in zip(pos, c.advice_moves)]
        steps += 1
        trace.append((q, ip, tuple(pos)))
    return ("ACCEPT" if q == m.accept else "REJECT"), steps, trace


def naive_pfat(m, x, advice):
    """Exact (accept, reject, unresolved) by propagating the full distribution
    for as many steps as there are configurations."""
    tin, advs = tapes(x, advice)
    dist = {(m.start, 0, (0,) * len(advs)): Fraction(1)}
    acc = rej = Fraction(0)
    for _ in range(bound(m, x, advice)):
        nxt: dict = {}
        for (q, ip, pos), mass in dist.items():
            for c in m.transitions[(q, tin[ip], tuple(a[p] for a, p in zip(advs, pos)))]:
                conf = (c.state, ip + c.input_move,
                        tuple(p + d for p, d in zip(pos, c.advice_moves)))
                w = mass * c.weight
                if c.state == m.accept:
                    acc += w
                elif c.state == m.reject:
                    rej += w
                else:
                    nxt[conf] = nxt.get(conf, 0) + w
        dist = nxt
        if not dist:
            break
    return acc, rej, 1 - acc - rej


def legal_moves(mode, sym, advice):
    if mode is RT:
        return [S] if sym == REND else [R]
    out = [S]
    if sym != REND:
        out.append(R)
    if mode is TW and not advice and sym != LEND:
        out.append(L)
    return out


def random_machine(rng: random.Random, probabilistic=False, k=None, input_mode=None,
                   advice_modes=None, n_states=None) -> Machine:
    """A complete, valid machine with random transitions."""
    k = k or rng.choice([1, 1, 2])
    input_mode = input_mode or rng.choice([RT, OW, TW])
    advice_modes = advice_modes or tuple(rng.choice([RT, OW]) for _ in range(k))
    n_states = n_states or rng.randint(1, 4)
    work = [f"q{i}" for i in range(n_states)]
    states = work + ["acc", "rej"]
    sigma, gamma = "ab", "01"
    rows = {}
    for q in work:
        for x in (LEND,) + tuple(sigma) + (REND,):
            for adv in _advice_keys(gamma, k):
                def one(w):
                    im = rng.choice(legal_moves(input_mode, x, False))
                    ams = tuple(rng.choice(legal_moves(md, a, True))
                                for md, a in zip(advice_modes, adv))
                    nq = rng.choice(states + work)  # bias towards running on
                    return Choice(w, nq, im, ams)
                if probabilistic and rng.random() < 0.4:
                    parts = rng.randint(2, 3)
                    cuts = sorted(rng.sample(range(1, 12), parts - 1))
                    ws = [Fraction(b - a, 12) for a, b in zip([0] + cuts, cuts + [12])]
                    rows[(q, x, adv)] = tuple(one(w) for w in ws)
                else:
                    rows[(q, x, adv)] = (one(Fraction(1)),)
    return Machine(
        name="random", states=tuple(states), start="q0", accept="acc", reject="rej",
        input_alphabet=Alphabet(tuple(sigma), "input"),
        advice_alphabets=tuple(Alphabet(tuple(gamma), "advice") for _ in range(k)),
        input_mode=input_mode, advice_modes=tuple(advice_modes), transitions=rows,
        probabilistic=probabilistic,
    )


def _advice_keys(gamma, k):
    syms = tuple(gamma) + (REND,)
    if k == 1:
        return [(s,) for s in syms]
    return [(a, b) for a in syms for b in syms]


def random_word(rng, alphabet, n):
    return "".join(rng.choice(alphabet) for _ in range(n))


# hand-written machines ------------------------------------------------------

def _machine(rows, input_mode=OW, advice_modes=(OW,), probabilistic=False, states=None,
             accept="acc", reject="rej", start="q0", advice_alphabets=("01",)):
    if states is None:
        names = {start, accept, reject}
        for (q, _, _), cs in rows.items():
            names.add(q)
            names.update(c.state for c in cs)
        states = tuple(sorted(names))
    return Machine(
        name="fixture", states=states, start=start, accept=accept, reject=reject,
        input_alphabet=Alphabet(("a", "b"), "input"),
        advice_alphabets=tuple(Alphabet(tuple(a), "advice") for a in advice_alphabets),
        input_mode=input_mode, advice_modes=tuple(advice_modes), transitions=rows,
        probabilistic=probabilistic,
    )


def ch(state, im, *ams, w=1):
    return Choice(Fraction(w), state, im, tuple(ams))


def shuttle_machine() -> Machine:
    """Two-way input head bouncing between the endmarkers forever."""
    rows = {}
    for x in "ab":
        rows[("right", x, (REND,))] = (ch("right", R, S),)
        rows[("left", x, (REND,))] = (ch("left", L, S),)
    rows[("right", LEND, (REND,))] = (ch("right", R, S),)
    rows[("right", REND, (REND,))] = (ch("left", L, S),)
    rows[("left", LEND, (REND,))] = (ch("right", R, S),)
    rows[("left", REND, (REND,))] = (ch("left", L, S),)
    return _machine(rows, input_mode=TW, start="right", advice_alphabets=("",))


def broken_machines() -> dict[str, Machine]:
    """One machine per well-formedness rule, each breaking exactly that rule."""
    ok = {("q0", LEND, ("0",)): (ch("acc", R, S),)}
    return {
        "two-way advice forbidden":
            _machine({("q0", LEND, ("0",)): (ch("acc", R, L),)}),
        "weights sum ≠ 1":
            _machine({("q0", LEND, ("0",)): (ch("acc", R, S, w=Fraction(1, 2)),
                                             ch("rej", R, S, w=Fraction(1, 3)))},
                     probabilistic=True),
        "left move from left endmarker":
            _machine({("q0", LEND, ("0",)): (ch("acc", L, S),)}, input_mode=TW),
        "right move from right endmarker":
            _machine({("q0", REND, ("0",)): (ch("acc", R, S),)}),
        "one-way head moved left":
            _machine({("q0", "a", ("0",)): (ch("acc", L, S),)}),
        "real-time head must move right":
            _machine({("q0", "a", ("0",)): (ch("acc", S, S),)}, input_mode=RT),
        "real-time head must stay on right endmarker":
            _machine({("q0", REND, ("0",)): (ch("acc", L, S),)}, input_mode=RT),
        "halting state has outgoing transition":
            _machine({**ok, ("acc", "a", ("0",)): (ch("acc", R, S),)}),
        "deterministic key has several choices":
            _machine({("q0", LEND, ("0",)): (ch("acc", R, S, w=Fraction(1, 2)),
                                             ch("rej", R, S, w=Fraction(1, 2)))}),
        "non-positive weight":
            _machine({("q0", LEND, ("0",)): (ch("acc", R, S, w=Fraction(3, 2)),
                                             ch("rej", R, S, w=Fraction(-1, 2)))},
                     probabilistic=True),
    }
