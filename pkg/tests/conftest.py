"""Shared test helpers: seeded random modules and hypothesis strategies."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from phv import Module, SimpleFactor, Weight, module

# (family, min rank, max rank) kept small so dimensions stay tame
CLASSICAL = (("A", 1, 5), ("B", 2, 4), ("C", 1, 4), ("D", 3, 5))
EXCEPTIONAL = (("G2", 2), ("F4", 4), ("E6", 6))


def random_weight(rng: random.Random, rank: int, zero_odds: float = 0.45) -> Weight:
    """A sparse weight with small coefficients; often zero."""
    if rng.random() < zero_odds:
        return Weight.zero
    count = 2 if rank >= 2 and rng.random() < 0.2 else 1
    idxs = sorted(rng.sample(range(rank), count))
    return Weight(tuple((i, rng.choice((1, 1, 1, 2, 3))) for i in idxs))


def random_factor(rng: random.Random, exceptional_odds: float = 0.1) -> SimpleFactor:
    if rng.random() < exceptional_odds:
        family, rank = rng.choice(EXCEPTIONAL)
        return SimpleFactor(family, rank)
    family, lo, hi = rng.choice(CLASSICAL)
    return SimpleFactor(family, rng.randint(lo, hi))


def random_module(
    rng: random.Random,
    max_factors: int = 3,
    max_summands: int = 3,
    exceptional_odds: float = 0.1,
) -> Module:
    """A small random module; every summand acts somewhere."""
    torus_dim = rng.randint(1, 3)
    factors = [random_factor(rng, exceptional_odds) for _ in range(rng.randint(0, max_factors))]
    summands = []
    for _ in range(rng.randint(1, max_summands)):
        while True:
            weights = tuple(random_weight(rng, f.rank) for f in factors)
            slots = frozenset(
                slot for slot in range(torus_dim) if rng.random() < 0.4
            )
            if slots or any(not w.is_zero for w in weights):
                break
        summands.append((weights, slots))
    return module(torus_dim, factors, summands)


@st.composite
def modules(draw, max_factors: int = 3, max_summands: int = 3) -> Module:
    """Hypothesis strategy mirroring :func:`random_module`."""
    seed = draw(st.integers(min_value=0, max_value=2**48))
    return random_module(random.Random(seed), max_factors, max_summands)
