"""Shared generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from wblowup import WeightVector
from wblowup.exact_lattice import gcd_all


def coprime_sorted_tuples(n: int, max_entry: int, min_entry: int = 1):
    """All sorted coprime n-tuples with entries in [min_entry, max_entry]."""

    def rec(prefix):
        if len(prefix) == n:
            if gcd_all(prefix) == 1:
                yield prefix
            return
        lo = prefix[-1] if prefix else min_entry
        for v in range(lo, max_entry + 1):
            yield from rec(prefix + (v,))

    yield from rec(())


def random_weight_vector(rng: random.Random, n: int, max_entry: int) -> WeightVector:
    while True:
        entries = tuple(sorted(rng.randint(1, max_entry) for _ in range(n)))
        if gcd_all(entries) == 1:
            return WeightVector(entries)


def random_fraction(rng: random.Random, max_num: int, max_den: int, nonneg: bool = True) -> Fraction:
    num = rng.randint(0 if nonneg else -max_num, max_num)
    den = rng.randint(1, max_den)
    return Fraction(num, den)
