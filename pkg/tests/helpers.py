"""Towers, code populations and vector pools shared across the test modules."""

import functools
import itertools
import random
from fractions import Fraction

from rankweight.fields import BaseFieldDescriptor, make_tower
from rankweight.linalg import enumerate_subspaces
from rankweight.ranksupport import LinearCode


@functools.lru_cache(maxsize=None)
def gf4():
    return make_tower(BaseFieldDescriptor(2), [1, 1, 1])


@functools.lru_cache(maxsize=None)
def gf8():
    return make_tower(BaseFieldDescriptor(2), [1, 1, 0, 1])


@functools.lru_cache(maxsize=None)
def gf9():
    return make_tower(BaseFieldDescriptor(3), [1, 0, 1])


@functools.lru_cache(maxsize=None)
def qtheta():
    return make_tower(BaseFieldDescriptor(0), [-2, 0, 0, 1], symbol="t")


def vec(tower, *entries):
    """Build an L-vector from ints/FieldElements; 'w' strings are not parsed here."""
    out = []
    for e in entries:
        out.append(tower.L.from_int(e) if isinstance(e, int) else e)
    return out


def all_codes(tower, n):
    """Every L-subspace of L^n as a LinearCode, all dimensions."""
    out = []
    for r in range(n + 1):
        for s in enumerate_subspaces(tower.L, n, r):
            out.append(LinearCode(tower, n, s))
    return out


def all_vectors(tower, n):
    elems = list(tower.L.elements())
    return [list(v) for v in itertools.product(elems, repeat=n)]


def random_rational_vector(rng, tower, n, height=5):
    out = []
    for _ in range(n):
        coords = [
            Fraction(rng.randint(-height, height), rng.randint(1, height))
            for _ in range(tower.degree)
        ]
        out.append(tower.element_from_coords(coords))
    return out


def random_q_codes(count, seed, max_n=3, max_dim=2, height=5):
    """Seeded random codes over Q(theta), theta^3 = 2, n <= max_n, dim <= max_dim."""
    t = qtheta()
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        dim = rng.randint(0, min(max_dim, n))
        gens = [random_rational_vector(rng, t, n, height) for _ in range(dim)]
        out.append(LinearCode.from_generators(t, n, gens))
    return out
