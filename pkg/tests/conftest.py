import random
from itertools import product

import pytest
from hypothesis import strategies as st

from snzlab.clopen import ClopenSet, FinPermutation


def random_clopen(rng: random.Random, coords=range(10), max_support=6) -> ClopenSet:
    k = rng.randint(0, max_support)
    sup = rng.sample(list(coords), k)
    pats = [p for p in product((0, 1), repeat=k) if rng.random() < 0.5]
    return ClopenSet(sup, pats)


def random_perm(rng: random.Random, coords=range(12)) -> FinPermutation:
    pts = rng.sample(list(coords), rng.randint(0, len(coords)))
    shuffled = pts[:]
    rng.shuffle(shuffled)
    return FinPermutation(dict(zip(pts, shuffled)))


@st.composite
def clopen_sets(draw, coords=10, max_support=6):
    sup = draw(st.lists(st.integers(0, coords - 1), max_size=max_support, unique=True))
    allp = list(product((0, 1), repeat=len(sup)))
    keep = draw(st.lists(st.booleans(), min_size=len(allp), max_size=len(allp)))
    return ClopenSet(sup, [p for p, k in zip(allp, keep) if k])


@pytest.fixture
def rng():
    return random.Random(20261018)
