import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from trichor.geometry import augment, gen_convex, gen_convex_arc_in_triangle, gen_random

# Sizes of the random audit corpus: 50 sets with n <= 8.
CORPUS_SIZES = [3] * 8 + [4] * 10 + [5] * 10 + [6] * 10 + [7] * 8 + [8] * 4
CORPUS_SEEDS = list(range(100, 100 + len(CORPUS_SIZES)))

# The ten instances used for the oracle bijection checks (all n <= 7).
BIJECTION_INSTANCES = [
    (3, 301), (3, 302), (4, 303), (4, 304), (5, 305),
    (5, 306), (5, 307), (6, 308), (6, 309), (7, 310),
]


def random_corpus():
    return [
        (f"random-n{n}-s{seed}", augment(gen_random(n, seed)))
        for n, seed in zip(CORPUS_SIZES, CORPUS_SEEDS)
    ]


def full_corpus():
    instances = [(f"convex-n{n}", augment(gen_convex(n))) for n in range(3, 9)]
    instances += [(f"arc-n{n}", gen_convex_arc_in_triangle(n)) for n in range(1, 7)]
    instances += random_corpus()
    return instances


@pytest.fixture(scope="session")
def audited_corpus():
    """Audit every corpus instance once; several criteria share this."""
    from trichor.charging import audit

    return [(name, P, audit(P)) for name, P in full_corpus()]
