import random

import pytest

from visperim import Instance, Layout


def make_random_instance(
    rng: random.Random,
    n: int | None = None,
    width: float | None = None,
    height: float | None = None,
    min_dy: float = 1e-4,
) -> Instance:
    """Random instance with distinct ys, biased toward crowded strips."""
    if n is None:
        n = rng.randint(2, 8)
    if width is None:
        width = rng.choice([2.0, 1.8, 1.5, 1.2])
    if height is None:
        height = rng.uniform(1.1, 2.0)
    while True:
        ys = sorted(rng.uniform(0.5, height - 0.5) for _ in range(n))
        if n == 1 or min(b - a for a, b in zip(ys, ys[1:])) >= min_dy:
            return Instance(width, height, tuple(ys))


def make_random_layout(rng: random.Random, instance: Instance) -> Layout:
    xs = tuple(
        rng.uniform(0.5, instance.width - 0.5) for _ in range(instance.n)
    )
    zorder = list(range(instance.n))
    rng.shuffle(zorder)
    return Layout(xs, tuple(zorder))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
