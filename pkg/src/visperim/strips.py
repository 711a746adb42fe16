"""Layout constructions for strips of arbitrary height (width still <= 2).

Squares are partitioned into unit-height buckets, each bucket gets its
own near-optimal staircase, and the staircases are squeezed into
alternating left/right halves of the strip so neighbouring buckets
cannot trample each other.  For uniformly spaced inputs the same idea
collapses to a fixed zigzag pattern with a closed-form gap.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, replace

from .core import (
    DomainError,
    Instance,
    InputError,
    Layout,
    require_distinct_ys,
)
from .waterfill import (
    DEFAULT_DELTA,
    WaterFillSolution,
    build_staircase,
    water_fill,
)

#: Absolute tolerance when validating uniform vertical spacing.
UNIFORMITY_TOL = 1e-9


@dataclass(frozen=True)
class Bucket:
    """Squares whose y-coordinate rounds to ``index`` (ties round up)."""

    index: int
    members: tuple[int, ...]
    solution: WaterFillSolution | None = None
    gap: float | None = None


@dataclass(frozen=True)
class BucketPlan:
    buckets: tuple[Bucket, ...]
    delta_min: float | None = None

    def nonempty(self) -> tuple[Bucket, ...]:
        return tuple(b for b in self.buckets if b.members)


def bucket_index(y: float) -> int:
    """The integer that ``y`` rounds to, rounding up on a tie."""
    return math.floor(y + 0.5)


def bucketize(instance: Instance) -> BucketPlan:
    """Partition squares into buckets 1..ceil(h); empty buckets are kept."""
    top = math.ceil(instance.height)
    members: dict[int, list[int]] = {i: [] for i in range(1, top + 1)}
    for j, y in enumerate(instance.ys):
        members[bucket_index(y)].append(j)
    buckets = tuple(
        Bucket(index=i, members=tuple(members[i])) for i in range(1, top + 1)
    )
    return BucketPlan(buckets=buckets)


def _bucket_facing(index: int) -> str:
    # Alternation is a property of the vertical position, so parity is
    # taken from the bucket number even when buckets in between are empty.
    return "up-right" if index % 2 == 0 else "up-left"


def _solve_bucket(
    instance: Instance, bucket: Bucket, delta_stair: float
) -> tuple[Bucket, tuple[float, ...]]:
    """Staircase for one bucket; returns the solved bucket and its xs."""
    anchor_left = _bucket_facing(bucket.index) == "up-right"
    if len(bucket.members) == 1:
        x = 0.5 if anchor_left else instance.width - 0.5
        return replace(bucket, solution=None, gap=2.0), (x,)
    ys = tuple(instance.ys[j] for j in bucket.members)
    shift = float(bucket.index - 1)
    local = Instance(instance.width, 2.0, tuple(y - shift for y in ys))
    solution = water_fill(local.dys, local.budget)
    # A bucket whose optimum is below delta_stair still needs a proper
    # staircase; halve the sacrifice instead of failing.
    delta = min(delta_stair, 0.5 * solution.g_star)
    layout = build_staircase(local, solution, delta=delta, facing=_bucket_facing(bucket.index))
    steps = [abs(b - a) for a, b in zip(layout.xs, layout.xs[1:])]
    achieved = min(dy + dx for dy, dx in zip(local.dys, steps))
    return replace(bucket, solution=solution, gap=achieved), layout.xs


def _solve_all(
    instance: Instance, delta_stair: float
) -> tuple[BucketPlan, dict[int, tuple[float, ...]]]:
    require_distinct_ys(instance)
    if not delta_stair > 0.0:
        raise InputError(f"delta_stair must be positive, got {delta_stair}")
    solved = []
    xs_by_bucket: dict[int, tuple[float, ...]] = {}
    for bucket in bucketize(instance).buckets:
        if not bucket.members:
            solved.append(bucket)
            continue
        solved_bucket, bucket_xs = _solve_bucket(instance, bucket, delta_stair)
        solved.append(solved_bucket)
        xs_by_bucket[bucket.index] = bucket_xs
    gaps = [b.gap for b in solved if b.gap is not None]
    plan = BucketPlan(buckets=tuple(solved), delta_min=min(gaps) if gaps else None)
    return plan, xs_by_bucket


def plan_buckets(instance: Instance, delta_stair: float = DEFAULT_DELTA) -> BucketPlan:
    """Bucketize and solve each nonempty bucket's staircase."""
    return _solve_all(instance, delta_stair)[0]


def squeeze_with_plan(
    instance: Instance, delta_stair: float = DEFAULT_DELTA
) -> tuple[Layout, BucketPlan]:
    """Bucketed squeezing, returning the layout and the solved plan.

    Even-numbered buckets face up-right and anchor at the left wall, odd
    ones mirror at the right wall.  With ``delta`` the smallest bucket
    gap, every bucket's x-offsets shrink by ``s = ((w-1)-delta)/(2(w-1))``
    so the two groups keep a horizontal separation of ``delta``; the
    resulting layout has gap at least ``delta*(1-delta)/2 - delta_stair``
    (exact for w = 2, scaled for narrower strips).
    """
    plan, xs_by_bucket = _solve_all(instance, delta_stair)
    delta = plan.delta_min
    assert delta is not None
    budget = instance.budget
    if delta >= budget:
        # Buckets are so sparse that vertical separation alone carries the
        # gap; cap the separation target at the full budget, which parks
        # each bucket at its wall.
        warnings.warn(
            f"minimum bucket gap {delta:.6g} is at or above the horizontal "
            f"budget {budget:.6g}; capping the separation at the budget",
            stacklevel=2,
        )
        delta = budget - 1e-9
    scale = (budget - delta) / (2.0 * budget)
    xs = [0.0] * instance.n
    zorder: list[int] = []
    for bucket in plan.nonempty():
        anchor = 0.5 if _bucket_facing(bucket.index) == "up-right" else instance.width - 0.5
        for j, x in zip(bucket.members, xs_by_bucket[bucket.index]):
            xs[j] = anchor + scale * (x - anchor)
        zorder.extend(bucket.members)
    return Layout(tuple(xs), tuple(zorder)), plan


def squeeze(instance: Instance, delta_stair: float = DEFAULT_DELTA) -> Layout:
    """Bucketed squeezing approximation for tall strips."""
    layout, _ = squeeze_with_plan(instance, delta_stair)
    return layout


def zigzag(instance: Instance) -> Layout:
    """Fixed cyclic layout for uniformly spaced squares.

    Bundles of ``floor(k)`` squares cycle through ``2*floor(k)`` evenly
    spread x-positions, ascending across one bundle and descending
    across the next; a trailing partial bundle continues the cycle.  For
    integer ``k`` the measured gap is ``1/k + 1/(2k-1)`` (times ``w-1``
    on the x term for strips narrower than 2).
    """
    n = instance.n
    if n == 1:
        return Layout((instance.width / 2.0,), (0,))
    require_distinct_ys(instance)
    dys = instance.dys
    spacing = (instance.ys[-1] - instance.ys[0]) / (n - 1)
    for i, dy in enumerate(dys):
        if abs(dy - spacing) > UNIFORMITY_TOL:
            raise DomainError(
                f"zigzag needs uniform spacing; gap {i} is {dy:.12g} "
                f"but the mean spacing is {spacing:.12g}"
            )
    k = 1.0 / spacing
    m = math.floor(k + UNIFORMITY_TOL)
    if m < 2:
        raise DomainError(f"zigzag needs spacing at most 1/2 (k >= 2), got k = {k:.6g}")
    values = [
        0.5 + (instance.width - 1.0) * i / (2 * m - 1) for i in range(2 * m)
    ]
    xs = []
    for j in range(n):
        bundle, pos = divmod(j, m)
        if bundle % 2 == 0:
            xs.append(values[pos])
        else:
            xs.append(values[2 * m - 1 - pos])
    return Layout(tuple(xs), tuple(range(n)))


def jitter(instance: Instance, seed: int) -> Layout:
    """Baseline: independent uniform x-coordinates, stacked in y-order."""
    rng = random.Random(seed)
    lo, hi = 0.5, instance.width - 0.5
    xs = tuple(rng.uniform(lo, hi) for _ in range(instance.n))
    return Layout(xs, tuple(range(instance.n)))
