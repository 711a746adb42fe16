"""Staircase optimization for strips that a single point stabs (w, h <= 2).

The largest achievable layout gap is the optimum of a small linear
program: choose nonnegative horizontal gaps ``dx_i`` with
``sum(dx_i) <= w - 1`` maximizing ``min_i (dx_i + dy_i)``.  Pouring the
horizontal budget like water over rectangles of height ``dy_i`` solves
it exactly in O(n log n): the settled water level is the optimum, and
each ``dx_i`` is the depth of water above rectangle ``i``.

The optimum itself is a supremum that proper staircases only approach;
:func:`build_staircase` trades an arbitrarily small ``delta`` of gap for
strictly increasing x-coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

from .core import (
    DomainError,
    InputError,
    Instance,
    Layout,
    require_distinct_ys,
)

#: Default gap sacrifice used to make staircases proper; far below visual
#: resolution, far above double-precision noise.
DEFAULT_DELTA = 1e-6

Facing = Literal["up-right", "up-left", "down-right", "down-left"]

FACINGS: tuple[Facing, ...] = ("up-right", "up-left", "down-right", "down-left")


@dataclass(frozen=True)
class WaterFillSolution:
    """Optimal level ``g_star`` and the horizontal gaps that attain it."""

    g_star: float
    dxs: tuple[float, ...]

    @property
    def spent(self) -> float:
        return math.fsum(self.dxs)


def water_fill(dys: Sequence[float], budget: float) -> WaterFillSolution:
    """Maximize ``min_i (dx_i + dy_i)`` subject to ``sum(dx_i) <= budget``.

    Raises the water level rectangle-top by rectangle-top over the sorted
    ``dy`` heights, O(1) per step after sorting.  The full budget is
    always spent (spreading any surplus uniformly cannot lower the
    minimum and keeps staircases visually spread).
    """
    if len(dys) < 1:
        raise InputError("need at least one vertical gap (two squares)")
    if budget < 0.0:
        raise InputError(f"budget must be nonnegative, got {budget}")
    heights = [float(d) for d in dys]
    for i, d in enumerate(heights):
        if d < 0.0:
            raise InputError(f"vertical gap {i} is negative: {d}")
    m = len(heights)
    ordered = sorted(heights)
    level = ordered[0]
    remaining = budget
    submerged = m
    for j in range(1, m):
        need = j * (ordered[j] - level)
        if need <= remaining:
            remaining -= need
            level = ordered[j]
        else:
            submerged = j
            break
    level += remaining / submerged
    dxs = tuple(max(0.0, level - d) for d in heights)
    return WaterFillSolution(g_star=level, dxs=dxs)


def _staircase_xs(
    instance: Instance, dxs: Sequence[float], facing: Facing
) -> tuple[float, ...]:
    """Anchor at one strip wall and accumulate the x-gaps rightwards/leftwards."""
    if facing in ("up-right", "down-right"):
        x = 0.5
        xs = [x]
        for d in dxs:
            x += d
            xs.append(x)
    else:
        x = instance.width - 0.5
        xs = [x]
        for d in dxs:
            x -= d
            xs.append(x)
    hi = instance.width - 0.5
    return tuple(min(hi, max(0.5, v)) for v in xs)


def build_staircase(
    instance: Instance,
    solution: WaterFillSolution,
    delta: float = DEFAULT_DELTA,
    facing: Facing = "up-right",
) -> Layout:
    """Proper staircase whose gap is at least ``solution.g_star - delta``.

    The water-fill gaps may be zero; mixing them with the uniform split
    ``budget/(n-1)`` by a factor ``delta / (g_star + budget)`` makes every
    x-gap strictly positive while costing at most ``delta`` of gap and
    never exceeding the budget.
    """
    if facing not in FACINGS:
        raise InputError(f"facing must be one of {FACINGS}, got {facing!r}")
    n = instance.n
    if n == 1:
        return Layout((instance.width / 2.0,), (0,))
    require_distinct_ys(instance)
    if len(solution.dxs) != n - 1:
        raise InputError(
            f"solution has {len(solution.dxs)} gaps, instance needs {n - 1}"
        )
    if not delta > 0.0:
        raise InputError(f"delta must be positive, got {delta}")
    if delta >= solution.g_star:
        raise InputError(
            f"delta {delta} must be below the achievable gap {solution.g_star}"
        )
    budget = instance.budget
    blend = delta / (solution.g_star + budget)
    uniform = budget / (n - 1)
    dxs = [(1.0 - blend) * d + blend * uniform for d in solution.dxs]
    xs = _staircase_xs(instance, dxs, facing)
    if facing in ("up-right", "up-left"):
        zorder = tuple(range(n))
    else:
        zorder = tuple(range(n - 1, -1, -1))
    return Layout(xs, zorder)


def optimize_point_stabbed(
    instance: Instance,
    delta: float = DEFAULT_DELTA,
    facing: Facing = "up-right",
) -> tuple[Layout, float]:
    """Water-fill the vertical gaps and build the staircase that attains them.

    Returns the layout together with ``g_star``, the supremum gap over
    *all* layouts of the instance (for w, h <= 2).  The layout's measured
    gap lies in ``[g_star - delta, g_star]``.
    """
    if instance.height > 2.0:
        raise DomainError(
            "point-stabbed optimization needs strip height <= 2; "
            "use the bucketed squeeze for taller strips"
        )
    if instance.n == 1:
        return Layout((instance.width / 2.0,), (0,)), 2.0
    require_distinct_ys(instance)
    solution = water_fill(instance.dys, instance.budget)
    layout = build_staircase(instance, solution, delta=delta, facing=facing)
    return layout, solution.g_star
