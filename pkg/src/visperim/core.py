"""Domain types and exact visible-perimeter evaluation.

A problem instance is a strip of width ``w`` (1 < w <= 2) and height
``h`` (h > 1) together with fixed, ascending y-coordinates for the
centroids of ``n`` closed unit squares.  A layout assigns an
x-coordinate to every square plus a stacking order; squares drawn later
sit in front.  A boundary point of a square is visible unless some
square in front of it contains the point (containment is closed, so a
shared edge counts as covered for the square behind).

The *gap* of a square is its visible perimeter minus 2; the gap of a
layout is the minimum over its squares.  Everything in this module is a
pure function of immutable values and safe to call concurrently.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Sequence


#: Slack applied to coordinate-bound checks; inputs are doubles that may
#: have passed through decimal serialization.
BOUND_TOL = 1e-9

#: A side counts as fully covered when its visible length is below this.
FULL_COVER_TOL = 1e-9


class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class DomainError(ValueError):
    """Valid input outside the domain of the requested method (CLI exit code 3)."""


class DistinctnessError(InputError):
    """Duplicate y-coordinates handed to a guarantee-bearing optimizer."""


@dataclass(frozen=True)
class Instance:
    """A strip plus the fixed y-coordinates of the square centroids.

    ``ys`` must be ascending.  Duplicate y-values are tolerated here
    because evaluation is pure geometry; the guarantee-bearing
    optimizers reject them (see :func:`require_distinct_ys`).
    """

    width: float
    height: float
    ys: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ys", tuple(float(y) for y in self.ys))
        if not (1.0 < self.width <= 2.0):
            raise InputError(f"strip width must be in (1, 2], got {self.width}")
        if not self.height > 1.0:
            raise InputError(f"strip height must exceed 1, got {self.height}")
        if not self.ys:
            raise InputError("instance needs at least one square")
        for a, b in zip(self.ys, self.ys[1:]):
            if b < a:
                raise InputError("ys must be ascending")
        if self.ys[0] < 0.5 - BOUND_TOL or self.ys[-1] > self.height - 0.5 + BOUND_TOL:
            raise InputError(
                f"ys must lie in [0.5, {self.height - 0.5}] so squares fit the strip"
            )

    @property
    def n(self) -> int:
        return len(self.ys)

    @property
    def dys(self) -> tuple[float, ...]:
        """Vertical gaps between consecutive centroids."""
        return tuple(b - a for a, b in zip(self.ys, self.ys[1:]))

    @property
    def budget(self) -> float:
        """Total horizontal slack ``w - 1`` available to spread squares."""
        return self.width - 1.0

    @property
    def k(self) -> float:
        """Reciprocal of the average vertical spacing, ``(n-1)/(h-1)``."""
        if self.n < 2:
            raise DomainError("k is undefined for a single square")
        return (self.n - 1) / (self.height - 1.0)


def uniform_instance(n: int, width: float = 2.0, height: float = 2.0) -> Instance:
    """Evenly spaced instance spanning the full strip height."""
    if n < 1:
        raise InputError("n must be positive")
    if n == 1:
        return Instance(width, height, (0.5,))
    ys = tuple(0.5 + (height - 1.0) * i / (n - 1) for i in range(n))
    return Instance(width, height, ys)


def require_distinct_ys(instance: Instance, tol: float = 0.0) -> None:
    """Raise if any two y-coordinates coincide (guarantees need distinctness)."""
    for i, (a, b) in enumerate(zip(instance.ys, instance.ys[1:])):
        if b - a <= tol:
            raise DistinctnessError(
                f"duplicate y-coordinates at indices {i} and {i + 1}; "
                "perturb the input before optimizing"
            )


@dataclass(frozen=True)
class Layout:
    """x-coordinates plus a stacking order (``zorder`` is back-to-front)."""

    xs: tuple[float, ...]
    zorder: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "xs", tuple(float(x) for x in self.xs))
        object.__setattr__(self, "zorder", tuple(int(i) for i in self.zorder))
        if len(self.xs) != len(self.zorder):
            raise InputError("xs and zorder must have the same length")
        if sorted(self.zorder) != list(range(len(self.xs))):
            raise InputError("zorder must be a permutation of the square indices")

    @classmethod
    def stacked_by_y(cls, xs: Sequence[float]) -> "Layout":
        """Layout whose stacking order follows the y-order."""
        return cls(tuple(xs), tuple(range(len(xs))))


@dataclass(frozen=True)
class SquareVisibility:
    """Visible length of each side of one square (each in [0, 1])."""

    left: float
    right: float
    top: float
    bottom: float

    @property
    def perimeter(self) -> float:
        return self.left + self.right + self.top + self.bottom


@dataclass(frozen=True)
class VisibilityReport:
    per_square: tuple[SquareVisibility, ...]
    gaps: tuple[float, ...]
    min_gap: float


@dataclass(frozen=True)
class StickoutProfile:
    """How far each non-top square pokes out of the box of squares in front.

    Entry ``i`` refers to the square at stacking position ``i`` (that is,
    ``layout.zorder[i]``); the top square has no entry.
    """

    dx: tuple[float, ...]
    dy: tuple[float, ...]

    def total(self) -> float:
        return math.fsum(self.dx) + math.fsum(self.dy)


@dataclass(frozen=True)
class BadSquareFlags:
    """Corner-coverage classification of one square.

    ``bad``: at least two corners lie inside squares in front.
    ``standard_bad``: bad, and one vertical side is fully covered.
    """

    bad: bool
    standard_bad: bool


def _check_layout(instance: Instance, layout: Layout) -> None:
    if len(layout.xs) != instance.n:
        raise InputError(
            f"layout has {len(layout.xs)} squares but instance has {instance.n}"
        )
    lo = 0.5 - BOUND_TOL
    hi = instance.width - 0.5 + BOUND_TOL
    for i, x in enumerate(layout.xs):
        if not (lo <= x <= hi):
            raise InputError(
                f"x[{i}] = {x} outside [0.5, {instance.width - 0.5}]"
            )


def _union_length(intervals: list[tuple[float, float]]) -> float:
    """Total measure of a union of closed intervals (sort and sweep)."""
    if not intervals:
        return 0.0
    intervals.sort()
    total = 0.0
    cur_lo, cur_hi = intervals[0]
    for lo, hi in intervals[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    total += cur_hi - cur_lo
    return total


def _side_visibility(
    x: float, y: float, fronts: list[tuple[float, float]]
) -> SquareVisibility:
    """Visible side lengths of the unit square at (x, y) under ``fronts``.

    Each front square cuts a closed sub-interval out of any side whose
    supporting line it reaches; the visible length is 1 minus the measure
    of the union of the cuts.
    """
    left: list[tuple[float, float]] = []
    right: list[tuple[float, float]] = []
    top: list[tuple[float, float]] = []
    bottom: list[tuple[float, float]] = []
    for fx, fy in fronts:
        ddx = fx - x
        ddy = fy - y
        if ddx > 1.0 or ddx < -1.0 or ddy > 1.0 or ddy < -1.0:
            continue
        # Overlap of the front square with the side's own span.
        y_lo = max(-0.5, ddy - 0.5)
        y_hi = min(0.5, ddy + 0.5)
        x_lo = max(-0.5, ddx - 0.5)
        x_hi = min(0.5, ddx + 0.5)
        if y_hi > y_lo:
            # Vertical sides: the front must straddle the side's line.
            if -1.0 <= ddx <= 0.0:
                left.append((y_lo, y_hi))
            if 0.0 <= ddx <= 1.0:
                right.append((y_lo, y_hi))
        if x_hi > x_lo:
            if -1.0 <= ddy <= 0.0:
                bottom.append((x_lo, x_hi))
            if 0.0 <= ddy <= 1.0:
                top.append((x_lo, x_hi))

    def vis(cuts: list[tuple[float, float]]) -> float:
        v = 1.0 - _union_length(cuts)
        return 0.0 if v < 0.0 else (1.0 if v > 1.0 else v)

    return SquareVisibility(vis(left), vis(right), vis(top), vis(bottom))


def _front_candidates(instance: Instance, layout: Layout) -> list[list[tuple[float, float]]]:
    """Per square, the (x, y) of in-front squares close enough to touch it.

    Uses a y-sorted index so distant squares are skipped; only squares
    within vertical distance 1 can cover anything.
    """
    n = instance.n
    zpos = [0] * n
    for pos, idx in enumerate(layout.zorder):
        zpos[idx] = pos
    order_by_y = sorted(range(n), key=lambda i: instance.ys[i])
    ys_sorted = [instance.ys[i] for i in order_by_y]
    out: list[list[tuple[float, float]]] = [[] for _ in range(n)]
    for i in range(n):
        y = instance.ys[i]
        x = layout.xs[i]
        lo = bisect_left(ys_sorted, y - 1.0)
        hi = bisect_right(ys_sorted, y + 1.0)
        fronts = []
        for j_sorted in range(lo, hi):
            j = order_by_y[j_sorted]
            if j == i or zpos[j] <= zpos[i]:
                continue
            if abs(layout.xs[j] - x) > 1.0:
                continue
            fronts.append((layout.xs[j], instance.ys[j]))
        out[i] = fronts
    return out


def evaluate(instance: Instance, layout: Layout) -> VisibilityReport:
    """Exact per-square visible perimeter of ``layout``.

    For each square and each of its four sides, the covered portion is
    the measure of the union of intervals cut on that side by the closed
    unit squares strictly in front of it.  Squares behind never cover.
    """
    _check_layout(instance, layout)
    candidates = _front_candidates(instance, layout)
    per_square = tuple(
        _side_visibility(layout.xs[i], instance.ys[i], candidates[i])
        for i in range(instance.n)
    )
    gaps = tuple(sv.perimeter - 2.0 for sv in per_square)
    return VisibilityReport(per_square=per_square, gaps=gaps, min_gap=min(gaps))


def stickout_profile(instance: Instance, layout: Layout) -> StickoutProfile:
    """Horizontal/vertical stick-out of each square from the squares in front.

    Walking the stacking order back to front, entry ``i`` measures how
    much of square ``zorder[i]``'s unit extent lies outside the bounding
    box of all squares in front of it.
    """
    _check_layout(instance, layout)
    n = instance.n
    if n < 2:
        return StickoutProfile((), ())
    dx = [0.0] * (n - 1)
    dy = [0.0] * (n - 1)
    # Accumulate the front bounding box from the top square downwards.
    bx0 = bx1 = by0 = by1 = 0.0
    for pos in range(n - 1, -1, -1):
        idx = layout.zorder[pos]
        x, y = layout.xs[idx], instance.ys[idx]
        if pos < n - 1:
            x_overlap = max(0.0, min(x + 0.5, bx1) - max(x - 0.5, bx0))
            y_overlap = max(0.0, min(y + 0.5, by1) - max(y - 0.5, by0))
            dx[pos] = 1.0 - x_overlap
            dy[pos] = 1.0 - y_overlap
            bx0, bx1 = min(bx0, x - 0.5), max(bx1, x + 0.5)
            by0, by1 = min(by0, y - 0.5), max(by1, y + 0.5)
        else:
            bx0, bx1 = x - 0.5, x + 0.5
            by0, by1 = y - 0.5, y + 0.5
    return StickoutProfile(tuple(dx), tuple(dy))


def classify_bad_squares(
    instance: Instance, layout: Layout
) -> tuple[BadSquareFlags, ...]:
    """Flag squares with >= 2 corners covered by squares in front.

    A corner is covered when any in-front square contains it (closed
    containment).  A bad square is *standard bad* when additionally one
    of its vertical sides is fully covered.
    """
    _check_layout(instance, layout)
    candidates = _front_candidates(instance, layout)
    flags = []
    for i in range(instance.n):
        x, y = layout.xs[i], instance.ys[i]
        fronts = candidates[i]
        covered = 0
        for cx, cy in ((-0.5, -0.5), (-0.5, 0.5), (0.5, -0.5), (0.5, 0.5)):
            px, py = x + cx, y + cy
            if any(
                fx - 0.5 <= px <= fx + 0.5 and fy - 0.5 <= py <= fy + 0.5
                for fx, fy in fronts
            ):
                covered += 1
        bad = covered >= 2
        standard = False
        if bad:
            sv = _side_visibility(x, y, fronts)
            standard = sv.left <= FULL_COVER_TOL or sv.right <= FULL_COVER_TOL
        flags.append(BadSquareFlags(bad=bad, standard_bad=standard))
    return tuple(flags)
