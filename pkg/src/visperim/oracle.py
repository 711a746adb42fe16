"""Independent verification tools.

Three cross-checks for the analytic machinery, deliberately built on
different principles than the code they check:

* :func:`lp_reference` solves the staircase program by bisection on the
  level instead of the sorted sweep.
* :func:`grid_search` exhausts stacking orders and a discretized set of
  x-positions, which lower-bounds the supremum gap and stands in for an
  exact solver on small instances.
* :func:`sample_visible_perimeter` estimates visible perimeter by point
  sampling, independent of the interval arithmetic in the evaluator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .core import Instance, InputError, Layout, evaluate, _front_candidates

Family = Literal["any", "stack-by-y", "stack-by-inverse-y", "staircase"]

FAMILIES: tuple[Family, ...] = ("any", "stack-by-y", "stack-by-inverse-y", "staircase")

DEFAULT_MAX_N = 8


def lp_reference(dys: Sequence[float], budget: float) -> float:
    """Bisection solver for the water-fill level, used to check it.

    Feasibility of a level ``g`` is ``sum(max(0, g - dy_i)) <= budget``;
    80 halvings of the bracket pin the optimum far below 1e-12.
    """
    if len(dys) < 1:
        raise InputError("need at least one vertical gap (two squares)")
    if budget < 0.0:
        raise InputError(f"budget must be nonnegative, got {budget}")
    d = np.asarray(dys, dtype=float)
    if np.any(d < 0.0):
        raise InputError("vertical gaps must be nonnegative")
    lo = float(d.min())
    hi = lo + budget + float(d.max())
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if float(np.maximum(mid - d, 0.0).sum()) <= budget:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class GridSearchResult:
    """Best layout found over stacking orders x grid positions.

    ``orders_examined`` counts distinct stacking orders the search ran:
    for the restricted families, every order in the family; for the free
    search, orders that produced an incumbent improvement (orders whose
    branches were all pruned, or that only mirror an order already seen
    through an equivalent commutation, are not counted).
    """

    best_layout: Layout
    best_min_gap: float
    grid_steps: int
    orders_examined: int


def grid_positions(width: float, grid_steps: int) -> tuple[float, ...]:
    """Evenly spread candidate x-positions spanning the allowed range.

    ``grid_steps`` counts the uniform intervals, so the grid holds
    ``grid_steps + 1`` positions including both extremes of the range.
    """
    if grid_steps < 2:
        raise InputError(f"grid_steps must be at least 2, got {grid_steps}")
    return tuple(
        0.5 + (width - 1.0) * j / grid_steps for j in range(grid_steps + 1)
    )


def _union_measure(cuts: list[tuple[float, float]]) -> float:
    if len(cuts) == 1:
        lo, hi = cuts[0]
        return hi - lo
    cuts.sort()
    total = 0.0
    cur_lo, cur_hi = cuts[0]
    for lo, hi in cuts[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    return total + (cur_hi - cur_lo)


def _pair_bound_below(
    x: float, y: float, pxs: list[float], pys: list[float], threshold: float
) -> bool:
    """True when some single placed square already caps the gap at threshold.

    The gap against the whole placed set is at most the gap against any
    one member, and that one-square gap is a few flops, so this rejects
    hopeless candidates before the exact union computation.
    """
    for i in range(len(pxs)):
        ddx = pxs[i] - x
        if ddx < 0.0:
            ddx = -ddx
        if ddx > 1.0:
            continue
        ddy = pys[i] - y
        if ddy < 0.0:
            ddy = -ddy
        if ddy > 1.0:
            continue
        if 2.0 - (1.0 - ddx) - (1.0 - ddy) <= threshold:
            return True
    return False


def _gap_against(x: float, y: float, pxs: list[float], pys: list[float]) -> float:
    """Gap of the unit square at (x, y) behind the placed squares."""
    left: list[tuple[float, float]] = []
    right: list[tuple[float, float]] = []
    top: list[tuple[float, float]] = []
    bottom: list[tuple[float, float]] = []
    for i in range(len(pxs)):
        ddx = pxs[i] - x
        if ddx > 1.0 or ddx < -1.0:
            continue
        ddy = pys[i] - y
        if ddy > 1.0 or ddy < -1.0:
            continue
        ylo = ddy - 0.5
        if ylo < -0.5:
            ylo = -0.5
        yhi = ddy + 0.5
        if yhi > 0.5:
            yhi = 0.5
        if yhi > ylo:
            if ddx <= 0.0:
                left.append((ylo, yhi))
            if ddx >= 0.0:
                right.append((ylo, yhi))
        xlo = ddx - 0.5
        if xlo < -0.5:
            xlo = -0.5
        xhi = ddx + 0.5
        if xhi > 0.5:
            xhi = 0.5
        if xhi > xlo:
            if ddy <= 0.0:
                bottom.append((xlo, xhi))
            if ddy >= 0.0:
                top.append((xlo, xhi))
    covered = 0.0
    if left:
        covered += _union_measure(left)
    if right:
        covered += _union_measure(right)
    if top:
        covered += _union_measure(top)
    if bottom:
        covered += _union_measure(bottom)
    return 2.0 - covered


class _WindowBudgets:
    """Stick-out budget accounting over unit-height y-windows.

    The squares whose centers fall in one unit-height window all overlap
    vertically, so restricted to just those squares every non-top one
    pokes out of the squares in front of it by at least its gap, and the
    poke-out intervals are disjoint within ``(w - 1) + span`` of room.
    Placing squares front to back makes each placed square's poke-out
    within a window exact, so a branch whose already-spent room leaves
    less than ``gap_target`` for every remaining window member cannot
    beat the incumbent.  (Only valid while the incumbent gap is
    positive, which the reasoning needs.)
    """

    def __init__(self, ys: Sequence[float], width: float):
        n = len(ys)
        seen: set[tuple[int, ...]] = set()
        window_members: list[tuple[int, ...]] = []
        for i in range(n):
            members = tuple(
                j for j in range(n) if ys[i] <= ys[j] <= ys[i] + 1.0
            )
            if len(members) >= 3 and members not in seen:
                seen.add(members)
                window_members.append(members)
        self.members = window_members
        self.size = [len(m) for m in window_members]
        self.budget = [
            (width - 1.0) + (ys[m[-1]] - ys[m[0]]) for m in window_members
        ]
        self.of_square: list[list[int]] = [[] for _ in range(n)]
        for w, m in enumerate(window_members):
            for j in m:
                self.of_square[j].append(w)
        self.count = [0] * len(window_members)
        self.spent = [0.0] * len(window_members)
        self.bbox = [(0.0, 0.0, 0.0, 0.0)] * len(window_members)
        self._trail: list[list[tuple[int, int, float, tuple]]] = []

    def place(self, u: int, x: float, y: float, gap_target: float) -> bool:
        """Account square u; False when some window cannot pay its rest."""
        saved: list[tuple[int, int, float, tuple]] = []
        viable = True
        for w in self.of_square[u]:
            saved.append((w, self.count[w], self.spent[w], self.bbox[w]))
            if self.count[w] == 0:
                self.bbox[w] = (x - 0.5, x + 0.5, y - 0.5, y + 0.5)
            else:
                bx0, bx1, by0, by1 = self.bbox[w]
                x_overlap = min(x + 0.5, bx1) - max(x - 0.5, bx0)
                y_overlap = min(y + 0.5, by1) - max(y - 0.5, by0)
                stick = 2.0 - max(0.0, x_overlap) - max(0.0, y_overlap)
                self.spent[w] += stick
                self.bbox[w] = (
                    min(bx0, x - 0.5),
                    max(bx1, x + 0.5),
                    min(by0, y - 0.5),
                    max(by1, y + 0.5),
                )
            self.count[w] += 1
            if gap_target > 0.0:
                remaining = self.size[w] - self.count[w]
                if (
                    remaining > 0
                    and self.spent[w] + remaining * gap_target
                    > self.budget[w] + 1e-9
                ):
                    viable = False
        self._trail.append(saved)
        return viable

    def undo(self) -> None:
        for w, count, spent, bbox in reversed(self._trail.pop()):
            self.count[w] = count
            self.spent[w] = spent
            self.bbox[w] = bbox


class _Engine:
    """Shared state for the depth-first searches over (order, xs).

    Searches place squares front to back, so every placed square's gap
    is final the moment it is placed; a branch dies as soon as any
    placed square's gap stops exceeding the incumbent.  Additionally,
    once an unplaced square has two or more placed squares within
    vertical distance 1, the search verifies that some grid position
    still lets it beat the incumbent, and cuts the branch otherwise.
    """

    def __init__(self, ys: Sequence[float], grid: Sequence[float], width: float):
        self.ys = [float(y) for y in ys]
        self.grid = [float(g) for g in grid]
        self.width = float(width)
        self.n = len(self.ys)
        self.best_gap = -math.inf
        self.best_xs: tuple[float, ...] | None = None
        self.best_zorder: tuple[int, ...] | None = None
        self.orders: set[tuple[int, ...]] = set()

    # -- helpers -------------------------------------------------------

    def _record(self, gap: float, seq: list[int], placed_x: list[float]) -> None:
        xs = [0.0] * self.n
        for pos, u in enumerate(seq):
            xs[u] = placed_x[pos]
        self.best_gap = gap
        self.best_xs = tuple(xs)
        self.best_zorder = tuple(reversed(seq))
        self.orders.add(self.best_zorder)

    def _has_escape(
        self, yv: float, placed_x: list[float], placed_y: list[float]
    ) -> bool:
        """Can the square at yv still beat the incumbent at some grid x?"""
        threshold = self.best_gap
        for x in self.grid:
            if _pair_bound_below(x, yv, placed_x, placed_y, threshold):
                continue
            if _gap_against(x, yv, placed_x, placed_y) > threshold:
                return True
        return False

    # -- restricted-order search ---------------------------------------

    def run_fixed(self, seq: list[int], mono: str | None) -> None:
        """Search all grid assignments for one front-to-back sequence.

        ``mono`` constrains each square's x against the previously
        placed one ("le" / "ge"), which expresses the staircase families
        since their sequences are monotone in y.
        """
        n = self.n
        ys = self.ys
        grid = self.grid
        G = len(grid)
        self.orders.add(tuple(reversed(seq)))
        placed_x: list[float] = []
        placed_y: list[float] = []
        ncount = [0] * n
        budgets = _WindowBudgets(ys, self.width)

        def rec(d: int, cur_min: float, lo_j: int, hi_j: int) -> None:
            if cur_min <= self.best_gap:
                return
            if d == n:
                self._record(cur_min, seq, placed_x)
                return
            u = seq[d]
            yu = ys[u]
            for j in range(lo_j, hi_j + 1):
                x = grid[j]
                if _pair_bound_below(x, yu, placed_x, placed_y, self.best_gap):
                    continue
                g = _gap_against(x, yu, placed_x, placed_y)
                if g <= self.best_gap:
                    continue
                nm = cur_min if cur_min < g else g
                if nm <= self.best_gap:
                    continue
                placed_x.append(x)
                placed_y.append(yu)
                viable = budgets.place(u, x, yu, self.best_gap)
                bumped = []
                if viable:
                    for pos in range(d + 1, n):
                        v = seq[pos]
                        if abs(ys[v] - yu) <= 1.0:
                            ncount[v] += 1
                            bumped.append(v)
                    for v in bumped:
                        if ncount[v] >= 2 and not self._has_escape(
                            ys[v], placed_x, placed_y
                        ):
                            viable = False
                            break
                if viable:
                    if mono == "le":
                        rec(d + 1, nm, 0, j)
                    elif mono == "ge":
                        rec(d + 1, nm, j, G - 1)
                    else:
                        rec(d + 1, nm, 0, G - 1)
                for v in bumped:
                    ncount[v] -= 1
                budgets.undo()
                placed_x.pop()
                placed_y.pop()

        rec(0, math.inf, 0, G - 1)

    # -- free-order search ---------------------------------------------

    def run_any(self) -> None:
        """Interleaved search over which square comes next and its x.

        Placing a square that cannot interact with the one placed just
        before it (vertical distance above 1, or horizontal above 1)
        commutes with it, so only the representative with ascending
        indices is explored.
        """
        n = self.n
        ys = self.ys
        grid = self.grid
        G = len(grid)
        placed_x: list[float] = []
        placed_y: list[float] = []
        seq: list[int] = []
        in_seq = [False] * n
        ncount = [0] * n
        budgets = _WindowBudgets(ys, self.width)

        def rec(cur_min: float, prev_u: int, prev_x: float) -> None:
            if cur_min <= self.best_gap:
                return
            d = len(seq)
            if d == n:
                self._record(cur_min, seq, placed_x)
                return
            prev_y = ys[prev_u] if prev_u >= 0 else 0.0
            for u in range(n):
                if in_seq[u]:
                    continue
                yu = ys[u]
                commutes_in_y = prev_u >= 0 and u < prev_u and abs(yu - prev_y) > 1.0
                check_x_commute = prev_u >= 0 and u < prev_u
                for j in range(G):
                    x = grid[j]
                    if commutes_in_y or (
                        check_x_commute and abs(x - prev_x) > 1.0
                    ):
                        continue
                    if _pair_bound_below(x, yu, placed_x, placed_y, self.best_gap):
                        continue
                    g = _gap_against(x, yu, placed_x, placed_y)
                    if g <= self.best_gap:
                        continue
                    nm = cur_min if cur_min < g else g
                    if nm <= self.best_gap:
                        continue
                    placed_x.append(x)
                    placed_y.append(yu)
                    seq.append(u)
                    in_seq[u] = True
                    viable = budgets.place(u, x, yu, self.best_gap)
                    bumped = []
                    if viable:
                        for v in range(n):
                            if not in_seq[v] and abs(ys[v] - yu) <= 1.0:
                                ncount[v] += 1
                                bumped.append(v)
                        for v in bumped:
                            if ncount[v] >= 2 and not self._has_escape(
                                ys[v], placed_x, placed_y
                            ):
                                viable = False
                                break
                    if viable:
                        rec(nm, u, x)
                    for v in bumped:
                        ncount[v] -= 1
                    budgets.undo()
                    placed_x.pop()
                    placed_y.pop()
                    seq.pop()
                    in_seq[u] = False

        rec(math.inf, -1, 0.0)


def _family_sequences(n: int, family: Family) -> list[tuple[list[int], str | None]]:
    """Front-to-back sequences (plus x-monotonicity) for a family."""
    down = list(range(n))  # lowest square in front
    up = list(range(n - 1, -1, -1))  # highest square in front
    if family == "stack-by-y":
        return [(up, None)]
    if family == "stack-by-inverse-y":
        return [(down, None)]
    if family == "staircase":
        return [(up, "le"), (up, "ge"), (down, "ge"), (down, "le")]
    raise InputError(f"unknown family {family!r}")


def grid_search_restricted(
    instance: Instance,
    grid_steps: int,
    family: Family = "any",
    max_n: int = DEFAULT_MAX_N,
) -> GridSearchResult:
    """Best layout over a family of stacking orders and grid x-positions.

    The free search seeds its incumbent with the restricted families
    (their layouts are free-family members too), which sharpens pruning
    without affecting the maximum.
    """
    if family not in FAMILIES:
        raise InputError(f"family must be one of {FAMILIES}, got {family!r}")
    n = instance.n
    if n > max_n:
        raise InputError(
            f"instance has {n} squares but the exhaustive search is capped at "
            f"{max_n}; pass max_n={n} to force it (cost grows like n! * g^n)"
        )
    grid = grid_positions(instance.width, grid_steps)
    if n == 1:
        layout = Layout((grid[0],), (0,))
        return GridSearchResult(layout, evaluate(instance, layout).min_gap, grid_steps, 1)
    engine = _Engine(instance.ys, grid, instance.width)
    if family == "any":
        for seq, mono in _family_sequences(n, "staircase"):
            engine.run_fixed(seq, mono)
        for fam in ("stack-by-y", "stack-by-inverse-y"):
            for seq, mono in _family_sequences(n, fam):
                engine.run_fixed(seq, mono)
        engine.run_any()
    else:
        for seq, mono in _family_sequences(n, family):
            engine.run_fixed(seq, mono)
    assert engine.best_xs is not None and engine.best_zorder is not None
    layout = Layout(engine.best_xs, engine.best_zorder)
    measured = evaluate(instance, layout).min_gap
    if abs(measured - engine.best_gap) > 1e-9:
        raise RuntimeError(
            f"oracle bookkeeping disagrees with the evaluator: "
            f"{engine.best_gap} vs {measured}"
        )
    return GridSearchResult(layout, measured, grid_steps, len(engine.orders))


def grid_search(
    instance: Instance, grid_steps: int, max_n: int = DEFAULT_MAX_N
) -> GridSearchResult:
    """Exhaustive search over all stacking orders and grid x-positions."""
    return grid_search_restricted(instance, grid_steps, "any", max_n)


def sample_visible_perimeter(
    instance: Instance,
    layout: Layout,
    samples_per_side: int = 1000,
    seed: int = 0,
) -> tuple[float, ...]:
    """Monte-Carlo estimate of each square's visible perimeter.

    Samples points uniformly on every side and tests coverage pointwise;
    the standard error of a square's estimate is about 1/sqrt(samples).
    """
    if samples_per_side < 100:
        raise InputError("samples_per_side must be at least 100")
    rng = np.random.default_rng(seed)
    candidates = _front_candidates(instance, layout)
    estimates = []
    for i in range(instance.n):
        x, y = layout.xs[i], instance.ys[i]
        fronts = candidates[i]
        total = 0.0
        for side in ("left", "right", "top", "bottom"):
            t = rng.random(samples_per_side)
            if side in ("left", "right"):
                px = x - 0.5 if side == "left" else x + 0.5
                py = y - 0.5 + t
                covered = np.zeros(samples_per_side, dtype=bool)
                for fx, fy in fronts:
                    if fx - 0.5 <= px <= fx + 0.5:
                        covered |= (py >= fy - 0.5) & (py <= fy + 0.5)
            else:
                py_line = y + 0.5 if side == "top" else y - 0.5
                px_pts = x - 0.5 + t
                covered = np.zeros(samples_per_side, dtype=bool)
                for fx, fy in fronts:
                    if fy - 0.5 <= py_line <= fy + 0.5:
                        covered |= (px_pts >= fx - 0.5) & (px_pts <= fx + 0.5)
            total += 1.0 - float(covered.mean())
        estimates.append(total)
    return tuple(estimates)
