"""Exact optimum of small integer knapsack instances.

``solve_exact`` is a depth-first branch-and-bound; ``enumerate_bruteforce``
walks the whole single-item box and serves as an independent oracle.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import model
from .model import Instance


class Status(str, enum.Enum):
    PROVEN_OPTIMAL = "proven-optimal"
    BUDGET_EXCEEDED = "budget-exceeded"


class BoxTooLarge(ValueError):
    """The enumeration box exceeds the caller's cap."""


DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class SolveLimits:
    node_budget: int = DEFAULT_NODE_BUDGET
    block_decompose: bool = True

    def __post_init__(self):
        if self.node_budget < 1:
            raise ValueError("node_budget must be >= 1")


@dataclass(frozen=True)
class SolveResult:
    opt_value: Fraction
    witness: tuple
    nodes_used: int
    status: Status

    @property
    def proven(self) -> bool:
        return self.status is Status.PROVEN_OPTIMAL

    def as_opt(self):
        return self.opt_value, self.witness


def box_size(instance: Instance) -> int:
    return math.prod(v + 1 for v in model.quantities(instance))


def _integerize(instance: Instance):
    """Scale each row (with its b_i) and c to integers; floors are unchanged."""
    A, b = [], []
    for row, bi in zip(instance.A, instance.b):
        scale = math.lcm(bi.denominator, *(a.denominator for a in row))
        A.append([int(a * scale) for a in row])
        b.append(int(bi * scale))
    c_scale = math.lcm(1, *(cj.denominator for cj in instance.c))
    c = [int(cj * c_scale) for cj in instance.c]
    return A, b, c, c_scale


def _density_key(instance: Instance, j: int) -> Fraction:
    # value per unit of the most heavily used row fraction; fixed-to-zero items last
    if instance.c[j] == 0:
        return Fraction(-1)
    load = Fraction(0)
    for row, bi in zip(instance.A, instance.b):
        if row[j] > 0:
            if bi == 0:
                return Fraction(-1)
            load = max(load, row[j] / bi)
    return instance.c[j] / load


class _OutOfBudget(Exception):
    pass


class _BranchAndBound:
    def __init__(self, instance: Instance, budget: int, nodes_used: int = 0):
        self.A, self.b, self.c, self.c_scale = _integerize(instance)
        self.m, self.n = instance.m, instance.n
        self.budget = budget
        self.nodes = nodes_used
        v = model.quantities(instance)
        # zero-value items never help and only consume capacity
        order = [j for j in range(self.n) if self.c[j] > 0 and v[j] > 0]
        order.sort(key=lambda j: (-_density_key(instance, j), j))
        self.order = order
        self.pos = {j: k for k, j in enumerate(order)}
        self.row_orders = []
        for i in range(self.m):
            row = self.A[i]
            pos_items = [j for j in order if row[j] > 0]
            pos_items.sort(key=lambda j: (Fraction(-self.c[j], row[j]), j))
            free = [j for j in order if row[j] == 0]
            self.row_orders.append((free, pos_items))
        # start from the best single-item point, which is always feasible
        self.best = 0
        self.best_x = [0] * self.n
        for j in order:
            if self.c[j] * v[j] > self.best:
                self.best = self.c[j] * v[j]
                self.best_x = [0] * self.n
                self.best_x[j] = v[j]
        self.x = [0] * self.n

    def _cap(self, j: int, res) -> int:
        return min(res[i] // self.A[i][j] for i in range(self.m) if self.A[i][j] > 0)

    def bound(self, k: int, res) -> int:
        """Floor of the min over rows of the bounded fractional relaxation.

        Only variables at positions >= k in the branching order are free.
        """
        caps = {j: self._cap(j, res) for j in self.order[k:]}
        best = None
        for i in range(self.m):
            free, pos_items = self.row_orders[i]
            total = sum(self.c[j] * caps[j] for j in free if j in caps)
            room = res[i]
            row = self.A[i]
            for j in pos_items:
                if j not in caps:
                    continue
                u = caps[j]
                if u * row[j] <= room:
                    room -= u * row[j]
                    total += self.c[j] * u
                else:
                    total += (self.c[j] * room) // row[j]
                    break
            if best is None or total < best:
                best = total
        return 0 if best is None else best

    def search(self, k: int, value: int, res) -> None:
        if value > self.best:
            self.best = value
            self.best_x = list(self.x)
        if k == len(self.order):
            return
        if value + self.bound(k, res) <= self.best:
            return
        j = self.order[k]
        col = [self.A[i][j] for i in range(self.m)]
        for qty in range(self._cap(j, res), -1, -1):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _OutOfBudget
            self.x[j] = qty
            child = [res[i] - col[i] * qty for i in range(self.m)]
            self.search(k + 1, value + self.c[j] * qty, child)
        self.x[j] = 0

    def run(self) -> Status:
        try:
            self.search(0, 0, list(self.b))
        except _OutOfBudget:
            self.nodes = self.budget
            return Status.BUDGET_EXCEEDED
        return Status.PROVEN_OPTIMAL

    @property
    def value(self) -> Fraction:
        return Fraction(self.best, self.c_scale)


def relaxation_bound(instance: Instance) -> Fraction:
    """Root bound used for pruning: min over rows of the fractional relaxation."""
    bb = _BranchAndBound(instance, budget=1)
    return Fraction(bb.bound(0, list(bb.b)), bb.c_scale)


def _solve_single(instance: Instance, budget: int, nodes_used: int):
    bb = _BranchAndBound(instance, budget, nodes_used)
    status = bb.run()
    return bb.value, tuple(bb.best_x), bb.nodes, status


def solve_exact(instance: Instance, limits: Optional[SolveLimits] = None) -> SolveResult:
    """Optimal value and witness, or the best incumbent if the budget runs out."""
    limits = limits or SolveLimits()
    verdict = model.validate(instance)
    if not verdict.solvable:
        raise model.IllPosedInstance(
            f"columns {list(verdict.unbounded)} are unbounded"
        )
    if not limits.block_decompose:
        value, x, nodes, status = _solve_single(instance, limits.node_budget, 0)
        result = SolveResult(value, x, nodes, status)
    else:
        structure, parts = model.split_blocks(instance)
        witness = [0] * instance.n
        total = Fraction(0)
        nodes = 0
        status = Status.PROVEN_OPTIMAL
        for (_, cols), part in zip(structure.blocks, parts):
            if status is Status.BUDGET_EXCEEDED:
                value, x = Fraction(0), (0,) * part.n
            else:
                value, x, nodes, status = _solve_single(part, limits.node_budget, nodes)
            total += value
            for local, j in enumerate(cols):
                witness[j] = x[local]
        result = SolveResult(total, tuple(witness), nodes, status)
    if not instance.is_feasible(result.witness) or instance.objective(result.witness) != result.opt_value:
        raise AssertionError("solver produced an inconsistent witness")
    return result


def enumerate_bruteforce(instance: Instance, cap: int) -> SolveResult:
    """Exhaustive search of prod_j [0, v_j] in plain rational arithmetic.

    A partial assignment that already violates a row is dropped together with
    all its extensions (entries are nonnegative), which leaves the set of
    feasible points visited unchanged.
    """
    verdict = model.validate(instance)
    if not verdict.solvable:
        raise model.IllPosedInstance(f"columns {list(verdict.unbounded)} are unbounded")
    size = box_size(instance)
    if size > cap:
        raise BoxTooLarge(f"box has {size} points, cap is {cap}")
    v = model.quantities(instance)
    A, b, c, n = instance.A, instance.b, instance.c, instance.n
    best = [Fraction(-1), None]
    visited = [0]
    x = [0] * n

    def walk(j, used, value):
        visited[0] += 1
        if j == n:
            if value > best[0]:
                best[0], best[1] = value, tuple(x)
            return
        for qty in range(v[j] + 1):
            now = [u + row[j] * qty for u, row in zip(used, A)]
            if any(u > bi for u, bi in zip(now, b)):
                break
            x[j] = qty
            walk(j + 1, now, value + c[j] * qty)
        x[j] = 0

    walk(0, [Fraction(0)] * instance.m, Fraction(0))
    return SolveResult(best[0], best[1], visited[0], Status.PROVEN_OPTIMAL)
