"""Integer m-dimensional knapsack instances and the single-item approximation.

An instance is ``max c.x  s.t.  A x <= b,  x >= 0 integer`` with nonnegative
rational data.  Column indices are 0-based throughout the Python API.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .numeric import DomainError, as_rational, floor_ratio, format_rational


class IllPosedInstance(ValueError):
    """Some column has no positive entry but a positive objective coefficient."""


class InconsistentOptimum(AssertionError):
    """A claimed optimum is below the approximate value (solver bug)."""


def _rvec(xs) -> tuple:
    return tuple(as_rational(x) for x in xs)


@dataclass(frozen=True)
class Instance:
    A: tuple
    b: tuple
    c: tuple
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        A = tuple(_rvec(row) for row in self.A)
        b = _rvec(self.b)
        c = _rvec(self.c)
        if not A:
            raise ValueError("an instance needs at least one row")
        if len(b) != len(A):
            raise ValueError(f"b has {len(b)} entries for {len(A)} rows")
        if any(len(row) != len(c) for row in A):
            raise ValueError("every row of A must have len(c) entries")
        if any(x < 0 for row in A for x in row) or any(x < 0 for x in b + c):
            raise ValueError("A, b, c must be nonnegative")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "meta", dict(self.meta or {}))

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.c)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.A)

    def objective(self, x: Sequence[int]) -> Fraction:
        return sum((cj * xj for cj, xj in zip(self.c, x)), Fraction(0))

    def is_feasible(self, x: Sequence[int]) -> bool:
        if len(x) != self.n or any(xj < 0 for xj in x):
            return False
        return all(
            sum((a * xj for a, xj in zip(row, x)), Fraction(0)) <= bi
            for row, bi in zip(self.A, self.b)
        )

    # -- serialization ---------------------------------------------------
    def to_dict(self) -> dict:
        d = {
            "m": self.m,
            "n": self.n,
            "A": [[format_rational(x) for x in row] for row in self.A],
            "b": [format_rational(x) for x in self.b],
            "c": [format_rational(x) for x in self.c],
        }
        if self.meta:
            d["meta"] = self.meta
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Instance":
        for key in ("m", "n", "A", "b", "c"):
            if key not in d:
                raise ValueError(f"instance is missing field {key!r}")
        if not isinstance(d["A"], list) or any(not isinstance(r, list) for r in d["A"]):
            raise ValueError("'A' must be an array of arrays")
        cells = {
            "A": [x for row in d["A"] for x in row],
            "b": d["b"],
            "c": d["c"],
        }
        for key, values in cells.items():
            if any(not isinstance(x, str) for x in values):
                raise ValueError(f"entries of {key!r} must be rational strings")
        inst = cls(d["A"], d["b"], d["c"], d.get("meta") or {})
        if inst.m != d["m"] or inst.n != d["n"]:
            raise ValueError(
                f"declared shape {d['m']}x{d['n']} != actual {inst.m}x{inst.n}"
            )
        return inst

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "Instance":
        return cls.from_dict(json.loads(text))


def load_instance(path) -> Instance:
    with open(path) as fh:
        return Instance.loads(fh.read())


def save_instance(instance: Instance, path) -> None:
    with open(path, "w") as fh:
        fh.write(instance.dumps())
        fh.write("\n")


# -- well-posedness ---------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    unbounded: tuple = ()
    degenerate: tuple = ()

    @property
    def well_posed(self) -> bool:
        """Every column has a positive entry."""
        return not self.unbounded and not self.degenerate

    @property
    def solvable(self) -> bool:
        """No column can grow without bound; degenerate value-0 columns are fine."""
        return not self.unbounded


def validate(instance: Instance) -> Verdict:
    unbounded, degenerate = [], []
    for j in range(instance.n):
        if all(a == 0 for a in instance.column(j)):
            (unbounded if instance.c[j] > 0 else degenerate).append(j)
    return Verdict(tuple(unbounded), tuple(degenerate))


def _require_solvable(instance: Instance) -> Verdict:
    verdict = validate(instance)
    if not verdict.solvable:
        raise IllPosedInstance(
            f"columns {list(verdict.unbounded)} have no positive entry and c_j > 0"
        )
    return verdict


# -- the single-item approximation ---------------------------------------------

@dataclass(frozen=True)
class ItemSolution:
    j: int
    quantity: int
    value: Fraction


def item_quantity(instance: Instance, j: int) -> int:
    """min over rows with a_ij > 0 of floor(b_i / a_ij); 0 for an all-zero column."""
    ratios = [
        floor_ratio(bi, row[j]) for row, bi in zip(instance.A, instance.b) if row[j] > 0
    ]
    return min(ratios) if ratios else 0


def item_vector(instance: Instance, j: int) -> tuple:
    x = [0] * instance.n
    x[j] = item_quantity(instance, j)
    return tuple(x)


def item_solutions(instance: Instance) -> list[ItemSolution]:
    _require_solvable(instance)
    out = []
    for j in range(instance.n):
        v = item_vector(instance, j)
        if not instance.is_feasible(v):
            raise AssertionError(f"single-item vector for column {j} is infeasible")
        out.append(ItemSolution(j, v[j], instance.c[j] * v[j]))
    return out


def quantities(instance: Instance) -> tuple:
    """The diagonal of V(A, b): one single-item quantity per column."""
    return tuple(item_quantity(instance, j) for j in range(instance.n))


def approx_value(instance: Instance) -> tuple[Fraction, Optional[int]]:
    """Best single-item value and the smallest column attaining it."""
    best, arg = Fraction(0), None
    for item in item_solutions(instance):
        if arg is None or item.value > best:
            best, arg = item.value, item.j
    return best, arg


@dataclass(frozen=True)
class PrecisionReport:
    approx_value: Fraction
    approx_index: Optional[int]
    opt_value: Fraction
    opt_witness: tuple
    alpha: Fraction


def precision(instance: Instance, opt) -> PrecisionReport:
    """alpha(A, b, c) from an exact optimum ``opt = (value, witness)``.

    When the optimum is 0 the approximation is vacuously exact and alpha is 1.
    """
    opt_value, witness = opt
    opt_value = as_rational(opt_value)
    gamma, arg = approx_value(instance)
    if opt_value < gamma:
        raise InconsistentOptimum(
            f"optimum {opt_value} is below the approximate value {gamma}"
        )
    alpha = Fraction(1) if opt_value == 0 else gamma / opt_value
    return PrecisionReport(gamma, arg, opt_value, tuple(witness), alpha)


# -- column reduction ------------------------------------------------------------

def reduce_columns(instance: Instance) -> Instance:
    """Keep, in every column, only the entry of the row that limits that item.

    For column t the kept row s is the smallest index with a_st > 0 and
    floor(b_s/a_st) minimal.  The single-item quantities are unchanged while
    the feasible set can only grow, so the precision can only drop.
    """
    _require_solvable(instance)
    A = [list(row) for row in instance.A]
    for t in range(instance.n):
        support = [i for i in range(instance.m) if A[i][t] > 0]
        if len(support) <= 1:
            continue
        s = min(support, key=lambda i: (floor_ratio(instance.b[i], A[i][t]), i))
        for i in support:
            if i != s:
                A[i][t] = Fraction(0)
    return Instance(A, instance.b, instance.c, instance.meta)


# -- direct products -------------------------------------------------------------

@dataclass(frozen=True)
class BlockStructure:
    """Row/column index sets of the independent sub-problems, in order."""

    blocks: tuple  # of (rows tuple, cols tuple)

    @property
    def sizes(self) -> tuple:
        return tuple(len(cols) for _, cols in self.blocks)


def restrict(instance: Instance, rows: Sequence[int], cols: Sequence[int]) -> Instance:
    return Instance(
        [[instance.A[i][j] for j in cols] for i in rows],
        [instance.b[i] for i in rows],
        [instance.c[j] for j in cols],
    )


def split_blocks(instance: Instance) -> tuple[BlockStructure, list[Instance]]:
    """Connected components of the row/column support graph of A.

    Rows without support become column-free blocks.  All-zero columns belong
    to no component; they are attached to the block holding row 0.
    """
    m, n = instance.m, instance.n
    parent = list(range(m + n))  # rows 0..m-1, columns m..m+n-1

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for i, row in enumerate(instance.A):
        for j, a in enumerate(row):
            if a > 0:
                ru, rv = find(i), find(m + j)
                if ru != rv:
                    parent[max(ru, rv)] = min(ru, rv)

    groups: dict[int, tuple[list, list]] = {}
    for i in range(m):
        groups.setdefault(find(i), ([], []))[0].append(i)
    for j in range(n):
        root = find(m + j)
        if root >= m:  # column touches no row
            root = find(0)
        groups[root][1].append(j)

    blocks = tuple(
        (tuple(rows), tuple(cols))
        for rows, cols in sorted(groups.values(), key=lambda g: g[0][0])
    )
    return BlockStructure(blocks), [restrict(instance, r, c) for r, c in blocks]


def direct_product(instances: Iterable[Instance], meta: Optional[dict] = None) -> Instance:
    """Block-diagonal assembly, blocks in the given order."""
    instances = list(instances)
    if not instances:
        raise DomainError("direct product of zero instances")
    n = sum(inst.n for inst in instances)
    A, b, c = [], [], []
    offset = 0
    for inst in instances:
        for row, bi in zip(inst.A, inst.b):
            full = [Fraction(0)] * n
            full[offset:offset + inst.n] = row
            A.append(full)
            b.append(bi)
        c.extend(inst.c)
        offset += inst.n
    return Instance(A, b, c, meta or {})


def combine_block_reports(
    reports: Sequence[PrecisionReport], structure: Optional[BlockStructure] = None
) -> PrecisionReport:
    """Precision of a direct product from the precisions of its blocks.

    The approximate value is the best block approximate value, the optimum is
    the sum of block optima.  Witnesses are concatenated in block order, or
    scattered to their original columns when ``structure`` is given.
    """
    if not reports:
        raise DomainError("no block reports to combine")
    if structure is not None and len(structure.blocks) != len(reports):
        raise ValueError("structure and reports disagree on the block count")
    if structure is None:
        col_maps = []
        offset = 0
        for rep in reports:
            width = len(rep.opt_witness)
            col_maps.append(tuple(range(offset, offset + width)))
            offset += width
        n = offset
    else:
        col_maps = [cols for _, cols in structure.blocks]
        n = sum(len(cols) for cols in col_maps)

    witness = [0] * n
    gamma, arg = Fraction(0), None
    for rep, cols in zip(reports, col_maps):
        for local, j in enumerate(cols):
            witness[j] = rep.opt_witness[local]
        if rep.approx_index is None:
            continue
        j = cols[rep.approx_index]
        if arg is None or rep.approx_value > gamma or (
            rep.approx_value == gamma and j < arg
        ):
            gamma, arg = rep.approx_value, j
    opt = sum((rep.opt_value for rep in reports), Fraction(0))
    alpha = Fraction(1) if opt == 0 else gamma / opt
    return PrecisionReport(gamma, arg, opt, tuple(witness), alpha)
