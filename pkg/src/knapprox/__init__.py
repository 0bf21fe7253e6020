"""Worst-case precision of single-item-type solutions to integer knapsacks."""
from .bounds import BoundBreakdown, alpha_mn, asymptotic_reference
from .model import Instance, PrecisionReport, precision, reduce_columns, split_blocks
from .numeric import Bracket, bisect_decreasing, floor_ratio, parse_rational
from .sequences import SequenceRow, alpha1, mu, sequence_table
from .solver import SolveLimits, SolveResult, Status, enumerate_bruteforce, solve_exact
from .worstgen import generate, worst_block

__all__ = [
    "BoundBreakdown", "Bracket", "Instance", "PrecisionReport", "SequenceRow",
    "SolveLimits", "SolveResult", "Status", "alpha1", "alpha_mn",
    "asymptotic_reference", "bisect_decreasing", "enumerate_bruteforce",
    "floor_ratio", "generate", "mu", "parse_rational", "precision",
    "reduce_columns", "sequence_table", "solve_exact", "split_blocks",
    "worst_block",
]
