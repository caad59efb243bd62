"""Divided-power hyperalgebra of sl2 over F_p: idempotents, blocks and PIMs."""

from .arith import FpScalar, ModulusError, binom_mod, lucas
from .blocks import BlockAlgebra, block_decomposition, block_report, loewy_series, pim_report, x_set
from .expr import ParseError, parse_element
from .hyperalgebra import AlgebraElement, ClosureError, H, X, Y, fr, fr_prime, multiply, operator_matrix, to_text
from .idempotents import PairAJ, TupleAJ, b_element, idempotent, mu, pairs, parse_tuple, tuples, weight_index

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "BlockAlgebra", "ClosureError", "FpScalar", "H", "ModulusError", "PairAJ", "ParseError",
    "TupleAJ", "X", "Y", "b_element", "binom_mod", "block_decomposition", "block_report", "fr", "fr_prime",
    "idempotent", "loewy_series", "lucas", "mu", "multiply", "operator_matrix", "pairs", "parse_element",
    "parse_tuple", "pim_report", "to_text", "tuples", "weight_index", "x_set",
]
