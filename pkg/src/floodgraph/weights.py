"""The totally ordered weight lattice.

Weights are non-negative integers extended with a bottom element (printed
``-inf``) and a top element (printed ``inf``).  Join is ``max``, meet is
``min``.  Plain Python ints carry the finite values; the two sentinels are the
float infinities, which compare correctly against ints, so ``max``/``min``
work out of the box and equality stays exact.
"""

from __future__ import annotations

from .errors import GraphFormatError

Weight = int | float

TOP: Weight = float("inf")
BOTTOM: Weight = float("-inf")


def is_finite(w: Weight) -> bool:
    return w != TOP and w != BOTTOM


def join(a: Weight, b: Weight) -> Weight:
    return a if a >= b else b


def meet(a: Weight, b: Weight) -> Weight:
    return a if a <= b else b


def weight_succ(w: Weight) -> Weight:
    """Smallest weight strictly above ``w`` (top is absorbing).

    ``succ(bottom)`` is 0, the smallest finite weight: weights are unsigned,
    and the ceiling-minima oversets need a value strictly above a bottom
    ceiling to detect it.
    """
    if w == TOP:
        return TOP
    if w == BOTTOM:
        return 0
    return w + 1


def parse_weight(token: str) -> Weight:
    """Parse ``<nonneg int> | "inf" | "-inf"`` as used by all file formats."""
    if token == "inf":
        return TOP
    if token == "-inf":
        return BOTTOM
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"not a weight: {token!r}") from None
    if value < 0:
        raise GraphFormatError(f"negative finite weight not allowed: {token!r}")
    return value


def format_weight(w: Weight) -> str:
    if w == TOP:
        return "inf"
    if w == BOTTOM:
        return "-inf"
    return str(w)
