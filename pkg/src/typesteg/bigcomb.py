"""Exact combinatorial arithmetic on arbitrary-precision integers.

Counts and ranks throughout the library are plain Python ints, which are
already exact at any magnitude; this module adds the few combinatorial
operations the enumerators need, including the incremental single-step
updates that keep ranking loops at one multiply and one exact divide per
position.
"""

from __future__ import annotations

import math
from typing import Iterable, Literal

from .errors import InexactDivisionError

__all__ = ["binomial", "multinomial", "binomial_next", "exact_div", "BinomialStep"]

BinomialStep = Literal["dec_t_dec_m", "dec_t_keep_m"]


def exact_div(a: int, b: int) -> int:
    """Divide a by b, raising InexactDivisionError on a nonzero remainder."""
    q, r = divmod(a, b)
    if r:
        raise InexactDivisionError(f"{a} is not divisible by {b}")
    return q


def binomial(t: int, m: int) -> int:
    """C(t, m), with 0! = 1 and C(t, m) = 0 whenever t < m."""
    if t < 0 or m < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return math.comb(t, m)


def multinomial(n: int, counts: Iterable[int]) -> int:
    """n! / prod(c!) over counts c, which must be nonnegative and sum to n."""
    counts = list(counts)
    if any(c < 0 for c in counts):
        raise ValueError("counts must be nonnegative")
    total = sum(counts)
    if total != n:
        raise ValueError(f"counts sum to {total}, expected {n}")
    result = math.factorial(n)
    for c in counts:
        if c > 1:
            result = exact_div(result, math.factorial(c))
    return result


def binomial_next(current: int, t: int, m: int, direction: BinomialStep) -> int:
    """Step from current = C(t, m) to an adjacent coefficient.

    "dec_t_dec_m" yields C(t-1, m-1) and "dec_t_keep_m" yields C(t-1, m),
    each with a single multiply and a single exact divide.
    """
    if t <= 0:
        raise ValueError("no neighbor below t = 0")
    if direction == "dec_t_dec_m":
        if m <= 0:
            raise ValueError("dec_t_dec_m requires m >= 1")
        return exact_div(current * m, t)
    if direction == "dec_t_keep_m":
        return exact_div(current * (t - m), t)
    raise ValueError(f"unknown direction {direction!r}")
