"""Exact inertia of symmetric tridiagonal matrices.

The negative count is the number of sign changes in the sequence of leading
principal minors ``1, D_1, ..., D_n``.  We run the fraction-free recurrence

    D_i = diag_i * D_{i-1} - off_{i-1}**2 * D_{i-2}

on integers (after clearing denominators by a positive factor), so every sign
is decided exactly and each step costs one big-by-small multiplication.
GMP integers are used for the running minors; the minors grow linearly in bit
length, so the whole sweep is quadratic and the constant matters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import gcd, mpz

from .pencil import TridiagonalSymmetric

# bit length above which the optional gcd reduction kicks in
REDUCE_BITS = 4096


@dataclass(frozen=True)
class InertiaResult:
    negatives: int
    zeros: int
    positives: int

    @property
    def dim(self) -> int:
        return self.negatives + self.zeros + self.positives


def _block_inertia(diag: Sequence[int], off: Sequence[int], reduce: bool) -> tuple[int, int]:
    # unreduced block: all off entries nonzero, so no two consecutive minors vanish
    # and a zero minor in the middle sits between minors of opposite sign.
    prev2, prev = mpz(0), mpz(1)
    last_sign = 1
    changes = 0
    for i, di in enumerate(diag):
        if i == 0:
            cur = mpz(di)
        else:
            b = mpz(off[i - 1])
            cur = mpz(di) * prev - b * b * prev2
        prev2, prev = prev, cur
        if cur:
            sign = 1 if cur > 0 else -1
            if sign != last_sign:
                changes += 1
            last_sign = sign
        if reduce and prev.bit_length() > REDUCE_BITS:
            # the recurrence is linear in (D_{i-1}, D_{i-2}); a common positive
            # factor can be divided out without touching any later sign
            g = gcd(prev, prev2)
            if g > 1:
                prev, prev2 = prev // g, prev2 // g
    return changes, 1 if prev == 0 else 0


def inertia_integer(diag: Sequence[int], off: Sequence[int], reduce: bool = False) -> InertiaResult:
    """Inertia of the integer symmetric tridiagonal matrix (diag, off)."""
    n = len(diag)
    negatives = zeros = 0
    start = 0
    for i in range(n):
        if i == n - 1 or off[i] == 0:
            neg, zer = _block_inertia(diag[start : i + 1], off[start:i], reduce)
            negatives += neg
            zeros += zer
            start = i + 1
    return InertiaResult(negatives, zeros, n - negatives - zeros)


def to_integer_entries(t: TridiagonalSymmetric) -> tuple[list[int], list[int]]:
    """Scale ``t`` by the (positive) lcm of its denominators."""
    den = 1
    for x in (*t.diag, *t.offdiag):
        if den % x.denominator:
            den = math.lcm(den, x.denominator)
    diag = [x.numerator * (den // x.denominator) for x in t.diag]
    off = [x.numerator * (den // x.denominator) for x in t.offdiag]
    return diag, off


def inertia(t: TridiagonalSymmetric, reduce: bool = False) -> InertiaResult:
    """Exact (negatives, zeros, positives) eigenvalue counts of ``t``.

    ``reduce=True`` divides the running minor pair by its gcd whenever it grows
    past ``REDUCE_BITS`` bits; this only pays off when the minors share large
    factors.
    """
    diag, off = to_integer_entries(t)
    return inertia_integer(diag, off, reduce=reduce)


def index_of(t: TridiagonalSymmetric) -> int:
    """Number of negative eigenvalues, i.e. the strict negativity index of the form."""
    return inertia(t).negatives


def pivots(t: TridiagonalSymmetric) -> list[Fraction | None]:
    """LDL^T pivots ``p_i = D_i / D_{i-1}``; None where the previous minor vanishes.

    Handy for inspecting small matrices; :func:`inertia` does not need them.
    """
    diag, off = t.diag, t.offdiag
    out: list[Fraction | None] = []
    prev2, prev = Fraction(0), Fraction(1)
    for i, di in enumerate(diag):
        cur = di * prev - (off[i - 1] ** 2 * prev2 if i else 0)
        out.append(cur / prev if prev else None)
        prev2, prev = prev, cur
    return out
