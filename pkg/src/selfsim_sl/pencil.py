"""Exact tridiagonal matrix of ``A_S(lambda) - eps`` in the hat basis.

The hat function ``y_k`` rises linearly on piece k and falls on piece k+1, so
the quadratic form of the pencil restricted to their span is tridiagonal.  Its
entries only involve the first two moments of P:

    diag_k = (1 - eps) (1/a_k + 1/a_{k+1})
             + lam (2 d_{k+1} (P1 - P0) + 2 d_k P1 + beta_k - beta_{k+1})
    off_k  = -(1 - eps) / a_{k+1} - lam d_{k+1} (2 P1 - P0)

(0-based: ``off_k`` couples ``y_k`` and ``y_{k+1}``, which overlap on piece k+1).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .selfsim import MomentData, SimilaritySet


@dataclass(frozen=True)
class TridiagonalSymmetric:
    diag: tuple[Fraction, ...]
    offdiag: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.diag) < 1:
            raise ValueError("a tridiagonal matrix needs at least one row")
        if len(self.offdiag) != len(self.diag) - 1:
            raise ValueError(
                f"offdiag must have dim-1 = {len(self.diag) - 1} entries, got {len(self.offdiag)}"
            )

    @property
    def dim(self) -> int:
        return len(self.diag)

    def reversed(self) -> "TridiagonalSymmetric":
        return TridiagonalSymmetric(self.diag[::-1], self.offdiag[::-1])

    def dense(self) -> list[list[Fraction]]:
        n = self.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, x in enumerate(self.diag):
            rows[i][i] = x
        for i, x in enumerate(self.offdiag):
            rows[i][i + 1] = rows[i + 1][i] = x
        return rows

    def write_csv(self, fh) -> None:
        """Debug dump: one row per matrix row, ``i, diag_i, offdiag_i`` (last row empty)."""
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["i", "diag", "offdiag"])
        for i, x in enumerate(self.diag):
            w.writerow([i, str(x), str(self.offdiag[i]) if i < len(self.offdiag) else ""])


@dataclass(frozen=True)
class PencilParts:
    """The lambda-free (stiffness) and lambda-linear parts of the pencil.

    ``A_S(lam) - eps = (1 - eps) * K + lam * V`` with both parts kept as
    integer arrays over one common positive denominator each.
    """

    k_diag: tuple[int, ...]
    k_off: tuple[int, ...]
    k_den: int
    v_diag: tuple[int, ...]
    v_off: tuple[int, ...]
    v_den: int

    @property
    def dim(self) -> int:
        return len(self.k_diag)

    def integer_matrix(self, lam: Fraction, eps: Fraction = Fraction(0)) -> tuple[list[int], list[int]]:
        """Integer diag/offdiag of a positive multiple of ``A_S(lam) - eps``.

        The multiple is ``k_den * v_den * den(lam) * den(eps)``; inertia is
        unchanged by it.
        """
        lam, eps = Fraction(lam), Fraction(eps)
        ck = (eps.denominator - eps.numerator) * lam.denominator * self.v_den
        cv = lam.numerator * eps.denominator * self.k_den
        diag = [ck * k + cv * v for k, v in zip(self.k_diag, self.v_diag)]
        off = [ck * k + cv * v for k, v in zip(self.k_off, self.v_off)]
        return diag, off


def _common_denominator(values) -> tuple[tuple[int, ...], int]:
    den = 1
    for x in values:
        if den % x.denominator:
            den = math.lcm(den, x.denominator)
    return tuple(x.numerator * (den // x.denominator) for x in values), den


def _stiffness_and_weight(s: SimilaritySet, mom: MomentData):
    a, d, beta = s.a, s.d, s.beta
    p0, p1 = mom.p0, mom.p1
    n = s.n_pieces
    inv_a = [1 / ak for ak in a]
    k_diag = [inv_a[k] + inv_a[k + 1] for k in range(n - 1)]
    k_off = [-inv_a[k + 1] for k in range(n - 2)]
    c_diag_next = 2 * (p1 - p0)
    c_diag_here = 2 * p1
    c_off = 2 * p1 - p0
    v_diag = [
        c_diag_next * d[k + 1] + c_diag_here * d[k] + beta[k] - beta[k + 1] for k in range(n - 1)
    ]
    v_off = [-c_off * d[k + 1] for k in range(n - 2)]
    return k_diag, k_off, v_diag, v_off


def pencil_parts(s: SimilaritySet, mom: MomentData) -> PencilParts:
    return _parts_cached(s, mom)


@lru_cache(maxsize=32)
def _parts_cached(s: SimilaritySet, mom: MomentData) -> PencilParts:
    k_diag, k_off, v_diag, v_off = _stiffness_and_weight(s, mom)
    k_all, k_den = _common_denominator(k_diag + k_off)
    v_all, v_den = _common_denominator(v_diag + v_off)
    dim = len(k_diag)
    return PencilParts(k_all[:dim], k_all[dim:], k_den, v_all[:dim], v_all[dim:], v_den)


def assemble(
    s: SimilaritySet, mom: MomentData, lam, eps=Fraction(0)
) -> TridiagonalSymmetric:
    """Exact matrix of ``A_S(lam) - eps`` in the hat basis (dimension ``N - 1``).

    ``mom`` must be ``moments(s)``; ``lam`` and ``eps`` are exact rationals.
    """
    lam, eps = Fraction(lam), Fraction(eps)
    if eps < 0:
        raise ValueError(f"eps must be >= 0, got {eps}")
    k_diag, k_off, v_diag, v_off = _stiffness_and_weight(s, mom)
    scale = 1 - eps
    return TridiagonalSymmetric(
        tuple(scale * k + lam * v for k, v in zip(k_diag, v_diag)),
        tuple(scale * k + lam * v for k, v in zip(k_off, v_off)),
    )
