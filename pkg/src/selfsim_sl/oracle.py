"""Floating-point cross-check of the certified brackets.

The Galerkin pencil ``K + lam V`` of a deep refinement is converted to
binary64 and its negative count is located in ``lam`` by bisection.  Nothing
here is certified: the estimates only exist to catch bugs.  Since
``ind A(lam) <= ind F(lam)``, they sit at or above the true eigenvalues.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

from .pencil import pencil_parts
from .selfsim import DEFAULT_SIZE_CAP, MomentData, SimilaritySet, iterate

REL_TOL = 1e-10


@dataclass(frozen=True)
class OracleEstimate:
    n: int
    value: float
    mesh_level: int


class FloatPencil:
    """``K + lam V`` in binary64, scaled so that K has O(1) entries."""

    def __init__(self, s: SimilaritySet, mom: MomentData, mesh_level: int, size_cap: int = DEFAULT_SIZE_CAP):
        parts = pencil_parts(iterate(s, mesh_level, size_cap), mom)
        self.k_diag = [k / parts.k_den for k in parts.k_diag]
        self.k_off = [k / parts.k_den for k in parts.k_off]
        self.v_diag = [v / parts.v_den for v in parts.v_diag]
        self.v_off = [v / parts.v_den for v in parts.v_off]
        self.dim = parts.dim

    def count(self, lam: float) -> int:
        """Negative pivots of ``K + lam V`` (float Sturm count)."""
        negatives = 0
        p = 1.0
        prev_b2 = 0.0
        kd, vd, ko, vo = self.k_diag, self.v_diag, self.k_off, self.v_off
        for i in range(self.dim):
            p = kd[i] + lam * vd[i] - prev_b2 / p
            if p == 0.0:
                p = 1e-300
            if p < 0.0:
                negatives += 1
            if i < self.dim - 1:
                b = ko[i] + lam * vo[i]
                prev_b2 = b * b
        return negatives


def approx_eigenvalues(
    s: SimilaritySet,
    mom: MomentData,
    count: int,
    mesh_level: int,
    lambda_max: float,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> list[OracleEstimate]:
    """First ``count`` jumps of the float negative count in ``(0, lambda_max]``.

    Returns fewer estimates when fewer jumps occur below ``lambda_max``.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    pencil = FloatPencil(s, mom, mesh_level, size_cap)
    available = min(count, pencil.count(float(lambda_max)))
    out = []
    lo = 0.0
    for n in range(1, available + 1):
        # the count is nondecreasing in lam (K is positive definite), so the
        # previous jump is a valid left end
        hi = float(lambda_max)
        while hi - lo > REL_TOL * hi:
            mid = 0.5 * (lo + hi)
            if pencil.count(mid) >= n:
                hi = mid
            else:
                lo = mid
        out.append(OracleEstimate(n, hi, mesh_level))
    return out


def write_csv(estimates: list[OracleEstimate], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["n", "estimate", "mesh_level"])
    for e in estimates:
        w.writerow([e.n, repr(e.value), e.mesh_level])
