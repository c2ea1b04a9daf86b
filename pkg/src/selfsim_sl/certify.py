"""Certified counting bounds and eigenvalue brackets.

For a refinement level m, write ``S' = iterate(S, m)`` and ``A`` for the hat
basis matrix of ``S'``.  Whenever ``lam**2 * theta'^2 * ||P||^2 < 1/4``,

    ind A(lam)  <=  ind F(lam)  <=  ind (A(lam) - eps),   eps = 2 lam^2 theta'^2 ||P||^2,

where ``ind F(lam)`` counts the positive eigenvalues below ``lam``.  An upper
count ``< n`` proves ``nu_n >= lam``; a lower count ``>= n`` proves
``nu_n <= lam``.  Every quantity on this path is an exact rational.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .inertia import inertia_integer
from .pencil import pencil_parts
from .scalar import to_string
from .selfsim import (
    DEFAULT_SIZE_CAP,
    MomentData,
    SimilaritySet,
    iterate,
    reflect,
)

log = logging.getLogger(__name__)

QUARTER = Fraction(1, 4)
DEFAULT_WORK_CAP = 2**16


class Verdict(enum.Enum):
    BELOW = "Below"  # nu_n >= lam
    ABOVE = "Above"  # nu_n <= lam
    INCONCLUSIVE = "Inconclusive"


class Status(enum.Enum):
    CERTIFIED = "Certified"
    NOT_FOUND = "NotFoundUpTo"
    EXHAUSTED = "RefinementExhausted"


@dataclass(frozen=True)
class CountingBounds:
    lam: Fraction
    lower: int
    upper: int
    m_used: int
    epsilon_used: Fraction
    conclusive_margin: bool
    singular: bool = False  # a Galerkin matrix had an exact zero eigenvalue

    def to_json(self) -> dict:
        return {
            "lambda": to_string(self.lam),
            "m": self.m_used,
            "epsilon": to_string(self.epsilon_used),
            "lower": self.lower,
            "upper": self.upper,
            "conclusive_margin": self.conclusive_margin,
            "singular": self.singular,
        }


@dataclass(frozen=True)
class EigenvalueBracket:
    """Certified interval for the n-th positive (or negative) eigenvalue.

    ``hi`` is None when no upper end was found (``NotFoundUpTo``); ``limit``
    then holds the largest lambda searched.
    """

    n: int
    lo: Fraction | None
    hi: Fraction | None
    status: Status
    limit: Fraction | None = None
    negative: bool = False
    tests: tuple[CountingBounds, ...] = field(default=(), repr=False, compare=False)

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED

    def to_json(self) -> dict:
        def opt(x):
            return None if x is None else to_string(x)

        return {
            "n": self.n,
            "sign": "negative" if self.negative else "positive",
            "lo": opt(self.lo),
            "hi": opt(self.hi),
            "status": self.status.value,
            "limit": opt(self.limit),
            # for negative eigenvalues the tests are run on the reflected set
            "tests": [t.to_json() for t in self.tests],
        }


def epsilon_for(s: SimilaritySet, mom: MomentData, lam: Fraction, m: int) -> Fraction:
    return 2 * lam * lam * s.theta_sq**m * mom.norm_sq


def margin_holds(s: SimilaritySet, mom: MomentData, lam: Fraction, m: int) -> bool:
    """Exact test of ``lam^2 theta^(2m) ||P||^2 < 1/4``."""
    return lam * lam * s.theta_sq**m * mom.norm_sq < QUARTER


def minimal_level(s: SimilaritySet, mom: MomentData, lam: Fraction, limit: int = 10_000) -> int | None:
    """Smallest m >= 1 at which the margin condition holds (None past ``limit``)."""
    for m in range(1, limit + 1):
        if margin_holds(s, mom, lam, m):
            return m
    return None


def default_m_max(s: SimilaritySet, work_cap: int = DEFAULT_WORK_CAP) -> int:
    """Deepest level whose Galerkin matrix has at most ``work_cap`` pieces."""
    m = 1
    while s.n_pieces ** (m + 1) <= work_cap:
        m += 1
    return m


def counting_bounds(
    s: SimilaritySet,
    mom: MomentData,
    lam,
    m: int,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> CountingBounds:
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    refined = iterate(s, m, size_cap)
    eps = epsilon_for(s, mom, lam, m)
    dim = refined.n_pieces - 1
    if not margin_holds(s, mom, lam, m):
        return CountingBounds(lam, 0, dim, m, eps, False)
    parts = pencil_parts(refined, mom)
    low = inertia_integer(*parts.integer_matrix(lam))
    up = inertia_integer(*parts.integer_matrix(lam, eps))
    return CountingBounds(
        lam, low.negatives, up.negatives, m, eps, True, singular=bool(low.zeros or up.zeros)
    )


def verdict_of(bounds: CountingBounds, n: int) -> Verdict:
    if not bounds.conclusive_margin or bounds.singular:
        return Verdict.INCONCLUSIVE
    if bounds.upper < n:
        return Verdict.BELOW
    if bounds.lower >= n:
        return Verdict.ABOVE
    return Verdict.INCONCLUSIVE


def test_side(
    s: SimilaritySet,
    mom: MomentData,
    lam,
    n: int,
    m_max: int,
    size_cap: int = DEFAULT_SIZE_CAP,
    tests: list | None = None,
) -> Verdict:
    """Decide whether ``nu_n`` lies above or below ``lam`` by refining S.

    Levels ``m0 .. m_max`` are tried in turn, where ``m0`` is the first level
    satisfying the margin condition.  Levels at which a Galerkin matrix is
    exactly singular give no verdict.  Every evaluated level is appended to
    ``tests`` when given.
    """
    lam = Fraction(lam)
    if n < 1:
        raise ValueError("eigenvalue index n must be >= 1")
    m0 = minimal_level(s, mom, lam, limit=max(m_max, 1))
    if m0 is None:
        return Verdict.INCONCLUSIVE
    for m in range(m0, m_max + 1):
        bounds = counting_bounds(s, mom, lam, m, size_cap)
        if tests is not None:
            tests.append(bounds)
        verdict = verdict_of(bounds, n)
        log.debug("n=%d lam=%s m=%d -> %s (%d, %d)", n, lam, m, verdict.value, bounds.lower, bounds.upper)
        if verdict is not Verdict.INCONCLUSIVE:
            return verdict
    return Verdict.INCONCLUSIVE


def bracket_eigenvalue(
    s: SimilaritySet,
    mom: MomentData,
    n: int,
    width_tol,
    lambda_max,
    m_max: int | None = None,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> EigenvalueBracket:
    """Certified bracket ``[lo, hi]`` of width ``<= width_tol`` around ``nu_n``.

    The right end comes from a doubling search over ``1, 2, 4, ...`` (and
    ``lambda_max`` itself); the left end is the last Below point seen, or 0,
    which is always valid because ``nu_n > 0``.  Bisection then keeps certified
    endpoints, falling back to the 1/3 and 2/3 points when the midpoint is
    inconclusive.
    """
    width_tol, lambda_max = Fraction(width_tol), Fraction(lambda_max)
    if n < 1:
        raise ValueError("eigenvalue index n must be >= 1")
    if width_tol <= 0 or lambda_max <= 0:
        raise ValueError("width_tol and lambda_max must be positive")
    if m_max is None:
        m_max = default_m_max(s)
    tests: list[CountingBounds] = []

    def side(lam):
        return test_side(s, mom, lam, n, m_max, size_cap, tests)

    lo, hi = Fraction(0), None
    candidates = []
    lam = Fraction(1)
    while lam < lambda_max:
        candidates.append(lam)
        lam *= 2
    candidates.append(lambda_max)
    for lam in candidates:
        verdict = side(lam)
        if verdict is Verdict.ABOVE:
            hi = lam
            break
        if verdict is Verdict.BELOW:
            lo = lam
    if hi is None:
        return EigenvalueBracket(n, lo, None, Status.NOT_FOUND, lambda_max, tests=tuple(tests))

    while hi - lo > width_tol:
        width = hi - lo
        for frac in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)):
            point = lo + width * frac
            verdict = side(point)
            if verdict is Verdict.BELOW:
                lo = point
                break
            if verdict is Verdict.ABOVE:
                hi = point
                break
        else:
            return EigenvalueBracket(n, lo, hi, Status.EXHAUSTED, tests=tuple(tests))
    return EigenvalueBracket(n, lo, hi, Status.CERTIFIED, tests=tuple(tests))


def reflect_moments(mom: MomentData) -> MomentData:
    return MomentData(-mom.p0, -mom.p1, mom.norm_sq)


def negative_eigenvalues(
    s: SimilaritySet,
    mom: MomentData,
    n: int,
    width_tol,
    lambda_max,
    m_max: int | None = None,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> EigenvalueBracket:
    """Bracket for the n-th negative eigenvalue (counted from zero downward).

    It is minus the n-th positive eigenvalue of the reflected weight.
    """
    br = bracket_eigenvalue(reflect(s), reflect_moments(mom), n, width_tol, lambda_max, m_max, size_cap)
    lo = None if br.hi is None else -br.hi
    hi = None if br.lo is None else -br.lo
    limit = None if br.limit is None else -br.limit
    return EigenvalueBracket(n, lo, hi, br.status, limit, negative=True, tests=br.tests)


def recheck(s: SimilaritySet, mom: MomentData, bracket: EigenvalueBracket) -> bool:
    """Re-derive the verdicts behind ``bracket``'s endpoints from its own log.

    Only the logged (lambda, m) pairs are replayed; this is the check a third
    party would run on a JSON certificate.
    """
    if bracket.negative:
        s, mom = reflect(s), reflect_moments(mom)
        lo = None if bracket.hi is None else -bracket.hi
        hi = None if bracket.lo is None else -bracket.lo
    else:
        lo, hi = bracket.lo, bracket.hi
    need = {}
    if lo:
        need[lo] = Verdict.BELOW
    if hi is not None:
        need[hi] = Verdict.ABOVE
    for lam, want in need.items():
        ok = False
        for t in bracket.tests:
            if t.lam == lam:
                again = counting_bounds(s, mom, t.lam, t.m_used)
                if again != t:
                    return False
                if verdict_of(again, bracket.n) is want:
                    ok = True
        if not ok:
            return False
    return True
