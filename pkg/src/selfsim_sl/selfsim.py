"""Self-similarity parameter sets and the functions they define.

A parameter set ``S = (a, d, beta)`` with ``N >= 2`` pieces defines the
similarity operator

    (G_S f)(x) = d_k * f((x - alpha_k) / a_k) + beta_k,   x in (alpha_k, alpha_{k+1}),

whose unique L2 fixed point ``P`` is the generalized primitive of the weight.
Everything here is exact except :func:`sample`, which works in binary64.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .scalar import parse_scalar, to_string

DEFAULT_SIZE_CAP = 2**20


class InvalidParameters(ValueError):
    """The raw data violate an invariant of a similarity parameter set."""


class SizeCapExceeded(RuntimeError):
    """An iterated set (or a sample of it) would exceed the configured size cap."""


class DegenerateMoments(ArithmeticError):
    """A closed-form moment denominator vanishes."""


@dataclass(frozen=True)
class SimilaritySet:
    a: tuple[Fraction, ...]
    d: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    alpha: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    theta_sq: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.a)
        if n < 2:
            raise InvalidParameters(f"need at least 2 pieces, got {n}")
        if len(self.d) != n or len(self.beta) != n:
            raise InvalidParameters(
                f"a, d and beta must have equal length (got {n}, {len(self.d)}, {len(self.beta)})"
            )
        for k, ak in enumerate(self.a, 1):
            if ak <= 0:
                raise InvalidParameters(f"piece width a_{k} = {ak} is not positive")
        total = sum(self.a, Fraction(0))
        if total != 1:
            raise InvalidParameters(f"piece widths must sum to 1, got sum(a) = {total}")
        theta_sq = sum((ak * dk * dk for ak, dk in zip(self.a, self.d)), Fraction(0))
        if theta_sq >= 1:
            raise InvalidParameters(
                f"not a contraction: theta^2 = sum a_k d_k^2 = {theta_sq} is not < 1"
            )
        object.__setattr__(self, "alpha", (Fraction(0), *accumulate(self.a)))
        object.__setattr__(self, "theta_sq", theta_sq)

    @property
    def n_pieces(self) -> int:
        return len(self.a)

    def to_json(self) -> dict:
        return {
            "a": [to_string(x) for x in self.a],
            "d": [to_string(x) for x in self.d],
            "beta": [to_string(x) for x in self.beta],
        }


@dataclass(frozen=True)
class MomentData:
    p0: Fraction
    p1: Fraction
    norm_sq: Fraction


def validate(a: Iterable, d: Iterable, beta: Iterable) -> SimilaritySet:
    """Build a :class:`SimilaritySet` from scalar literals or rationals.

    Raises :class:`InvalidParameters` naming the violated invariant.
    """
    return SimilaritySet(
        tuple(parse_scalar(x) for x in a),
        tuple(parse_scalar(x) for x in d),
        tuple(parse_scalar(x) for x in beta),
    )


def from_json(doc: dict) -> SimilaritySet:
    try:
        return validate(doc["a"], doc["d"], doc["beta"])
    except KeyError as exc:
        raise InvalidParameters(f"parameter document is missing key {exc.args[0]!r}") from None


def load(path) -> SimilaritySet:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidParameters(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise InvalidParameters(f"{path}: expected a JSON object with keys a, d, beta")
    return from_json(doc)


def save(s: SimilaritySet, path) -> None:
    Path(path).write_text(json.dumps(s.to_json(), indent=2) + "\n", encoding="utf-8")


def compose(s: SimilaritySet, t: SimilaritySet) -> SimilaritySet:
    """Parameter set of ``G_s o G_t``, pieces ordered lexicographically by (k, j)."""
    a, d, beta = [], [], []
    for ak, dk, bk in zip(s.a, s.d, s.beta):
        for aj, dj, bj in zip(t.a, t.d, t.beta):
            a.append(ak * aj)
            d.append(dk * dj)
            beta.append(bk + dk * bj)
    return SimilaritySet(tuple(a), tuple(d), tuple(beta))


def iterate(s: SimilaritySet, m: int, size_cap: int = DEFAULT_SIZE_CAP) -> SimilaritySet:
    """Parameter set of ``G_S^m``; it has ``N**m`` pieces and the same fixed point."""
    if m < 1:
        raise ValueError(f"iteration count must be >= 1, got {m}")
    if s.n_pieces**m > size_cap:
        raise SizeCapExceeded(
            f"iterate(S, {m}) has {s.n_pieces}^{m} = {s.n_pieces**m} pieces, cap is {size_cap}"
        )
    return _iterate_cached(s, m)


@lru_cache(maxsize=64)
def _iterate_cached(s: SimilaritySet, m: int) -> SimilaritySet:
    if m == 1:
        return s
    # compose(s, s^(m-1)) keeps the lexicographic order over (k1, ..., km)
    return compose(s, _iterate_cached(s, m - 1))


def reflect(s: SimilaritySet) -> SimilaritySet:
    """Parameters of ``-P``: same widths and scalings, negated offsets."""
    return SimilaritySet(s.a, s.d, tuple(-b for b in s.beta))


def moments(s: SimilaritySet) -> MomentData:
    """Exact integrals of P, x*P and P**2 over [0, 1]."""
    return _moments_cached(s)


@lru_cache(maxsize=64)
def _moments_cached(s: SimilaritySet) -> MomentData:
    den0 = 1 - sum((ak * dk for ak, dk in zip(s.a, s.d)), Fraction(0))
    if den0 == 0:
        raise DegenerateMoments("sum a_k d_k = 1: zeroth moment formula is singular")
    p0 = sum((ak * bk for ak, bk in zip(s.a, s.beta)), Fraction(0)) / den0

    den1 = 1 - sum((ak * ak * dk for ak, dk in zip(s.a, s.d)), Fraction(0))
    if den1 == 0:
        raise DegenerateMoments("sum a_k^2 d_k = 1: first moment formula is singular")
    num1 = sum(
        (
            ak * (ak * bk / 2 + al * dk * p0 + al * bk)
            for ak, dk, bk, al in zip(s.a, s.d, s.beta, s.alpha)
        ),
        Fraction(0),
    )
    p1 = num1 / den1

    # on piece k, P = d_k P(t) + beta_k; square, integrate, and solve for ||P||^2
    num2 = sum(
        (ak * (2 * dk * bk * p0 + bk * bk) for ak, dk, bk in zip(s.a, s.d, s.beta)),
        Fraction(0),
    )
    norm_sq = num2 / (1 - s.theta_sq)
    return MomentData(p0, p1, norm_sq)


# -- sampled approximations (binary64, never used in certificates) ----------


def apply_similarity(
    s: SimilaritySet, edges: np.ndarray, values: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Apply ``G_S`` to the step function with cell ``edges`` (0 .. 1) and ``values``."""
    alpha = [float(x) for x in s.alpha]
    new_edges = [alpha[k] + float(ak) * edges[:-1] for k, ak in enumerate(s.a)]
    new_edges.append(np.array([1.0]))
    new_values = [float(dk) * values + float(bk) for dk, bk in zip(s.d, s.beta)]
    return np.concatenate(new_edges), np.concatenate(new_values)


def step_l2_norm(edges: np.ndarray, values: np.ndarray) -> float:
    return math.sqrt(float(np.sum(np.diff(edges) * values * values)))


@dataclass(frozen=True)
class SampledFunction:
    """Piecewise-constant approximation of P on ``breakpoints``."""

    breakpoints: tuple[Fraction, ...]
    values: np.ndarray
    sup_error_bound: float

    def widths(self) -> np.ndarray:
        return np.diff(np.array([float(x) for x in self.breakpoints]))

    def integral(self) -> float:
        return float(np.sum(self.widths() * self.values))

    def l2_norm_sq(self) -> float:
        return float(np.sum(self.widths() * self.values**2))

    def write_csv(self, fh) -> None:
        """Rows ``x, value`` with x the left end of each cell."""
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "value"])
        for x, v in zip(self.breakpoints[:-1], self.values):
            w.writerow([repr(float(x)), repr(float(v))])


def _round_up(x: float) -> float:
    return math.nextafter(x, math.inf)


def sample(
    s: SimilaritySet,
    iterations: int,
    grid: int,
    start: float = 0.0,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> SampledFunction:
    """Apply ``G_S`` ``iterations`` times to the constant ``start`` and average
    the result over ``grid`` uniform cells.

    Starting from the mean of P makes every iterate the cell-average of P on
    its own partition, which converges much faster in L2 than starting from 0.
    The error bound is the sup-norm Banach bound with ratio ``max |d_k|``.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if grid < 2:
        raise ValueError("grid must be >= 2")
    if s.n_pieces**iterations > size_cap or grid > size_cap:
        raise SizeCapExceeded(
            f"sample needs {s.n_pieces}^{iterations} cells, cap is {size_cap}"
        )
    edges = np.array([0.0, 1.0])
    values = np.array([float(start)])
    for _ in range(iterations):
        edges, values = apply_similarity(s, edges, values)

    grid_x = np.linspace(0.0, 1.0, grid + 1)
    cumulative = np.concatenate([[0.0], np.cumsum(np.diff(edges) * values)])
    averages = np.diff(np.interp(grid_x, edges, cumulative)) * grid

    q = max(abs(float(dk)) for dk in s.d)
    if q < 1:
        first_step = max(abs(float(dk) * start + float(bk) - start) for dk, bk in zip(s.d, s.beta))
        bound = _round_up(_round_up(q**iterations) * first_step)
        bound = _round_up(bound / (1 - q))
        bound = _round_up(bound * (1 + 1e-12))
    else:
        bound = math.inf
    return SampledFunction(tuple(Fraction(j, grid) for j in range(grid + 1)), averages, bound)


# -- reference parameter sets ------------------------------------------------

LEBESGUE = validate(["1/2", "1/2"], ["1/2", "1/2"], ["0", "1/2"])
"""Fixed point P(x) = x, i.e. the constant weight 1."""

CANTOR = validate(["1/3", "1/3", "1/3"], ["1/2", "0", "1/2"], ["0", "1/2", "1/2"])
"""Fixed point is the Cantor ladder; the weight is the Cantor measure."""

INDEFINITE = validate(["1/2", "1/2"], ["1/2", "-1/2"], ["0", "1/2"])
"""A sign-changing weight with eigenvalues on both sides of zero."""

EXAMPLES: dict[str, SimilaritySet] = {
    "lebesgue": LEBESGUE,
    "cantor": CANTOR,
    "indefinite": INDEFINITE,
}


def identity_like(beta: Sequence = ("0", "0")) -> SimilaritySet:
    """Two halves with zero scaling: ``G f`` ignores ``f`` entirely."""
    return validate(["1/2", "1/2"], ["0", "0"], beta)
