import json
import math
from fractions import Fraction as F

import pytest

from selfsim_sl import certify
from selfsim_sl.certify import Status, Verdict
from selfsim_sl.pencil import assemble
from selfsim_sl.selfsim import CANTOR, INDEFINITE, LEBESGUE, moments, reflect, validate

LEB_MOM = moments(LEBESGUE)


def test_counting_bounds_lebesgue_small_lambda():
    b = certify.counting_bounds(LEBESGUE, LEB_MOM, 1, 4)
    assert b.conclusive_margin
    assert b.lower == 0
    assert b.lower <= b.upper
    assert b.epsilon_used == 2 * F(1, 4) ** 4 * F(1, 3)


def test_counting_bounds_margin_fails():
    b = certify.counting_bounds(LEBESGUE, LEB_MOM, 100, 1)
    assert not b.conclusive_margin
    assert (b.lower, b.upper) == (0, 1)


@pytest.mark.parametrize("s", [LEBESGUE, CANTOR, INDEFINITE], ids=["lebesgue", "cantor", "indefinite"])
def test_epsilon_shrinks_by_theta_sq(s):
    mom = moments(s)
    lam = F(37, 3)
    for m in range(1, 5):
        e1 = certify.counting_bounds(s, mom, lam, m).epsilon_used
        e2 = certify.counting_bounds(s, mom, lam, m + 1).epsilon_used
        assert e2 == e1 * s.theta_sq


@pytest.mark.parametrize("s", [LEBESGUE, CANTOR, INDEFINITE], ids=["lebesgue", "cantor", "indefinite"])
def test_lower_never_exceeds_upper(s):
    mom = moments(s)
    for lam in (F(1, 2), F(9), F(40), F(151, 2)):
        for m in range(1, 6 if s.n_pieces == 2 else 5):
            b = certify.counting_bounds(s, mom, lam, m)
            assert b.lower <= b.upper


def test_counting_bounds_rejects_nonpositive_lambda():
    with pytest.raises(ValueError):
        certify.counting_bounds(LEBESGUE, LEB_MOM, 0, 2)


def test_gating_on_exact_boundary():
    # P = 2 everywhere: ||P||^2 = 4, theta^2 = 1/4, so the boundary is lam = 2^(m-2)
    s = validate(["1/2", "1/2"], ["1/2", "1/2"], ["1", "1"])
    mom = moments(s)
    assert mom.norm_sq == 4
    for m in range(2, 7):
        edge = F(2) ** (m - 2)
        assert not certify.counting_bounds(s, mom, edge, m).conclusive_margin
        assert certify.counting_bounds(s, mom, edge - F(1, 10**12), m).conclusive_margin
        assert not certify.counting_bounds(s, mom, edge + F(1, 10**12), m).conclusive_margin


def test_side_examples():
    assert certify.test_side(LEBESGUE, LEB_MOM, 5, 1, 8) is Verdict.BELOW
    assert certify.test_side(LEBESGUE, LEB_MOM, 15, 1, 8) is Verdict.ABOVE
    assert certify.test_side(LEBESGUE, LEB_MOM, 50, 2, 9) is Verdict.ABOVE
    assert certify.test_side(LEBESGUE, LEB_MOM, 30, 2, 9) is Verdict.BELOW


def test_side_inconclusive_when_margin_never_holds():
    assert certify.test_side(LEBESGUE, LEB_MOM, 10**6, 1, 3) is Verdict.INCONCLUSIVE


def test_side_inconclusive_at_galerkin_eigenvalue():
    # 12 is an exact eigenvalue of the level-1 Galerkin matrix (4 - lam/3 = 0);
    # with m_max = 1 and the margin failing there, nothing can be concluded
    assert certify.test_side(LEBESGUE, LEB_MOM, 12, 1, 1) is Verdict.INCONCLUSIVE


def test_singular_galerkin_matrix_gives_no_verdict():
    # small scalings keep the margin satisfied at the root of the 1x1 pencil
    s = validate(["1/2", "1/2"], ["1/10", "1/10"], ["0", "1/2"])
    mom = moments(s)
    k = assemble(s, mom, 0).diag[0]
    v = assemble(s, mom, 1).diag[0] - k
    root = -k / v
    assert root > 0
    b = certify.counting_bounds(s, mom, root, 1)
    assert b.conclusive_margin and b.singular
    assert certify.verdict_of(b, 1) is Verdict.INCONCLUSIVE
    assert certify.test_side(s, mom, root, 1, 1) is Verdict.INCONCLUSIVE
    # one level deeper the matrix is regular again and a verdict appears
    assert certify.test_side(s, mom, root, 1, 4) is not Verdict.INCONCLUSIVE


def test_side_logs_levels():
    tests = []
    certify.test_side(LEBESGUE, LEB_MOM, 9, 1, 12, tests=tests)
    levels = [t.m_used for t in tests]
    assert levels == list(range(levels[0], levels[0] + len(levels)))
    assert certify.minimal_level(LEBESGUE, LEB_MOM, F(9)) == levels[0]


def test_bracket_first_lebesgue():
    b = certify.bracket_eigenvalue(LEBESGUE, LEB_MOM, 1, F(1, 100), 1000)
    assert b.status is Status.CERTIFIED
    assert b.lo <= math.pi**2 <= b.hi
    assert b.hi - b.lo <= F(1, 100)


def test_bracket_third_lebesgue():
    b = certify.bracket_eigenvalue(LEBESGUE, LEB_MOM, 3, F(1, 10), 1000)
    assert b.certified
    assert b.lo <= 9 * math.pi**2 <= b.hi


def test_reflected_lebesgue_has_no_positive_eigenvalue():
    r = reflect(LEBESGUE)
    b = certify.bracket_eigenvalue(r, moments(r), 1, F(1, 10), 256)
    assert b.status is Status.NOT_FOUND
    assert b.limit == 256
    assert b.hi is None


def test_negative_of_reflected_lebesgue():
    r = reflect(LEBESGUE)
    b = certify.negative_eigenvalues(r, moments(r), 1, F(1, 100), 1000)
    assert b.certified and b.negative
    assert b.lo < b.hi
    assert b.lo <= -math.pi**2 <= b.hi


def test_indefinite_has_both_signs():
    mom = moments(INDEFINITE)
    pos = certify.bracket_eigenvalue(INDEFINITE, mom, 1, F(1, 10), 1000)
    neg = certify.negative_eigenvalues(INDEFINITE, mom, 1, F(1, 10), 1000)
    assert pos.certified and neg.certified
    assert pos.lo > 0 > neg.hi


def test_certificate_json_round_trip():
    b = certify.bracket_eigenvalue(LEBESGUE, LEB_MOM, 1, F(1, 10), 100)
    doc = json.loads(json.dumps(b.to_json()))
    assert F(doc["lo"]) == b.lo and F(doc["hi"]) == b.hi
    assert doc["status"] == "Certified"
    t0 = doc["tests"][0]
    assert set(t0) >= {"lambda", "m", "epsilon", "lower", "upper"}
    assert certify.recheck(LEBESGUE, LEB_MOM, b)


def test_recheck_detects_tampering():
    b = certify.bracket_eigenvalue(LEBESGUE, LEB_MOM, 1, F(1, 10), 100)
    forged = certify.EigenvalueBracket(1, b.lo, b.lo + F(1, 1000), b.status, tests=b.tests)
    assert not certify.recheck(LEBESGUE, LEB_MOM, forged)


def test_recheck_negative():
    b = certify.negative_eigenvalues(INDEFINITE, moments(INDEFINITE), 1, F(1, 10), 1000)
    assert certify.recheck(INDEFINITE, moments(INDEFINITE), b)


class FakeSide:
    """Answers like a test with a known eigenvalue, but stays silent within
    ``blind`` of it, which forces the 1/3 and 2/3 fallbacks."""

    def __init__(self, nu, blind):
        self.nu, self.blind, self.calls = nu, blind, []

    def __call__(self, s, mom, lam, n, m_max, size_cap=None, tests=None):
        self.calls.append(lam)
        if abs(lam - self.nu) < self.blind:
            return Verdict.INCONCLUSIVE
        return Verdict.BELOW if lam < self.nu else Verdict.ABOVE


def test_bisection_fallback_and_shrink_factor(monkeypatch):
    fake = FakeSide(F(10), F(1, 50))
    monkeypatch.setattr(certify, "test_side", fake)
    b = certify.bracket_eigenvalue(LEBESGUE, LEB_MOM, 1, F(1, 1000), 100, m_max=5)
    # the blind zone is wider than the tolerance, so the run ends exhausted
    assert b.status is Status.EXHAUSTED
    assert b.lo < 10 < b.hi
    assert b.hi - b.lo < F(3, 25)


def test_bisection_width_shrinks_geometrically(monkeypatch):
    fake = FakeSide(F(1000, 101), F(1, 10**9))
    monkeypatch.setattr(certify, "test_side", fake)
    b = certify.bracket_eigenvalue(LEBESGUE, LEB_MOM, 1, F(1, 10**6), 100, m_max=5)
    assert b.certified
    # doubling search from 1 stops at 16; each round then costs at most 3 probes
    # and removes at least a third of the width
    rounds = math.ceil(math.log(16 * 10**6) / math.log(F(3, 2)))
    assert len(fake.calls) <= 5 + 3 * rounds


def test_bracket_argument_checks():
    with pytest.raises(ValueError):
        certify.bracket_eigenvalue(LEBESGUE, LEB_MOM, 0, F(1, 10), 100)
    with pytest.raises(ValueError):
        certify.bracket_eigenvalue(LEBESGUE, LEB_MOM, 1, 0, 100)


def test_default_m_max():
    assert certify.default_m_max(LEBESGUE) == 16
    assert certify.default_m_max(CANTOR) == 10
