import functools
import math
from fractions import Fraction

import mpmath
import pytest

from lgoldbach.analytic import (
    AccuracyError,
    LiouvilleSmoother,
    abel_tail_bound,
    analytic_report,
    character_partial_sums,
    l1_chi,
    l1_chi_detail,
    livigen_ratio,
    llam_quantity,
    polya_vinogradov_stat,
    smoothed_sum_chi,
    smoothed_sum_chi_bruteforce,
    smoothed_sum_chi_exact,
    smoothed_sum_liouville,
    square_closed_form,
)
from lgoldbach.arith import primes_up_to, quadratic_residue_table


@functools.cache
def l1_digamma_oracle(p):
    """L(1, chi) = -(1/p) sum_a chi(a) digamma(a/p), at 30 digits."""
    chi = quadratic_residue_table(p)
    with mpmath.workdps(30):
        return float(-sum(int(chi[a]) * mpmath.digamma(mpmath.mpf(a) / p) for a in range(1, p)) / p)


def test_l1_classical_values():
    assert l1_chi(3) == pytest.approx(math.pi / (3 * math.sqrt(3)), abs=1e-12)
    assert l1_chi(3) == pytest.approx(0.6045998, abs=1e-7)
    assert l1_chi(5) == pytest.approx(2 * math.log((1 + math.sqrt(5)) / 2) / math.sqrt(5), abs=1e-12)
    assert l1_chi(5) == pytest.approx(0.4304089, abs=1e-7)


@pytest.mark.parametrize("p", [3, 5, 7, 13, 101, 1009, 9973, 100_003])
@pytest.mark.parametrize("method", ["character-sum", "direct"])
def test_l1_against_digamma(p, method):
    assert abs(l1_chi(p, method) - l1_digamma_oracle(p)) < 1e-8


def test_l1_method_agreement_sampled():
    for p in primes_up_to(3000)[1:]:
        p = int(p)
        assert abs(l1_chi(p, "direct") - l1_chi(p)) < 1e-6


def test_l1_budget_error():
    with pytest.raises(AccuracyError):
        l1_chi(101, "direct", blocks=2, terms=3)
    with pytest.raises(ValueError):
        l1_chi(101, "bogus")
    assert l1_chi_detail(101, "direct").error_bound < 1e-8


def test_abel_bound_dominates_truncation():
    p = 101
    chi = quadratic_residue_table(p)
    M = 3000
    partial = math.fsum(int(chi[n % p]) / n for n in range(1, M + 1))
    assert abs(l1_chi(p) - partial) <= abel_tail_bound(p, M)


def test_smoothed_chi_examples():
    assert smoothed_sum_chi_exact(3) == Fraction(2, 3)
    assert smoothed_sum_chi(3) == pytest.approx(2 / 3)
    assert smoothed_sum_chi_exact(5) == smoothed_sum_chi_bruteforce(5)
    for p in (7, 11, 13, 97, 211):
        assert smoothed_sum_chi_exact(p) == smoothed_sum_chi_bruteforce(p)


def test_smoothed_liouville_examples(table):
    assert smoothed_sum_liouville(table, 5) == 1
    assert smoothed_sum_liouville(table, 3) == Fraction(2, 3)
    assert smoothed_sum_liouville(table, 2) == Fraction(1, 2)


def test_square_identity(table):
    sm = LiouvilleSmoother(table, 10_000)
    for p in primes_up_to(10_001):
        p = int(p)
        v = sm(p)
        assert v == square_closed_form(p)
        assert v < math.sqrt(p)


def test_livigen_ratio_and_llam():
    L1 = l1_chi(5)
    S = smoothed_sum_chi(5)
    assert livigen_ratio(5, S, L1) == pytest.approx(abs(S - 2.5 * L1) / (5 ** (5 / 6) * math.log(5)))
    assert llam_quantity(5) == pytest.approx(L1 * 5 ** (1 / 6) / math.log(5))
    q3 = math.pi / (3 * math.sqrt(3)) * 3 ** (1 / 6) / math.log(3)
    assert llam_quantity(3) == pytest.approx(q3, abs=1e-12)
    assert abs(llam_quantity(1009, "direct") - llam_quantity(1009)) < 1e-5


def test_pv_stat():
    assert polya_vinogradov_stat(3) == pytest.approx(1 / (math.sqrt(3) * math.log(3)))
    assert polya_vinogradov_stat(3) == pytest.approx(0.5255, abs=1e-4)
    assert polya_vinogradov_stat(5) == pytest.approx(1 / (math.sqrt(5) * math.log(5)))
    assert character_partial_sums(7).tolist() == [0, 1, 2, 1, 2, 1, 0, 0]


def test_pv_stat_below_one_to_10k():
    assert max(polya_vinogradov_stat(int(p)) for p in primes_up_to(10_000)[1:]) < 1


def test_report(table):
    rep = analytic_report(table, [3, 5, 7, 11])
    assert [r.p for r in rep.records] == [3, 5, 7, 11]
    assert all(r.L1 > 0 and r.S_lam < math.sqrt(r.p) and math.isfinite(r.pv_stat) for r in rep.records)
    lines = rep.to_csv().splitlines()
    assert lines[0] == "p,L1,S_chi,S_lam,livigen_ratio,llam_quantity,pv_stat"
    assert lines[1].startswith("3,0.6045997881,0.6666666667,0.6666666667,")
    assert rep.max_livigen_ratio[0] in (3, 5, 7, 11)
