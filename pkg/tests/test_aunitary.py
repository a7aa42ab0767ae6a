"""Tensor-power grade norms, chain bounds, linear growth."""

from itertools import product

import pytest

from qcayley._core import backends
from qcayley.aunitary import (
    LegDecomposition,
    cg_bounds,
    cg_bounds_closed,
    check_index_independence,
    cn_lower,
    eta_chain,
    parseval_violations,
    ql_norm_sq,
    ql_sums,
)
from qcayley.errors import GateError
from qcayley.scalars import QQ


def test_leg_decomposition_invariants():
    for N in (2, 3, 4):
        for i, k in product(range(1, N + 1), repeat=2):
            leg = LegDecomposition.of(i, k, N)
            delta = 1 if i == k else 0
            assert leg.scalar_part_sq == QQ(delta, N * N)
            assert leg.traceless_part_sq == QQ(1, N) - QQ(delta, N * N)
            assert leg.total_sq == QQ(1, N)


def test_ql_norm_special_pattern_value():
    # k_l != i_l and matching beyond l: the norm is exactly m1^(l - 2n)
    assert ql_norm_sq((1, 1), (1, 2), 2, 3) == QQ(1, 9)
    assert ql_norm_sq((1, 1), (1, 2), 2, 3) == QQ(3) ** (-2 * 2 + 2)


def test_ql_norm_vanishes_on_mismatched_scalar_leg():
    assert ql_norm_sq((1, 2, 3), (1, 2, 1), 1, 3) == 0
    assert ql_norm_sq((1, 2), (2, 1), 0, 3) == 0


def test_ql_parseval_single_pair():
    total = sum(ql_norm_sq((1, 1), (1, 1), l, 3) for l in range(3))
    assert total == QQ(1, 9)


def test_parseval_exhaustive_small():
    for N in (2, 3, 4):
        for n in range(1, 5):
            assert parseval_violations(n, N) == 0


def test_ql_sums_factorize():
    # grade totals: S_0 = m1^{-2n}; S_l = (1 - m1^{-2}) m1^{-2(n-l)}
    N, n = 3, 4
    sums = ql_sums((1, 2, 3, 1), N)
    m1sq = QQ(N) ** 2
    assert sums[0] == m1sq ** (-n)
    for l in range(1, n + 1):
        assert sums[l] == (1 - 1 / m1sq) * m1sq ** (-(n - l))


def test_validation_errors():
    with pytest.raises(ValueError):
        ql_norm_sq((1, 2), (1,), 0, 3)
    with pytest.raises(ValueError):
        ql_norm_sq((1, 4), (1, 1), 0, 3)
    with pytest.raises(ValueError):
        ql_norm_sq((1, 1), (1, 1), 3, 3)


def test_eta_chain_norms_and_cutoff():
    chain = eta_chain(5, 2, 3)
    assert chain.norms_sq == (1, 9, 81, 729)  # stops at i = n - l + 1
    assert eta_chain(3, 3, 3).norms_sq == (1,)


def test_cg_bounds_frozen():
    assert cg_bounds(3, 1, 3) == (5, 86)
    assert cg_bounds(3, 3, 3) == (0, 1)
    assert cg_bounds(1, 0, 3) == (QQ(1, 2), QQ(1, 2) + 9)


def test_cg_bounds_closed_form_agrees():
    for n in range(1, 7):
        for l in range(n + 1):
            assert cg_bounds(n, l, 3) == cg_bounds_closed(n, l, 3)
            assert cg_bounds(n, l, 4) == cg_bounds_closed(n, l, 4)


def test_cg_bounds_ordering():
    for n in range(1, 6):
        for l in range(n + 1):
            lower, upper = cg_bounds(n, l, 3)
            assert 0 <= lower <= upper


def test_cn_lower_frozen_values():
    assert [cn_lower(n, 3) for n in (1, 2, 3)] == [QQ(1, 18), QQ(1, 9), QQ(1, 6)]


def test_cn_lower_enumeration_equals_closed_form():
    for N in (3, 4):
        for n in range(1, 7):
            assert cn_lower(n, N) == cn_lower(n, N, method="closed")


def test_cn_lower_linear_growth():
    values = [cn_lower(n, 3) for n in range(1, 11)]
    diffs = {b - a for a, b in zip(values, values[1:])}
    assert diffs == {QQ(1, 18)}
    assert all(v > 0 for v in values)
    # the double sum collapses to n / (2 N^2) for these grade totals
    assert all(cn_lower(n, 3, method="closed") == QQ(n, 18) for n in range(1, 11))
    assert all(cn_lower(n, 4, method="closed") == QQ(n, 32) for n in range(1, 8))


def test_cn_lower_independent_of_source_index():
    assert check_index_independence(3, 3)
    assert check_index_independence(2, 4)
    assert cn_lower(4, 3, i_idx=(2, 3, 1, 2)) == cn_lower(4, 3)


def test_dimension_two_gates():
    with pytest.raises(GateError):
        eta_chain(3, 1, 2)
    with pytest.raises(GateError):
        cg_bounds(3, 1, 2)
    with pytest.raises(GateError):
        cn_lower(3, 2)
    # the grade decomposition itself is dimension-agnostic
    assert parseval_violations(3, 2) == 0


def test_kernel_twins_agree():
    impls = backends()
    if "compiled" not in impls:
        pytest.skip("compiled kernels unavailable")
    for N, n, idx in ((3, 5, (1, 2, 3, 1, 2)), (4, 4, (4, 3, 2, 1))):
        assert impls["compiled"].ql_sums_scaled(N, n, idx) == \
            impls["python"].ql_sums_scaled(N, n, idx)
        assert impls["compiled"].cn_lower_scaled(N, n, idx) == \
            impls["python"].cn_lower_scaled(N, n, idx)
        assert impls["compiled"].parseval_violations(N, n) == \
            impls["python"].parseval_violations(N, n)
