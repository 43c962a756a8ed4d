"""Elementary symmetric functions and subset streams."""

import math

import numpy as np
import pytest

from bispectral.symfun import SubsetIndex, elementary_symmetric, subsets


def test_e1_two_variables():
    assert elementary_symmetric(1, [3.0, 5.0]) == pytest.approx(8.0)


def test_e2_direct_expansion():
    assert elementary_symmetric(2, [1.0, 2.0, 3.0]) == pytest.approx(11.0)


def test_e0_is_one():
    assert elementary_symmetric(0, [2.0, 9.0, -1.0]) == 1.0


def test_recursion_splits_last_variable():
    # e_r(z_1..z_n) = z_n e_{r-1}(z_1..z_{n-1}) + e_r(z_1..z_{n-1})
    rng = np.random.default_rng(5)
    for n in (2, 4, 6):
        z = [complex(a, b) for a, b in rng.standard_normal((n, 2))]
        for r in range(1, n):
            whole = elementary_symmetric(r, z)
            split = (z[-1] * elementary_symmetric(r - 1, z[:-1])
                     + elementary_symmetric(r, z[:-1]))
            assert whole == pytest.approx(split, rel=1e-12)
        # top order: e_n picks up only the z_n e_{n-1} term
        assert elementary_symmetric(n, z) == pytest.approx(
            z[-1] * elementary_symmetric(n - 1, z[:-1]), rel=1e-12)


def test_generating_function():
    # prod(1 + s y_i) = sum_r e_r(y) s^r
    rng = np.random.default_rng(6)
    for n in range(1, 9):
        y = [complex(a, b) for a, b in rng.standard_normal((n, 2))]
        s = complex(*rng.standard_normal(2))
        lhs = np.prod([1 + s * yi for yi in y])
        rhs = sum(elementary_symmetric(r, y) * s ** r for r in range(n + 1))
        assert lhs == pytest.approx(rhs, rel=1e-12)


@pytest.mark.parametrize("r", [-1, 4])
def test_elementary_range_error(r):
    with pytest.raises(ValueError):
        elementary_symmetric(r, [1.0, 2.0, 3.0])


def test_subsets_singletons():
    got = [s.members for s in subsets(3, 1)]
    assert got == [(1,), (2,), (3,)]


def test_subsets_counts_and_order():
    got = [s.members for s in subsets(4, 2)]
    assert len(got) == 6
    assert got == sorted(got)  # lexicographic, deterministic


def test_subsets_empty():
    got = list(subsets(5, 0))
    assert len(got) == 1 and got[0].members == ()


def test_pascal_property():
    for n in range(1, 9):
        for r in range(0, n + 1):
            count = sum(1 for _ in subsets(n, r))
            prev = sum(1 for _ in subsets(n - 1, r - 1)) if r >= 1 else 0
            same = sum(1 for _ in subsets(n - 1, r)) if r <= n - 1 else 0
            assert count == math.comb(n, r) == prev + same


def test_subsets_range_errors():
    with pytest.raises(ValueError):
        list(subsets(3, 4))
    with pytest.raises(ValueError):
        list(subsets(13, 1))


def test_subset_index_validation():
    with pytest.raises(ValueError):
        SubsetIndex(members=(2, 1), n=3)
    with pytest.raises(ValueError):
        SubsetIndex(members=(0, 1), n=3)
    sub = SubsetIndex(members=(1, 3), n=4)
    assert sub.complement() == (2, 4)
    assert sub.r == 2
