import pytest
from hypothesis import given
from hypothesis import strategies as st

from h4rep import partitions as P

# partition numbers p(0..12)
PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


def brute_partitions(n):
    out = set()

    def rec(left, maxp, acc):
        if left == 0:
            out.add(tuple(acc))
            return
        for p in range(min(left, maxp), 0, -1):
            rec(left - p, p, acc + [p])

    rec(n, n, [])
    return out


@pytest.mark.parametrize("n", range(13))
def test_counts(n):
    parts = P.enumerate_partitions(n)
    assert len(parts) == PARTITION_NUMBERS[n] == P.count(n)
    assert set(map(tuple, parts)) == brute_partitions(n)
    assert list(parts) == sorted(parts, reverse=True)


def test_parse_and_print():
    lam = P.parse("[4,2,2,1]")
    assert lam == P.Partition((1, 2, 4, 2))
    assert str(lam) == "[4,2,2,1]"
    assert P.parse("[2^3,1]") == P.Partition((2, 2, 2, 1))
    assert lam.weight == 9 and lam.length == 4
    assert P.mult(2, lam) == 2


partitions_small = st.integers(0, 9).flatmap(lambda n: st.sampled_from(P.enumerate_partitions(n)))


@given(partitions_small, st.integers(0, 4), st.integers(1, 5))
def test_bounded_subpartitions_match_bruteforce(lam, m, i):
    fast = P.bounded_subpartitions(lam, m, i)
    assert set(fast) == P.bounded_subpartitions_bruteforce(lam, m, i)
    assert len(set(fast)) == len(fast)
    for mu in fast:
        assert P.is_subpartition(mu, lam)


@given(partitions_small, st.integers(1, 4))
def test_insert_remove_roundtrip(lam, n):
    assert P.remove(P.insert(lam, n), (n,)) == lam


@given(partitions_small.filter(len), st.integers(1, 3), st.data())
def test_bump_unbump(mu, n, data):
    k = data.draw(st.integers(1, len(mu)))
    b = P.bump(mu, k, n)
    assert b.weight == mu.weight + n
    # some part of b strictly exceeds n and unbumping it recovers mu
    back = [P.unbump(b, t, n) for t in range(1, len(b) + 1)]
    assert mu in back


def test_unbump_refuses_small_parts():
    assert P.unbump((3, 1), 2, 1) is None
    assert P.unbump((3, 1), 1, 3) is None
    assert P.unbump((3, 1), 1, 2) == P.Partition((1, 1))


def test_remove_rejects_non_sub():
    with pytest.raises(ValueError):
        P.remove((3, 1), (2,))
