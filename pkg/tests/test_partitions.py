import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from ellblocks.partitions import (Hook, MultiPartition, Partition, abacus, boost_weight,
                                  ell_decompose, enumerate_multipartitions,
                                  enumerate_partitions, from_abacus, hook_lengths,
                                  hook_lengths_divisible, hooks, is_ell_core,
                                  random_core_by_removal, recombine, remove_hook)


def pentagonal_counts(nmax):
    p = [1] + [0] * nmax
    for n in range(1, nmax + 1):
        k, total = 1, 0
        while True:
            g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def cells_hooks(lam):
    """Hook lengths straight from the diagram, no conjugate shortcut."""
    cells = {(i, j) for i, part in enumerate(lam) for j in range(part)}
    out = []
    for i, j in sorted(cells):
        arm = sum(1 for (a, b) in cells if a == i and b > j)
        leg = sum(1 for (a, b) in cells if b == j and a > i)
        out.append(arm + leg + 1)
    return sorted(out)


@st.composite
def partitions(draw, nmax=14):
    n = draw(st.integers(0, nmax))
    return draw(st.sampled_from(enumerate_partitions(n)))


def test_enumerate_examples():
    assert enumerate_partitions(0) == [Partition()]
    assert enumerate_partitions(3) == [Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))]
    assert len(enumerate_partitions(10)) == 42


def test_partition_counts_match_pentagonal_recurrence():
    p = pentagonal_counts(25)
    for n in range(26):
        parts = enumerate_partitions(n)
        assert len(parts) == p[n]
        assert len(set(parts)) == len(parts)
        assert parts == sorted(parts, reverse=True)
        assert all(lam.size == n for lam in parts)


def test_partition_validation_and_text():
    assert str(Partition((3, 3, 1))) == "3,3,1"
    assert str(Partition()) == "-"
    assert Partition.parse("3,3,1") == Partition((3, 3, 1))
    assert Partition.parse("-") == Partition()
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))
    assert Partition((2, 0, 0)) == Partition((2,))
    assert MultiPartition.parse("2;-;1,1") == MultiPartition([(2,), (), (1, 1)])


def test_multipartitions():
    assert [str(m) for m in enumerate_multipartitions(2, 2)] == \
        ["2;-", "1,1;-", "1;1", "-;2", "-;1,1"]
    # sum over compositions of products of partition counts
    p = pentagonal_counts(6)
    for n in range(5):
        for s in range(1, 4):
            want = sum(p[a] * p[b] * p[n - a - b] if s == 3 else 0
                       for a in range(n + 1) for b in range(n + 1 - a))
            if s == 1:
                want = p[n]
            elif s == 2:
                want = sum(p[a] * p[n - a] for a in range(n + 1))
            assert len(enumerate_multipartitions(n, s)) == want
    with pytest.raises(ValueError):
        enumerate_multipartitions(-1, 2)


def test_hooks_examples():
    assert hook_lengths((1,)) == [1]
    assert sorted(hook_lengths((5,))) == [1, 2, 3, 4, 5]
    hs = hooks((2, 1))
    assert sorted(h.length for h in hs) == [1, 1, 3]
    top = next(h for h in hs if h.length == 3)
    assert (top.row, top.col, top.leg) == (1, 1, 1)
    assert sorted(hook_lengths((3, 3, 1)), reverse=True) == [5, 4, 3, 2, 2, 1, 1]


@given(partitions())
def test_hooks_match_diagram(lam):
    assert sorted(hook_lengths(lam)) == cells_hooks(lam)


def test_remove_hook_examples():
    three = next(h for h in hooks((2, 1)) if h.length == 3)
    assert remove_hook((2, 1), three) == (Partition(), 1)
    n_hook = next(h for h in hooks((4,)) if h.length == 4)
    assert remove_hook((4,), n_hook) == (Partition(), 0)
    assert remove_hook((1,), hooks((1,))[0]) == (Partition(), 0)
    with pytest.raises(ValueError):
        remove_hook((2, 1), Hook(2, 2, 0, 0))
    with pytest.raises(ValueError):
        remove_hook((2, 1), Hook(1, 1, 0, 0))


@given(partitions(), st.data())
def test_remove_hook_shrinks_by_length(lam, data):
    if not lam:
        return
    h = data.draw(st.sampled_from(hooks(lam)))
    smaller, leg = remove_hook(lam, h)
    assert smaller.size == lam.size - h.length
    assert leg == h.leg
    # the rim hook is the skew diagram lam / smaller: a connected strip
    assert all(a <= b for a, b in zip(smaller, lam))


def test_decompose_examples():
    d = ell_decompose((2, 1), 3)
    assert d.core == Partition() and d.weight == 1
    assert sorted(q.size for q in d.quotient) == [0, 0, 1]
    d = ell_decompose((2, 1), 2)
    assert d.core == Partition((2, 1)) and d.weight == 0 and d.quotient.size == 0
    for gamma in enumerate_partitions(2):
        for ell in (3, 4, 5):
            if is_ell_core(gamma, ell):
                for w in (1, 2):
                    lam = Partition(tuple(gamma) + (1,) * (ell * w))
                    assert ell_decompose(lam, ell).core == gamma


def test_single_box_quotients_biject_with_hooks_of_three():
    images = set()
    for i in range(3):
        q = [(), (), ()]
        q[i] = (1,)
        lam = recombine((), q, 3)
        assert lam.size == 3 and ell_decompose(lam, 3).quotient == MultiPartition(q)
        images.add(lam)
    assert images == {Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))}


def test_recombine_rejects():
    with pytest.raises(ValueError):
        recombine((2,), [(), ()], 2)
    with pytest.raises(ValueError):
        recombine((), [(), ()], 3)
    assert recombine((), [(), (), ()], 3) == Partition()


def test_hook_lengths_divisible_examples():
    assert hook_lengths_divisible((2, 1), 3) == [3]
    assert hook_lengths_divisible((2, 1), 2) == []
    assert hook_lengths_divisible((3, 3, 1), 3) == [3]


@pytest.mark.parametrize("n", range(0, 13))
def test_decomposition_sweep(n):
    for lam in enumerate_partitions(n):
        for ell in range(2, 7):
            d = ell_decompose(lam, ell)
            assert lam.size == d.core.size + ell * d.weight
            assert is_ell_core(d.core, ell)
            divisible = hook_lengths_divisible(lam, ell)
            assert len(divisible) == d.weight
            assert Counter(divisible) == Counter(ell * h for q in d.quotient
                                                 for h in hook_lengths(q))
            assert recombine(d.core, d.quotient, ell) == lam
            assert ell_decompose(lam.conjugate(), ell).core == d.core.conjugate()


@pytest.mark.parametrize("n", [6, 9, 12])
def test_core_is_independent_of_removal_order(n):
    rng = random.Random(n)
    for lam in enumerate_partitions(n):
        for ell in (2, 3, 4):
            core = ell_decompose(lam, ell).core
            for _ in range(20):
                assert random_core_by_removal(lam, ell, rng) == core


@given(partitions(30), st.integers(2, 8))
def test_abacus_roundtrip(lam, ell):
    view = abacus(lam, ell)
    assert view.nbeads % ell == 0
    assert from_abacus(view) == lam
    assert abacus(from_abacus(view), ell) == view
    pushed = type(view)(ell, tuple(tuple(range(len(r))) for r in view.runners))
    assert from_abacus(pushed) == ell_decompose(lam, ell).core


def test_boost_weight_examples():
    mu = boost_weight((3, 3, 1), 3, 2, (1,))
    assert mu.size == 7 and ell_decompose(mu, 3).weight == 2
    assert hook_lengths_divisible(mu, 3) == [3, 3]
    assert ell_decompose(mu, 3).core == Partition((1,))
    # no boost needed
    lam = Partition((4, 3))
    assert ell_decompose(lam, 3).weight == 2
    mu = boost_weight(lam, 3, 2, (1,))
    assert hook_lengths_divisible(mu, 3) == hook_lengths_divisible(lam, 3)
    # a core boosted all the way
    for lam in ((1,), (2,), (1, 1)):
        mu = boost_weight(lam, 5, 0, lam)
        assert mu == Partition(lam)
    mu = boost_weight((8,), 5, 1, (3,))
    assert hook_lengths_divisible(mu, 5) == [5]


def test_boost_weight_rejects():
    with pytest.raises(ValueError):
        boost_weight((3,), 3, 0, ())        # target below weight
    with pytest.raises(ValueError):
        boost_weight((3, 3), 3, 3, ())      # target >= ell... and size mismatch
    with pytest.raises(ValueError):
        boost_weight((3, 1), 3, 1, (2,))    # |nu| mismatch
    with pytest.raises(ValueError):
        boost_weight((2, 2), 2, 1, (2,))    # (2) is not a 2-core


@pytest.mark.parametrize("ell", [3, 4, 5])
def test_boost_weight_adds_ell_hooks(ell):
    for w in range(1, ell):
        for r in range(ell):
            n = ell * w + r
            if n > 12:
                continue
            for lam in enumerate_partitions(n):
                v = ell_decompose(lam, ell).weight
                if v > w:
                    continue
                for nu in enumerate_partitions(r):
                    if not is_ell_core(nu, ell):
                        continue
                    mu = boost_weight(lam, ell, w, nu)
                    assert mu.size == n
                    d = ell_decompose(mu, ell)
                    assert d.weight == w and d.core == nu
                    assert Counter(hook_lengths_divisible(mu, ell)) == \
                        Counter(hook_lengths_divisible(lam, ell)) + Counter({ell: w - v})
