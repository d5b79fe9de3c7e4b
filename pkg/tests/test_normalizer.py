from collections import Counter
from fractions import Fraction
from itertools import product
from math import gcd

import pytest

from ellblocks.arith import cyclo_as_rational, euler_phi
from ellblocks.blocks import TheoremViolation, block_partition, contribution
from ellblocks.normalizer import (build_holomorph, holomorph_blocks, normalizer_defects,
                                  normalizer_model, principal_labels, wreath_label)


def hol_elements(ell):
    units = [t for t in range(1, ell) if gcd(t, ell) == 1]
    return [(a, t) for a in range(ell) for t in units]


def mul(x, y, ell):
    return ((x[0] + x[1] * y[0]) % ell, (x[1] * y[1]) % ell)


def inv(x, ell):
    ti = pow(x[1], -1, ell)
    return ((-ti * x[0]) % ell, ti)


def brute_classes(ell):
    els = hol_elements(ell)
    out = set()
    for x in els:
        out.add(frozenset(mul(mul(g, x, ell), inv(g, ell), ell) for g in els))
    return out


@pytest.mark.parametrize("ell", range(2, 13))
def test_holomorph_structure(ell):
    hol = build_holomorph(ell)
    m = hol.model
    assert m.order == ell * euler_phi(ell)
    assert {frozenset(c) for c in hol.class_members} == brute_classes(ell)
    assert sum(m.degree(i) ** 2 for i in range(m.nchars)) == m.order
    assert m.characters[0] == "psi1" and m.degree(0) == 1
    assert set(hol.class_members[hol.pi_class]) == {(a, 1) for a in range(ell)
                                                     if gcd(a, ell) == 1}
    assert len(hol.principal) == ell


@pytest.mark.parametrize("ell", range(2, 8))
def test_character_values_on_elements(ell):
    """Row orthogonality summed over group elements, not classes."""
    hol = build_holomorph(ell)
    m = hol.model
    where = {x: c for c, cl in enumerate(hol.class_members) for x in cl}
    els = hol_elements(ell)
    for i in range(m.nchars):
        for j in range(m.nchars):
            total = sum((m.value(i, where[x]) * m.value(j, where[inv(x, ell)]) for x in els),
                        start=m.value(0, 0) * 0)
            assert cyclo_as_rational(total) == (m.order if i == j else 0)


def test_holomorph_degrees():
    for ell, degrees in [(3, [1, 1, 2]), (4, [1, 1, 1, 1, 2]), (5, [1, 1, 1, 1, 4])]:
        m = build_holomorph(ell).model
        assert sorted(m.degree(i) for i in range(m.nchars)) == degrees
    assert len(build_holomorph(4).model.classes) == 5
    with pytest.raises(ValueError):
        build_holomorph(1)


@pytest.mark.parametrize("ell", range(2, 8))
def test_holomorph_blocks(ell):
    rep = holomorph_blocks(ell)
    hol = build_holomorph(ell)
    assert rep.blocks[0] == tuple(range(ell))
    assert len(rep.blocks) == 1 + hol.model.nchars - ell
    # four of the five classes of Hol(Z_4) avoid pi
    assert len(rep.class_set) == hol.model.nclasses - 1


def test_normalizer_model_shapes():
    nm = normalizer_model(2, 1, 1)
    assert nm.model.order == 2
    nm = normalizer_model(3, 1, 0)
    assert nm.model.order == 6
    nm = normalizer_model(4, 2, 1)
    assert nm.model.order == 128
    assert nm.split(7) == divmod(7, nm.sym.nchars)
    for bad in [(4, 0, 0), (4, 4, 0), (4, 1, 4), (3, 1, -1), (1, 1, 0)]:
        with pytest.raises(ValueError):
            normalizer_model(*bad)


@pytest.mark.parametrize("ell, w, r, defects", [
    (2, 1, 1, [2, 2]),
    (3, 1, 0, [3, 3, 3]),
    (4, 1, 0, [4, 4, 4, 4, 1]),
])
def test_normalizer_defects_examples(ell, w, r, defects):
    nm = normalizer_model(ell, w, r)
    rep = normalizer_defects(nm)
    assert list(rep.defects) == defects


def test_contributions_of_hol_three():
    nm = normalizer_model(3, 1, 0)
    rep = normalizer_defects(nm)
    for i in range(3):
        assert rep.contribution(i, i) == Fraction(2, 3)
        for j in range(3):
            if i != j:
                assert abs(rep.contribution(i, j)) == Fraction(1, 3)


@pytest.mark.parametrize("ell, w, r", [(3, 2, 0), (3, 2, 2), (5, 1, 3), (6, 1, 2), (5, 2, 0)])
def test_normalizer_block_shape(ell, w, r):
    nm = normalizer_model(ell, w, r)
    rep = normalizer_defects(nm)
    b0 = principal_labels(nm)
    top = rep.defects[nm.model.trivial]
    for i, d in enumerate(rep.defects):
        a, _ = nm.split(i)
        if d == top:
            assert a in b0
        lab = wreath_label(nm, i)
        assert lab.size == w


def test_ell_four_weight_two_has_an_extra_block():
    nm = normalizer_model(4, 2, 0)
    with pytest.raises(TheoremViolation, match="neither a singleton"):
        normalizer_defects(nm)


def test_extra_block_by_element_enumeration():
    """<Ind(psi1 x psi5), Ind(psi2 x psi5)>_reg in Hol(Z_4) wr S_2, summed over elements."""
    ell = 4
    hol = build_holomorph(ell)
    m = hol.model
    where = {x: c for c, cl in enumerate(hol.class_members) for x in cl}
    els = sorted(where)

    def psi(i, x):
        return cyclo_as_rational(m.value(i, where[x]))

    def induced(i, j, h, swap):
        if swap:
            return 0
        return psi(i, h[0]) * psi(j, h[1]) + psi(j, h[0]) * psi(i, h[1])

    total = Fraction(0)
    order = len(els) ** 2 * 2
    for swap in (False, True):
        for h in product(els, repeat=2):
            products = [mul(h[0], h[1], ell)] if swap else list(h)
            if any(where[g] == hol.pi_class for g in products):
                continue
            hinv = (inv(h[1], ell), inv(h[0], ell)) if swap else (inv(h[0], ell), inv(h[1], ell))
            total += induced(0, 4, h, swap) * induced(1, 4, hinv, swap)
    value = total / order
    assert abs(value) == Fraction(1, 4)
    nm = normalizer_model(4, 2, 0)
    wr = nm.wreath
    a = wr.label_index("1;-;-;-;1")
    b = wr.label_index("-;1;-;-;1")
    rep = block_partition(nm.model, nm.class_set)
    assert rep.contribution(a, b) == value
    assert rep.block_of(a) == tuple(sorted(wr.label_index(s) for s in
                                           ("1;-;-;-;1", "-;1;-;-;1", "-;-;1;-;1", "-;-;-;1;1")))
    assert contribution(nm.model, a, b, nm.class_set) == value


@pytest.mark.parametrize("ell", [6, 10])
def test_squarefree_weight_two_blocks(ell):
    nm = normalizer_model(ell, 1, 0) if ell == 10 else normalizer_model(ell, 2, 0)
    rep = normalizer_defects(nm)
    assert Counter(len(b) for b in rep.blocks)[1] == len(rep.blocks) - 1
