"""Acceptance criteria, one test and one printed PASS/FAIL line each.

All comparisons are exact.  Run with ``pytest -v tests/test_acceptance.py``;
the verdict lines are printed straight to the terminal.
"""

import time
from collections import Counter
from functools import cache
from math import factorial

import pytest

from ellblocks.blocks import block_partition, defect_one_diagnostics, validate_closed
from ellblocks.normalizer import build_holomorph, holomorph_blocks, normalizer_model
from ellblocks.partitions import (abacus, ell_decompose, enumerate_partitions, from_abacus,
                                  hook_lengths, hook_lengths_divisible, recombine)
from ellblocks.symmetric import character_table, classes, ell_regular_classes, sn_model
from ellblocks.verification import (cyclic_wreath, find_sign_isometry, isometry_instances,
                                    max_weight_instances, mckay_counts, mckay_instances,
                                    nakayama_instances, per_defect_counts, verify_congruence,
                                    verify_hook_defect, verify_max_defect_weight,
                                    verify_nakayama, verify_wreath_defects, wreath_instances)
from ellblocks.wreath import regular_classes

# the only instances whose per-defect histograms disagree; see README
PER_DEFECT_MISMATCHES = {(4, 2, 0), (4, 2, 1), (4, 2, 2), (4, 2, 3), (4, 3, 0)}


def verdict(capsys, number, title, failures, total, elapsed, extra=""):
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} [{title}]: {status} ({total - len(failures)}/{total} " \
           f"instances, {elapsed:.1f} s){extra}"
    if failures:
        line += f"; failing: {sorted(failures)[:8]}"
    with capsys.disabled():
        print("\n" + line)


def run_all(fn, instances):
    start = time.perf_counter()
    failures = [key for key in instances if not fn(*key).passed]
    return failures, time.perf_counter() - start


def test_criterion_1_nakayama(capsys):
    inst = nakayama_instances(10)
    failures, t = run_all(verify_nakayama, inst)
    verdict(capsys, 1, "S_n blocks = ell-core classes, 2 <= ell <= n <= 10", failures,
            len(inst), t)
    assert not failures and t < 300


def test_criterion_2_hook_defect(capsys):
    inst = nakayama_instances(10)
    failures, t = run_all(verify_hook_defect, inst)
    verdict(capsys, 2, "defect = pi-part of ell-divisible hook product", failures, len(inst), t)
    assert not failures and t < 300


def test_criterion_3_wreath_defects(capsys):
    inst = wreath_instances(5000)
    failures, t = run_all(verify_wreath_defects, inst)
    verdict(capsys, 3, "Z_ell wr S_w reg-defects, ell^w w! <= 5000", failures, len(inst), t)
    assert not failures and t < 120


def test_criterion_4_congruence(capsys):
    inst = wreath_instances(5000)
    failures, t = run_all(verify_congruence, inst)
    verdict(capsys, 4, "ell^w w! <chi,1>_reg / chi(1) = (-1)^w mod ell", failures, len(inst), t)
    assert not failures


def test_criterion_5_isometry(capsys):
    inst = isometry_instances(10)
    failures, t = run_all(find_sign_isometry, inst)
    verdict(capsys, 5, "signed quotient map is an isometry onto Z_ell wr S_w", failures,
            len(inst), t)
    assert not failures


def test_criterion_6_max_weight(capsys):
    inst = max_weight_instances(12)
    failures, t = run_all(lambda ell, w, r: verify_max_defect_weight(ell * w + r, ell), inst)
    verdict(capsys, 6, "maximal defect forces weight w; boosts scale by ell^(w-v)", failures,
            len(inst), t)
    assert not failures


def test_criterion_7_holomorph(capsys):
    start = time.perf_counter()
    failures = []
    for ell in range(2, 8):
        try:
            holomorph_blocks(ell)
        except AssertionError:
            failures.append(ell)
    verdict(capsys, 7, "Hol(Z_ell): principal block of ell characters, rest singletons",
            failures, 6, time.perf_counter() - start)
    assert not failures


@cache
def mckay_results():
    start = time.perf_counter()
    inst = mckay_instances(12, 5000)
    counts = {key: mckay_counts(*key) for key in inst}
    hists = {key: per_defect_counts(*key) for key in inst}
    return inst, counts, hists, time.perf_counter() - start


def test_criterion_8a_maximal_defect_counts(capsys):
    inst, counts, _, t = mckay_results()
    failures = [k for k in inst if not counts[k].passed]
    verdict(capsys, "8a", "maximal-defect counts, S_n vs normalizer", failures, len(inst), t)
    assert not failures and t < 600


@pytest.mark.xfail(strict=True, reason="per-defect histograms differ for ell = 4, w >= 2")
def test_criterion_8b_per_defect_histograms(capsys):
    inst, _, hists, t = mckay_results()
    failures = [k for k in inst if not hists[k].passed]
    verdict(capsys, "8b", "per-defect histograms for delta != 1", failures, len(inst), t)
    assert not failures


def test_criterion_8b_mismatches_are_confined():
    """The histogram mismatches are exactly the ell = 4, w >= 2 instances, and in each
    the normalizer has a non-principal block that is not a singleton."""
    inst, _, hists, _ = mckay_results()
    assert {k for k in inst if not hists[k].passed} == PER_DEFECT_MISMATCHES
    for ell, w, r in PER_DEFECT_MISMATCHES:
        nm = normalizer_model(ell, w, r)
        rep = block_partition(nm.model, nm.class_set)
        principal = rep.block_of(nm.model.trivial)
        assert any(len(b) > 1 and b != principal for b in rep.blocks)


# -- criterion 9: structural properties ------------------------------------------

def structural_failures():
    fails = Counter()
    models = []
    for n in range(1, 13):
        t = character_table(n)  # raises on orthogonality failure
        if sum(c.class_size for c in classes(n)) != factorial(n):
            fails["class equation S_n"] += 1
        models.append((sn_model(n), [ell_regular_classes(n, ell) for ell in range(2, n + 1)]
                       if n <= 10 else []))
        for lam in t.characters:
            for ell in range(2, 7):
                d = ell_decompose(lam, ell)
                if recombine(d.core, d.quotient, ell) != lam or \
                        from_abacus(abacus(lam, ell)) != lam:
                    fails["roundtrip"] += 1
                div = hook_lengths_divisible(lam, ell)
                if len(div) != d.weight:
                    fails["weight = number of ell-divisible hooks"] += 1
                if Counter(div) != Counter(ell * h for q in d.quotient for h in hook_lengths(q)):
                    fails["ell-divisible hooks = ell x quotient hooks"] += 1
    for ell, w in wreath_instances(5000):
        if w == 1 and ell > 40 or (w > 1 and ell ** w > 400):
            continue
        m = cyclic_wreath(ell, w)
        if sum(c.size for c in m.classes) != m.order:
            fails["class equation wreath"] += 1
        models.append((m, [regular_classes(m)]))
    for ell in range(2, 13):
        hol = build_holomorph(ell)
        models.append((hol.model, [[c for c in range(hol.model.nclasses)
                                    if c != hol.pi_class]]))
    for key in mckay_instances(12, 5000):
        nm = normalizer_model(*key)
        models.append((nm.model, [nm.class_set.members]))
    for m, sets in models:
        for members in sets + [list(range(m.nclasses))]:
            C = validate_closed(m, members, require_identity=m.identity in members)
            rep = block_partition(m, C)
            for i in range(m.nchars):
                try:
                    defect_one_diagnostics(m, i, C, rep)
                except AssertionError:
                    fails["defect-1 equivalence"] += 1
    return fails, len(models)


def test_criterion_9_structural(capsys):
    start = time.perf_counter()
    fails, nmodels = structural_failures()
    failures = sorted(fails.items())
    verdict(capsys, 9, "orthogonality, class equations, roundtrips, hook identities, "
            "closure, defect-1 equivalence", failures, nmodels,
            time.perf_counter() - start, extra="" if failures else f"; {nmodels} models")
    assert not failures
