"""Theorem checks that compare block-theoretic computations with closed forms.

Every check computes a "direct" side from contribution matrices and a
"formula" side from combinatorics alone, then compares them.  Reports share
one JSON shape::

    {"instance": {...}, "theorem": str, "pass": bool, "witnesses": [...], "data": {...}}
"""

from __future__ import annotations

import os
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Any

from .arith import euler_phi, pi_part
from .blocks import BlockReport, block_partition, validate_closed
from .normalizer import normalizer_model
from .partitions import (MultiPartition, Partition, boost_weight, ell_decompose,
                         enumerate_partitions, hook_lengths_divisible, is_ell_core)
from .symmetric import ell_regular_classes, sn_model
from .wreath import (WreathModel, congruence_value, cyclic_base, cyclic_regular_report,
                     reg_defect_formula, regular_classes)

#: generic wreath tables are used for ``Z_ell wr S_1`` up to this ``ell``
CYCLIC_ROUTE_THRESHOLD = 100
DEFAULT_MAX_CELLS = 4_000_000


def max_cells() -> int:
    """Largest ``classes^2`` a sweep builds a full table for (``ELLBLOCKS_MAX_CELLS``)."""
    raw = os.environ.get("ELLBLOCKS_MAX_CELLS")
    if raw is None:
        return DEFAULT_MAX_CELLS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"ELLBLOCKS_MAX_CELLS must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"ELLBLOCKS_MAX_CELLS must be positive, got {value}")
    return value


class TooLarge(ValueError):
    """An instance exceeds the table-size cap."""


@dataclass
class Report:
    """A pass/fail verdict with witnesses; ``data`` holds theorem-specific detail."""
    theorem: str
    instance: dict[str, Any]
    passed: bool
    witnesses: list[Any] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"instance": self.instance, "theorem": self.theorem, "pass": self.passed,
                "witnesses": self.witnesses, "data": self.data}


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# -- cached models -----------------------------------------------------------

@lru_cache(maxsize=None)
def sn_blocks(n: int, ell: int) -> BlockReport:
    """Blocks of ``S_n`` for the ``ell``-regular classes."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if ell < 2:
        raise ValueError(f"ell must be >= 2, got {ell}")
    model = sn_model(n)
    return block_partition(model, validate_closed(model, ell_regular_classes(n, ell)))


@lru_cache(maxsize=16)
def cyclic_wreath(ell: int, w: int) -> WreathModel:
    return WreathModel(cyclic_base(ell), w)


@lru_cache(maxsize=16)
def cyclic_wreath_blocks(ell: int, w: int) -> BlockReport:
    m = cyclic_wreath(ell, w)
    return block_partition(m, validate_closed(m, regular_classes(m), require_identity=False))


def _wreath_class_count(ell: int, w: int) -> int:
    """Number of ``ell``-multipartitions of ``w``."""
    counts = [1] + [0] * w
    part_counts = [len(enumerate_partitions(k)) for k in range(w + 1)]
    for _ in range(ell):
        counts = [sum(counts[j] * part_counts[k - j] for j in range(k + 1)) for k in range(w + 1)]
    return counts[w]


def _check_cells(nclasses: int, what: str) -> None:
    cap = max_cells()
    if nclasses * nclasses > cap:
        raise TooLarge(f"{what}: {nclasses}^2 table cells exceed ELLBLOCKS_MAX_CELLS = {cap}")


# -- symmetric groups ----------------------------------------------------------

def verify_nakayama(n: int, ell: int) -> Report:
    """Blocks of ``S_n`` for ``ell``-regular classes versus grouping by ``ell``-core."""
    report = sn_blocks(n, ell)
    parts = enumerate_partitions(n)
    by_core: dict[Partition, list[int]] = {}
    for i, lam in enumerate(parts):
        by_core.setdefault(ell_decompose(lam, ell).core, []).append(i)
    expected = tuple(sorted((tuple(v) for v in by_core.values()), key=lambda b: b[0]))
    witnesses = []
    if report.blocks != expected:
        block_of = {i: b for b in report.blocks for i in b}
        core_of = {i: c for c, v in by_core.items() for i in v}
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if (block_of[i] == block_of[j]) != (core_of[i] == core_of[j]):
                    witnesses.append({"pair": [str(parts[i]), str(parts[j])],
                                      "same_block": block_of[i] == block_of[j],
                                      "cores": [str(core_of[i]), str(core_of[j])]})
                    break
            if witnesses:
                break
    return Report("nakayama", {"n": n, "ell": ell}, report.blocks == expected, witnesses,
                  {"blocks": [[str(parts[i]) for i in b] for b in report.blocks],
                   "cores": [str(ell_decompose(parts[b[0]], ell).core) for b in report.blocks]})


def hook_defect_formula(lam, ell: int) -> int:
    """``prod |h|_pi`` over the hooks of ``lam`` of length divisible by ``ell`` (1 if none)."""
    return prod(pi_part(h, ell) for h in hook_lengths_divisible(lam, ell))


@dataclass(frozen=True)
class DefectRow:
    partition: Partition
    direct: int
    formula: int
    weight: int
    core: Partition
    quotient: MultiPartition

    def to_dict(self) -> dict:
        return {"partition": str(self.partition), "direct": self.direct, "formula": self.formula,
                "weight": self.weight, "core": str(self.core), "quotient": str(self.quotient)}


def defect_rows(n: int, ell: int) -> list[DefectRow]:
    report = sn_blocks(n, ell)
    rows = []
    for lam, d in zip(enumerate_partitions(n), report.defects):
        dec = ell_decompose(lam, ell)
        rows.append(DefectRow(lam, d, hook_defect_formula(lam, ell), dec.weight, dec.core,
                              dec.quotient))
    return rows


def verify_hook_defect(n: int, ell: int) -> Report:
    """Direct defects of ``S_n`` versus the product of pi-parts of ``ell``-divisible hooks."""
    rows = defect_rows(n, ell)
    bad = [r.to_dict() for r in rows if r.direct != r.formula or (r.weight == 0 and r.direct != 1)]
    return Report("hook-defect", {"n": n, "ell": ell}, not bad, bad,
                  {"rows": [r.to_dict() for r in rows]})


def verify_max_defect_weight(n: int, ell: int) -> Report:
    """Maximal-defect characters have weight ``w = n // ell``; weight boosts scale the defect.

    Needs ``n < ell^2``.  For every ``lam`` of weight ``v < w`` and every
    ``nu |- r`` the boosted partition ``mu`` must satisfy
    ``d(mu) = ell^(w - v) d(lam)``, both defects computed directly.
    """
    if n < 1 or ell < 2 or n >= ell * ell:
        raise ValueError(f"need n >= 1, ell >= 2 and n < ell^2, got n = {n}, ell = {ell}")
    w, r = divmod(n, ell)
    rows = defect_rows(n, ell)
    direct = {row.partition: row.direct for row in rows}
    top = max(direct.values())
    witnesses: list[Any] = [{"partition": str(row.partition), "weight": row.weight,
                             "defect": row.direct}
                            for row in rows if row.direct == top and row.weight != w]
    boosts = 0
    for row in rows:
        if row.weight >= w:
            continue
        for nu in enumerate_partitions(r):
            mu = boost_weight(row.partition, ell, w, nu)
            boosts += 1
            want = ell ** (w - row.weight) * row.direct
            if direct[mu] != want or mu.size != n:
                witnesses.append({"lambda": str(row.partition), "nu": str(nu), "mu": str(mu),
                                  "d_lambda": row.direct, "d_mu": direct[mu], "expected": want})
    return Report("max-weight", {"n": n, "ell": ell}, not witnesses, witnesses,
                  {"w": w, "r": r, "max_defect": top, "boosts_checked": boosts,
                   "attained_by": [str(row.partition) for row in rows if row.direct == top]})


# -- isometry ------------------------------------------------------------------

@dataclass
class IsometryReport(Report):
    pass


def find_sign_isometry(n: int, ell: int, core) -> IsometryReport:
    """Signs making ``chi_lam -> chi_{quotient(lam)}`` an isometry onto ``Z_ell wr S_w``.

    Contributions on the ``S_n`` side use the ``ell``-regular classes, on the
    wreath side the regular classes.  Signs are propagated along a spanning
    forest of nonzero entries from the least partition (which gets ``+1``);
    every entry is then checked.
    """
    core = Partition(core)
    if not is_ell_core(core, ell):
        raise ValueError(f"{core} is not a {ell}-core")
    w, rem = divmod(n - core.size, ell)
    if rem or w < 0:
        raise ValueError(f"|{core}| = {core.size} is not n - {ell} w for n = {n}")
    instance = {"n": n, "ell": ell, "core": str(core)}
    parts = enumerate_partitions(n)
    block = [i for i, lam in enumerate(parts) if ell_decompose(lam, ell).core == core]
    labels = [parts[i] for i in block]
    sn = sn_blocks(n, ell)
    if w == 0:
        (i,) = block
        ok = sn.contribution(i, i) == 1 and sn.defects[i] == 1
        return IsometryReport("isometry", instance, ok, [] if ok else [str(labels[0])],
                              {"block": [str(labels[0])], "image": [""], "signs": [1],
                               "w": 0})
    wr = cyclic_wreath(ell, w)
    wb = cyclic_wreath_blocks(ell, w)
    image = [wr.label_index(ell_decompose(lam, ell).quotient) for lam in labels]
    k = len(block)
    witnesses: list[Any] = []
    if k != wr.nchars or len(set(image)) != k:
        witnesses.append({"reason": f"block has {k} characters, wreath has {wr.nchars}"})
        return IsometryReport("isometry", instance, False, witnesses, {"w": w})
    S = [[sn.contribution(block[a], block[b]) for b in range(k)] for a in range(k)]
    W = [[wb.contribution(image[a], image[b]) for b in range(k)] for a in range(k)]
    for a in range(k):
        for b in range(k):
            if abs(S[a][b]) != abs(W[a][b]):
                witnesses.append({"pair": [str(labels[a]), str(labels[b])],
                                  "sn": _frac(S[a][b]), "wreath": _frac(W[a][b])})
    if witnesses:
        return IsometryReport("isometry", instance, False, witnesses[:10], {"w": w})
    # spanning forest from the least label
    order = sorted(range(k), key=lambda a: tuple(labels[a]))
    sign: list[int | None] = [None] * k
    for root in order:
        if sign[root] is not None:
            continue
        sign[root] = 1
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b in range(k):
                if sign[b] is None and S[a][b] != 0:
                    sign[b] = sign[a] * (1 if S[a][b] == W[a][b] else -1)
                    queue.append(b)
    for a in range(k):
        for b in range(k):
            if S[a][b] != sign[a] * sign[b] * W[a][b]:
                witnesses.append({"reason": "no sign assignment exists",
                                  "pair": [str(labels[a]), str(labels[b])],
                                  "signs": [sign[a], sign[b]]})
    for a in range(k):
        if sn.defects[block[a]] != wb.defects[image[a]]:
            witnesses.append({"reason": "defect not preserved", "partition": str(labels[a]),
                              "sn": sn.defects[block[a]], "wreath": wb.defects[image[a]]})
    return IsometryReport("isometry", instance, not witnesses, witnesses[:10], {
        "w": w,
        "block": [str(l) for l in labels],
        "image": [str(wr.labels[j]) for j in image],
        "signs": sign,
        "defects": [sn.defects[i] for i in block],
    })


# -- wreath products -------------------------------------------------------------

def wreath_reg_defects(ell: int, w: int):
    """Direct regular-class defects of ``Z_ell wr S_w``.

    Returns ``(label, shapes, defects, route)``: ``label(i)`` names character
    ``i``, ``shapes[i]`` is the sorted tuple of its nonempty label components,
    and ``route`` is ``"table"`` or ``"cyclic"`` (``w = 1`` beyond
    :data:`CYCLIC_ROUTE_THRESHOLD`, characters named ``a{i}``).
    """
    if w == 1 and ell > CYCLIC_ROUTE_THRESHOLD:
        rep = cyclic_regular_report(ell)
        return (lambda i: f"a{i}"), [(Partition((1,)),)] * ell, list(rep.defects), "cyclic"
    _check_cells(_wreath_class_count(ell, w), f"Z_{ell} wr S_{w}")
    labels = cyclic_wreath(ell, w).labels
    shapes = [tuple(sorted(p for p in l if p)) for l in labels]
    return (lambda i: str(labels[i])), shapes, list(cyclic_wreath_blocks(ell, w).defects), \
        "table"


def verify_wreath_defects(ell: int, w: int) -> Report:
    """Direct regular-class defects of ``Z_ell wr S_w`` versus ``ell^w (w!)_pi / chi(1)_pi``.

    The formula depends on the label only through its nonempty components, so
    it is evaluated once per component multiset.  The trivial character must
    reach ``ell^w (w!)_pi``.
    """
    if ell < 2 or w < 1:
        raise ValueError(f"need ell >= 2 and w >= 1, got ell = {ell}, w = {w}")
    label, shapes, direct, route = wreath_reg_defects(ell, w)
    formula = {shape: reg_defect_formula(ell, w, shape) for shape in set(shapes)}
    witnesses = [{"label": label(i), "direct": d, "formula": formula[shape]}
                 for i, (shape, d) in enumerate(zip(shapes, direct)) if d != formula[shape]]
    top = ell ** w * pi_part(factorial(w), ell)
    if direct[0] != top:
        witnesses.append({"label": label(0), "direct": direct[0], "trivial_expected": top})
    return Report("wreath-defect", {"ell": ell, "w": w}, not witnesses, witnesses[:10],
                  {"route": route, "characters": len(direct), "trivial_defect": direct[0],
                   "defects": {str(d): c for d, c in sorted(Counter(direct).items())}})


def verify_congruence(ell: int, w: int) -> Report:
    """``ell^w w! <chi, 1>_reg / chi(1)`` is an integer ``= (-1)^w (mod ell)`` for every ``chi``."""
    if ell < 2 or w < 1:
        raise ValueError(f"need ell >= 2 and w >= 1, got ell = {ell}, w = {w}")
    witnesses = []
    if w == 1 and ell > CYCLIC_ROUTE_THRESHOLD:
        values = list(cyclic_regular_report(ell).congruence_values())
        witnesses = [{"label": f"a{i}", "value": q} for i, q in enumerate(values) if (q + 1) % ell]
        route = "cyclic"
    else:
        _check_cells(_wreath_class_count(ell, w), f"Z_{ell} wr S_{w}")
        m = cyclic_wreath(ell, w)
        num = cyclic_wreath_blocks(ell, w).numerators[:, m.trivial]
        values, labels = [], [str(l) for l in m.labels]
        for chi, lab in enumerate(labels):
            try:
                values.append(congruence_value(m, ell, chi, numerators=num))
            except AssertionError as e:
                witnesses.append({"label": lab, "error": str(e)})
        route = "table"
    return Report("congruence", {"ell": ell, "w": w}, not witnesses, witnesses[:10],
                  {"route": route,
                   "values": {str(q): c for q, c in sorted(Counter(values).items())}})


# -- normalizer comparisons -------------------------------------------------------

@dataclass
class McKayReport(Report):
    pass


def _mckay_sides(ell: int, w: int, r: int):
    if not (1 <= w < ell and 0 <= r < ell):
        raise ValueError(f"need 1 <= w < ell and 0 <= r < ell, got ({ell}, {w}, {r})")
    n = ell * w + r
    sn = sn_blocks(n, ell)
    parts = enumerate_partitions(n)
    weights = [ell_decompose(lam, ell).weight for lam in parts]
    nm = normalizer_model(ell, w, r)
    nb = block_partition(nm.model, nm.class_set)
    return n, parts, sn, weights, nm, nb


def mckay_counts(ell: int, w: int, r: int) -> McKayReport:
    """Numbers of maximal-defect characters of ``S_n`` and of the Sylow normalizer model."""
    n, parts, sn, weights, nm, nb = _mckay_sides(ell, w, r)
    expected = ell ** w * pi_part(factorial(w), ell)
    top_s, top_n = sn.defects[0], nb.defects[nm.model.trivial]
    count_s = sum(d == top_s for d in sn.defects)
    count_n = sum(d == top_n for d in nb.defects)
    witnesses = []
    if top_s != expected or top_n != expected:
        witnesses.append({"max_defect_sn": top_s, "max_defect_normalizer": top_n,
                          "expected": expected})
    if max(sn.defects) != top_s or max(nb.defects) != top_n:
        witnesses.append({"reason": "trivial character is not of maximal defect"})
    if count_s != count_n:
        witnesses.append({"count_sn": count_s, "count_normalizer": count_n})
    return McKayReport("mckay", {"ell": ell, "w": w, "r": r, "n": n}, not witnesses,
                       witnesses, {"max_defect": expected, "count_sn": count_s,
                                   "count_normalizer": count_n,
                                   "normalizer_order": nm.model.order})


def per_defect_counts(ell: int, w: int, r: int) -> McKayReport:
    """Per-defect histograms: weight-``w`` characters of ``S_n`` versus all of the normalizer."""
    n, parts, sn, weights, nm, nb = _mckay_sides(ell, w, r)
    hist_s = Counter(d for d, v in zip(sn.defects, weights) if v == w)
    hist_n = Counter(nb.defects)
    deltas = sorted((set(hist_s) | set(hist_n)) - {1})
    witnesses = [{"defect": d, "count_sn": hist_s[d], "count_normalizer": hist_n[d]}
                 for d in deltas if hist_s[d] != hist_n[d]]
    return McKayReport("per-defect", {"ell": ell, "w": w, "r": r, "n": n}, not witnesses,
                       witnesses[:1], {
                           "histogram_sn": {str(d): hist_s[d] for d in sorted(hist_s)},
                           "histogram_normalizer": {str(d): hist_n[d] for d in sorted(hist_n)},
                       })


# -- sweep ranges -----------------------------------------------------------------

def nakayama_instances(nmax: int = 10) -> list[tuple[int, int]]:
    return [(n, ell) for n in range(2, nmax + 1) for ell in range(2, n + 1)]


def isometry_instances(nmax: int = 10) -> list[tuple[int, int, Partition]]:
    out = []
    for n, ell in nakayama_instances(nmax):
        cores = {ell_decompose(lam, ell).core for lam in enumerate_partitions(n)}
        for core in sorted(cores, key=lambda c: (-c.size, tuple(c))):
            if core.size < n:
                out.append((n, ell, core))
    return out


def wreath_instances(bound: int = 5000) -> list[tuple[int, int]]:
    out = []
    w = 1
    while 2 ** w * factorial(w) <= bound:
        ell = 2
        while ell ** w * factorial(w) <= bound:
            out.append((ell, w))
            ell += 1
        w += 1
    return sorted(out)


def max_weight_instances(nmax: int = 12) -> list[tuple[int, int, int]]:
    return [(ell, w, r) for ell in range(2, nmax + 1) for w in range(ell) for r in range(ell)
            if 1 <= ell * w + r <= nmax]


def mckay_instances(nmax: int = 12, bound: int = 5000) -> list[tuple[int, int, int]]:
    out = []
    for ell in range(2, nmax + 1):
        for w in range(1, ell):
            for r in range(ell):
                if ell * w + r <= nmax and \
                        (ell * euler_phi(ell)) ** w * factorial(w) * factorial(r) <= bound:
                    out.append((ell, w, r))
    return out
