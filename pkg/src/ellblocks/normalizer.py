"""The holomorph ``N = Z_ell x| U(ell)`` and the model ``(N wr S_w) x S_r``.

``N`` is realised as pairs ``(a, t)`` with ``a`` mod ``ell`` and ``t`` a unit,
multiplied by ``(a, t)(a', t') = (a + t a', t t')``; ``pi = (1, 1)`` generates
the normal cyclic subgroup.  Classes come from brute-force conjugation.
Characters come from Clifford theory over the abelian normal subgroup: for a
character ``a_j`` of ``Z_ell`` with stabilizer ``U_j`` in the unit group, each
character ``b`` of ``U_j`` gives

    chi_{j,b}(a, t) = [t in U_j] b(t) sum_{s in U / U_j} zeta_ell^(j s^-1 a).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

from .arith import CycloValue
from .blocks import (BlockReport, ClassInfo, ClosedClassSet, GroupModel, TheoremViolation,
                     block_partition, direct_product, validate_closed)
from .partitions import MultiPartition
from .symmetric import sn_model
from .wreath import WreathModel, regular_classes

Element = tuple[int, int]


def _units(ell: int) -> list[int]:
    return [t for t in range(1, ell + 1) if gcd(t, ell) == 1 and t < ell] or [1 % ell]


def _mul(x: Element, y: Element, ell: int) -> Element:
    return ((x[0] + x[1] * y[0]) % ell, (x[1] * y[1]) % ell)


def _inv(x: Element, ell: int) -> Element:
    ti = pow(x[1], -1, ell) if ell > 1 else 0
    return ((-ti * x[0]) % ell, ti)


def _power(x: Element, k: int, ell: int) -> Element:
    out: Element = (0, 1 % ell)
    for _ in range(k):
        out = _mul(out, x, ell)
    return out


def _order(x: Element, ell: int) -> int:
    one = (0, 1 % ell)
    k, y = 1, x
    while y != one:
        y = _mul(y, x, ell)
        k += 1
    return k


def _abelian_characters(elements: list[int], ell: int) -> list[dict[int, tuple[int, int]]]:
    """Characters of a subgroup of ``U(ell)`` as maps ``t -> (k, e)`` meaning ``zeta_e^k``."""
    one = 1 % ell
    e = 1
    for t in elements:
        e = lcm(e, _order((0, t), ell))
    gens: list[int] = []
    span = {one: ()}
    for t in elements:
        if t in span:
            continue
        gens.append(t)
        frontier = list(span.items())
        while frontier:
            u, word = frontier.pop()
            v = (u * t) % ell
            if v not in span:
                w = list(word) + [0] * (len(gens) - len(word))
                w[-1] += 1
                span[v] = tuple(w)
                frontier.append((v, span[v]))
    found = []
    seen = set()
    # brute-force exponent assignments on the generators; keep the homomorphisms
    assignments = [()]
    for _ in gens:
        assignments = [a + (k,) for a in assignments for k in range(e)]
    for a in assignments:
        chi = {}
        for t, word in span.items():
            word = tuple(word) + (0,) * (len(gens) - len(word))
            chi[t] = sum(x * y for x, y in zip(a, word)) % e
        if all(chi[(s * t) % ell] == (chi[s] + chi[t]) % e for s in elements for t in elements):
            key = tuple(sorted(chi.items()))
            if key not in seen:
                seen.add(key)
                found.append({t: (k, e) for t, k in chi.items()})
    if len(found) != len(elements):
        raise ArithmeticError(f"found {len(found)} characters for a group of order {len(elements)}")
    return found


@dataclass(frozen=True, eq=False)
class HolomorphGroup:
    """``Hol(Z_ell)`` with its characters ordered principal block first."""
    ell: int
    model: GroupModel
    representatives: tuple[Element, ...]
    class_members: tuple[tuple[Element, ...], ...]
    pi_class: int
    # (orbit representative j, stabilizer character index) behind each psi_i
    origins: tuple[tuple[int, int], ...]
    principal: tuple[int, ...]


def _holomorph_raw(ell: int):
    units = _units(ell)
    elements = [(a, t) for a in range(ell) for t in units]
    seen: set[Element] = set()
    classes: list[tuple[Element, ...]] = []
    for x in elements:
        if x in seen:
            continue
        orbit = sorted({_mul(_mul(g, x, ell), _inv(g, ell), ell) for g in elements})
        seen.update(orbit)
        classes.append(tuple(orbit))
    where = {x: c for c, cl in enumerate(classes) for x in cl}
    infos = []
    for cl in classes:
        x = cl[0]
        o = _order(x, ell)
        powers = {k: where[_power(x, k, ell)] for k in range(o) if gcd(k, o) == 1}
        infos.append(ClassInfo(f"({x[0]},{x[1]})", len(cl), o, where[_inv(x, ell)], powers))

    exponent = 1
    for t in units:
        exponent = lcm(exponent, _order((0, t), ell))
    L = lcm(ell, exponent)
    chars = []  # (j, stabilizer elements, stabilizer character, transversal)
    done: set[int] = set()
    for j in range(ell):
        if j in done:
            continue
        done.update((j * t) % ell for t in units)
        m = ell // gcd(j, ell)
        stab = [t for t in units if (t - 1) % m == 0]
        transversal, covered = [], set()
        for s in units:
            if s not in covered:
                transversal.append(s)
                covered.update((s * t) % ell for t in stab)
        for b, beta in enumerate(_abelian_characters(stab, ell)):
            chars.append((j, b, beta, transversal))

    def value(i: int, c: int) -> CycloValue:
        j, _, beta, transversal = chars[i]
        a, t = classes[c][0]
        if t not in beta:
            return CycloValue.integer(0, L)
        k, e = beta[t]
        coeffs = [0] * L
        for s in transversal:
            sinv = pow(s, -1, ell) if ell > 1 else 0
            coeffs[((j * sinv * a) % ell) * (L // ell) % L] += 1
        return CycloValue(L, coeffs) * CycloValue.root(k * (L // e), L)

    return classes, infos, chars, value, L, where[(1 % ell, 1 % ell)]


@lru_cache(maxsize=None)
def build_holomorph(ell: int) -> HolomorphGroup:
    """``Hol(Z_ell)`` with an orthogonality-checked table; ``psi1`` is trivial and
    ``psi1..psi_ell`` form the principal block for the classes outside that of ``pi``."""
    if ell < 2:
        raise ValueError(f"ell must be >= 2, got {ell}")
    classes, infos, chars, value, L, pi = _holomorph_raw(ell)
    trivial = next(i for i, (j, _, beta, _) in enumerate(chars)
                   if j == 0 and all(k == 0 for k, _ in beta.values()))
    names = [f"ind(a{j},b{b})" for j, b, _, _ in chars]
    raw = GroupModel(f"Hol(Z_{ell})", infos, names, value, L, trivial=trivial)
    C = validate_closed(raw, [c for c in range(raw.nclasses) if c != pi])
    principal = block_partition(raw, C).block_of(trivial)
    order = [trivial] + [i for i in principal if i != trivial] \
        + [i for i in range(raw.nchars) if i not in principal]
    model = GroupModel(f"Hol(Z_{ell})", infos, [f"psi{k + 1}" for k in range(len(order))],
                       lambda i, c: raw.value(order[i], c), L, trivial=0)
    return HolomorphGroup(ell, model, tuple(cl[0] for cl in classes), tuple(classes), pi,
                          tuple(chars[i][:2] for i in order), tuple(range(len(principal))))


def holomorph_class_set(hol: HolomorphGroup) -> ClosedClassSet:
    return validate_closed(hol.model, [c for c in range(hol.model.nclasses) if c != hol.pi_class])


def holomorph_blocks(ell: int) -> BlockReport:
    """Blocks of ``Hol(Z_ell)`` for the complement of the class of ``pi``.

    Raises :class:`TheoremViolation` unless the principal block has exactly
    ``ell`` characters and all others are singletons.
    """
    hol = build_holomorph(ell)
    report = block_partition(hol.model, holomorph_class_set(hol))
    principal = report.block_of(hol.model.trivial)
    if len(principal) != ell:
        raise TheoremViolation(f"Hol(Z_{ell}): principal block has {len(principal)} "
                               f"characters, expected {ell}")
    for b in report.blocks:
        if b != principal and len(b) != 1:
            raise TheoremViolation(f"Hol(Z_{ell}): non-principal block of size {len(b)}: "
                                   f"{[hol.model.characters[i] for i in b]}")
    return report


@dataclass(frozen=True, eq=False)
class NormalizerModel:
    ell: int
    w: int
    r: int
    holomorph: HolomorphGroup
    wreath: WreathModel
    sym: GroupModel
    model: GroupModel
    class_set: ClosedClassSet

    def split(self, i: int) -> tuple[int, int]:
        """Character index ``i`` as (wreath character, S_r character)."""
        return divmod(i, self.sym.nchars)


def normalizer_model(ell: int, w: int, r: int, validate: bool = True) -> NormalizerModel:
    """``(Hol(Z_ell) wr S_w) x S_r`` with ``C`` = (regular classes) x (all classes of S_r)."""
    if ell < 2:
        raise ValueError(f"ell must be >= 2, got {ell}")
    if not 1 <= w < ell:
        raise ValueError(f"need 1 <= w < ell, got w = {w}, ell = {ell}")
    if not 0 <= r < ell:
        raise ValueError(f"need 0 <= r < ell, got r = {r}, ell = {ell}")
    hol = build_holomorph(ell)
    wr = WreathModel(hol.model, w, validate=validate)
    sym = sn_model(r, validate=validate)
    model = direct_product(wr, sym, name=f"({wr.name}) x S_{r}", validate=validate)
    reg = regular_classes(wr, singular=hol.pi_class)
    C = validate_closed(model, [c * sym.nclasses + d for c in reg for d in range(sym.nclasses)])
    return NormalizerModel(ell, w, r, hol, wr, sym, model, C)


def principal_labels(nm: NormalizerModel) -> list[int]:
    """Wreath characters whose labels live on the principal base characters."""
    k = len(nm.holomorph.principal)
    return [i for i, lab in enumerate(nm.wreath.labels) if not any(lab[k:])]


def normalizer_defects(nm: NormalizerModel) -> BlockReport:
    """Blocks and defects of the normalizer model.

    Raises :class:`TheoremViolation` unless every block is a singleton or the
    full set ``b_0 x {psi}``, ``b_0`` being the principal-label characters.
    """
    report = block_partition(nm.model, nm.class_set)
    b0 = principal_labels(nm)
    ns = nm.sym.nchars
    for block in report.blocks:
        if len(block) == 1:
            continue
        psi = block[0] % ns
        expected = tuple(sorted(a * ns + psi for a in b0))
        if block != expected:
            raise TheoremViolation(f"{nm.model.name}: block "
                                   f"{[nm.model.characters[i] for i in block]} is neither a "
                                   f"singleton nor b_0 x {{{nm.sym.characters[psi]}}}")
    return report


def wreath_label(nm: NormalizerModel, i: int) -> MultiPartition:
    return nm.wreath.labels[nm.split(i)[0]]
