"""Generalized blocks and defects of an abstract finite group.

A :class:`GroupModel` is a finite group given only by its conjugacy-class data
(sizes, element orders, inverse and power maps) and an exact character-value
function.  For a closed union of classes ``C`` containing the identity the
engine computes contributions

    <chi, psi>_C = (1/|G|) sum_{g in C} chi(g) psi(g^-1),

the block partition they induce and the defect of each character (least
``d`` making ``d * <chi, psi>_C`` integral for every ``psi``).

Two routes compute contributions.  :func:`contribution` sums exact
:class:`~ellblocks.arith.CycloValue` products and extracts a rational.
:func:`contribution_numerators` evaluates the whole table in ``GF(p)`` at a
primitive ``L``-th root of unity, ``p = 1 (mod L)``, ``p > 2|G|``.  For closed
``C`` each ``|G| <chi, psi>_C`` is a rational integer of absolute value at
most ``|G|`` (it is an algebraic integer fixed by the Galois group, and
Cauchy-Schwarz bounds it), so its residue mod ``p`` determines it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .arith import (CycloValue, cyclo_as_rational, root_of_unity_mod, split_prime,
                    unit_group_generators)

_LIMB = 1 << 16
_INT64_SAFE_PRIME = 1 << 31


class ModelError(ValueError):
    """Inconsistent class data or character values in a :class:`GroupModel`."""


class NotClosedError(ValueError):
    """A class set fails the closure condition."""


class TheoremViolation(AssertionError):
    """A computed object contradicts a statement the library verifies."""


@dataclass(eq=False)
class ClassInfo:
    label: str
    size: int
    order: int
    inverse: int
    # every unit k mod order (just k = 0 for the identity) -> class of x^k
    powers: dict[int, int] = field(default_factory=dict)

    def power(self, k: int) -> int:
        return self.powers[k % self.order]


class GroupModel:
    """Class data plus exact character values of a finite group.

    ``value(i, c)`` returns the value of character ``i`` on class ``c`` as a
    :class:`CycloValue` of conductor dividing ``conductor``.  Builders that can
    evaluate their table in ``GF(p)`` faster than value-by-value pass
    ``table_mod``; tables with integer values may pass ``int_table``.
    """

    def __init__(self, name: str, classes: Sequence[ClassInfo], characters: Sequence[str],
                 value: Callable[[int, int], CycloValue], conductor: int = 1, *,
                 table_mod: Callable[[int, int], np.ndarray] | None = None,
                 int_table: np.ndarray | None = None, trivial: int = 0,
                 validate: bool = True):
        self.name = name
        self.classes = list(classes)
        self.characters = list(characters)
        self.conductor = conductor
        self._value = value
        self._table_mod = table_mod
        self._int_table = int_table
        self._cache: dict[tuple[int, int], CycloValue] = {}
        self._mod_cache: dict[tuple[int, int], np.ndarray] = {}
        self.order = sum(c.size for c in self.classes)
        self.trivial = trivial
        ids = [i for i, c in enumerate(self.classes) if c.order == 1]
        if len(ids) != 1:
            raise ModelError(f"{name}: expected one identity class, found {len(ids)}")
        self.identity = ids[0]
        if validate:
            validate_model(self)

    def __repr__(self):
        return f"GroupModel({self.name!r}, order={self.order}, classes={len(self.classes)})"

    @property
    def nclasses(self) -> int:
        return len(self.classes)

    @property
    def nchars(self) -> int:
        return len(self.characters)

    @cached_property
    def class_sizes(self) -> np.ndarray:
        return np.array([c.size for c in self.classes], dtype=object)

    @cached_property
    def inverse(self) -> np.ndarray:
        return np.array([c.inverse for c in self.classes], dtype=np.intp)

    def value(self, i: int, c: int) -> CycloValue:
        key = (i, c)
        if key not in self._cache:
            self._cache[key] = self._value(i, c)
        return self._cache[key]

    def degree(self, i: int) -> int:
        return int(cyclo_as_rational(self.value(i, self.identity)))

    def int_table(self) -> np.ndarray | None:
        return self._int_table

    def table_mod(self, p: int, root: int, cache: bool = True) -> np.ndarray:
        """All values mapped to ``GF(p)`` under ``zeta_L -> root``, as an int64/object array."""
        key = (p, root)
        if key not in self._mod_cache:
            if not cache:
                return self._compute_table_mod(p, root)
            self._mod_cache[key] = self._compute_table_mod(p, root)
        return self._mod_cache[key]

    def _compute_table_mod(self, p: int, root: int) -> np.ndarray:
        if self._table_mod is not None:
            t = self._table_mod(p, root)
        elif self._int_table is not None:
            t = self._int_table.astype(object) % p
        else:
            t = np.array([[self.value(i, c).lift(self.conductor).mod(p, root)
                           for c in range(self.nclasses)] for i in range(self.nchars)],
                         dtype=object)
        dtype = np.int64 if p < _INT64_SAFE_PRIME else object
        if not (isinstance(t, np.ndarray) and t.dtype == dtype):
            t = np.asarray(t, dtype=object).astype(dtype)
        t = t.reshape(self.nchars, self.nclasses)
        t.setflags(write=False)
        return t

    @cached_property
    def modulus(self) -> tuple[int, int]:
        """The prime and root of unity used by the modular contribution engine."""
        p = split_prime(self.conductor, 2 * self.order)
        return p, root_of_unity_mod(self.conductor, p)


# -- validation --------------------------------------------------------------

def _lift_unit(u: int, L: int, order: int) -> int:
    """An integer congruent to ``u`` mod ``L`` and coprime to ``order``."""
    k = u
    while gcd(k, order) != 1:
        k += L
    return k


def validate_model(model: GroupModel) -> None:
    """Check class data, orthogonality and Galois-compatibility of the power maps."""
    n = model.nclasses
    if model.nchars != n:
        raise ModelError(f"{model.name}: {model.nchars} characters but {n} classes")
    for c, info in enumerate(model.classes):
        if info.size < 1:
            raise ModelError(f"{model.name}: class {info.label} has size {info.size}")
        if not 0 <= info.inverse < n or model.classes[info.inverse].inverse != c:
            raise ModelError(f"{model.name}: inverse map is not an involution at {info.label}")
        for k, d in info.powers.items():
            other = model.classes[d]
            if gcd(k, info.order) != 1 or other.size != info.size or other.order != info.order:
                raise ModelError(f"{model.name}: bad power map {info.label}^{k} -> {other.label}")
        if set(info.powers) != {k for k in range(info.order) if gcd(k, info.order) == 1}:
            raise ModelError(f"{model.name}: power map of {info.label} is incomplete")
        if info.power(-1) != info.inverse:
            raise ModelError(f"{model.name}: power -1 of {info.label} is not its inverse")
    every = ClosedClassSet(tuple(range(n)))
    num = contribution_numerators(model, every)
    if not np.array_equal(num, model.order * np.eye(n, dtype=np.int64)):
        raise ModelError(f"{model.name}: character table is not orthogonal")
    L = model.conductor
    if L == 1:
        p, r = model.modulus
        base = model.table_mod(p, r)
        for c, info in enumerate(model.classes):
            for k, d in info.powers.items():
                if not np.array_equal(base[:, d], base[:, c]):
                    raise ModelError(f"{model.name}: rational values differ on "
                                     f"{info.label} and its power {k}")
    else:
        p, r = model.modulus
        base = model.table_mod(p, r)
        for u in sorted(set(unit_group_generators(L)) | {L - 1}):
            twisted = model.table_mod(p, pow(r, u, p), cache=False)
            perm = [info.power(_lift_unit(u, L, info.order)) for info in model.classes]
            if not np.array_equal(twisted, base[:, perm]):
                raise ModelError(f"{model.name}: values not Galois-compatible for exponent {u}")


# -- closed class sets -------------------------------------------------------

@dataclass(frozen=True)
class ClosedClassSet:
    members: tuple[int, ...]

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, c):
        return c in self.members


def validate_closed(model: GroupModel, C: Iterable[int],
                    require_identity: bool = True) -> ClosedClassSet:
    """Check that ``C`` is closed under generator-preserving powers.

    The identity class is required unless ``require_identity`` is false, which
    the regular classes of ``Z_ell wr S_w`` need: the identity has trivial
    cycle products and is not regular.
    """
    members = tuple(sorted(set(C)))
    if require_identity and model.identity not in members:
        raise NotClosedError("identity missing from class set")
    mset = set(members)
    for c in members:
        info = model.classes[c]
        for k, d in sorted(info.powers.items()):
            if d not in mset:
                raise NotClosedError(f"not closed: {info.label}^{k} lies in "
                                     f"{model.classes[d].label}, outside the set")
    return ClosedClassSet(members)


# -- contributions -----------------------------------------------------------

def contribution(model: GroupModel, chi: int, psi: int, C: ClosedClassSet) -> Fraction:
    """Exact contribution by direct summation of cyclotomic values."""
    total = CycloValue.integer(0, model.conductor)
    for c in C:
        total = total + model.value(chi, c) * model.value(psi, model.classes[c].inverse) \
            * model.classes[c].size
    return cyclo_as_rational(total) / model.order


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` for entries in ``[0, p)``.

    ``b`` is cut into limbs small enough that every float64 BLAS product and
    partial sum stays below ``2^53``, so each limb product is exact.
    """
    if a.dtype == object or b.dtype == object:
        return (a.astype(object) @ b.astype(object)) % p
    n = max(a.shape[1], 1)
    bits = 52 - n.bit_length() - p.bit_length()
    if bits < 8:
        lo, hi = b & (_LIMB - 1), b >> 16
        return ((a @ lo) % p + ((a @ hi) % p) * _LIMB % p) % p
    af = a.astype(np.float64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    shift = 0
    rest = b.copy()
    while True:
        limb = (rest & ((1 << bits) - 1)).astype(np.float64)
        part = np.rint(af @ limb).astype(np.int64) % p
        out = (out + part * pow(2, shift, p)) % p
        rest >>= bits
        shift += bits
        if not rest.any():
            return out


def contribution_numerators(model: GroupModel, C: ClosedClassSet,
                            rows: Sequence[int] | None = None) -> np.ndarray:
    """Integer matrix ``|G| * <chi, psi>_C`` (rows restricted to ``rows`` if given)."""
    members = np.array(list(C), dtype=np.intp)
    inv = model.inverse[members]
    sizes = model.class_sizes[members]
    rsel = slice(None) if rows is None else np.array(rows, dtype=np.intp)
    X = model.int_table()
    if X is not None and model.order < (1 << 62):
        left = X[rsel][:, members] * sizes.astype(np.int64)
        return left @ X[:, inv].T
    p, r = model.modulus
    T = model.table_mod(p, r)
    left = T[rsel][:, members]
    if T.dtype == object:
        left = (left * sizes) % p
    else:
        left = (left * (sizes % p).astype(np.int64)) % p
    num = _matmul_mod(left, np.ascontiguousarray(T[:, inv].T), p)
    num = np.where(num > p // 2, num - p, num)
    return num.astype(np.int64) if model.order < (1 << 62) else num


def _denominators(num: np.ndarray, order: int) -> np.ndarray:
    if num.dtype == object:
        return np.array([[order // gcd(int(x), order) for x in row] for row in num], dtype=object)
    return order // np.gcd(num, order)


def _row_lcms(dens: np.ndarray) -> tuple[int, ...]:
    if dens.dtype == object:
        return tuple(lcm(*(int(d) for d in row)) for row in dens)
    return tuple(int(d) for d in np.lcm.reduce(dens, axis=1))


# -- blocks and defects ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BlockReport:
    model_name: str
    characters: tuple[str, ...]
    class_set: ClosedClassSet
    order: int
    numerators: np.ndarray
    blocks: tuple[tuple[int, ...], ...]
    defects: tuple[int, ...]

    def contribution(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.numerators[i, j]), self.order)

    @cached_property
    def contributions(self) -> list[list[Fraction]]:
        return [[self.contribution(i, j) for j in range(len(self.characters))]
                for i in range(len(self.characters))]

    def block_of(self, i: int) -> tuple[int, ...]:
        return next(b for b in self.blocks if i in b)

    def to_dict(self, include_contributions: bool = True) -> dict:
        out = {
            "model": self.model_name,
            "class_set": list(self.class_set.members),
            "blocks": [[self.characters[i] for i in b] for b in self.blocks],
            "defects": {self.characters[i]: d for i, d in enumerate(self.defects)},
        }
        if include_contributions:
            out["contributions"] = [[f"{x.numerator}/{x.denominator}" for x in row]
                                    for row in self.contributions]
        return out


def _components(mask: np.ndarray) -> tuple[tuple[int, ...], ...]:
    n = mask.shape[0]
    _, labels = connected_components(csr_matrix(mask), directed=False)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(int(labels[i]), []).append(i)
    return tuple(sorted((tuple(g) for g in groups.values()), key=lambda g: g[0]))


def block_partition(model: GroupModel, C: ClosedClassSet) -> BlockReport:
    """Blocks, defects and the full contribution matrix for ``C``."""
    num = contribution_numerators(model, C)
    if not np.array_equal(num, num.T):
        raise ModelError(f"{model.name}: contribution matrix is not symmetric")
    defects = _row_lcms(_denominators(num, model.order))
    return BlockReport(model.name, tuple(model.characters), C, model.order, num,
                       _components(num != 0), defects)


def defect(model: GroupModel, chi: int, C: ClosedClassSet) -> int:
    """Least ``d >= 1`` with ``d * <chi, psi>_C`` integral for all ``psi``."""
    row = contribution_numerators(model, C, rows=[chi])
    return _row_lcms(_denominators(row, model.order))[0]


def vanishes_outside(model: GroupModel, chi: int, C: ClosedClassSet) -> bool:
    p, r = model.modulus
    T = model.table_mod(p, r)
    for c in range(model.nclasses):
        # a nonzero residue certifies a nonzero value; a zero residue is confirmed exactly
        if c not in C and (T[chi, c] != 0 or not model.value(chi, c).is_zero()):
            return False
    return True


class DefectOneDiagnostics(NamedTuple):
    defect_one: bool
    vanishes_outside: bool
    singleton_block: bool


def defect_one_diagnostics(model: GroupModel, chi: int, C: ClosedClassSet,
                           report: BlockReport | None = None) -> DefectOneDiagnostics:
    """The three equivalent forms of "defect 1"; raises if they disagree."""
    if report is None:
        report = block_partition(model, C)
    diag = DefectOneDiagnostics(report.defects[chi] == 1, vanishes_outside(model, chi, C),
                                report.block_of(chi) == (chi,))
    if len(set(diag)) != 1:
        raise TheoremViolation(f"{model.name}: defect-1 criteria disagree for "
                             f"{model.characters[chi]}: {diag}")
    return diag


# -- constructions -----------------------------------------------------------

def direct_product(a: GroupModel, b: GroupModel, name: str | None = None,
                   validate: bool = True) -> GroupModel:
    """``A x B`` with classes and characters indexed ``i * |B| + j``."""
    nb = b.nclasses
    classes = []
    for ia, ca in enumerate(a.classes):
        for ib, cb in enumerate(b.classes):
            o = lcm(ca.order, cb.order)
            powers = {k: ca.power(k) * nb + cb.power(k) for k in range(o) if gcd(k, o) == 1}
            classes.append(ClassInfo(f"({ca.label})x({cb.label})", ca.size * cb.size, o,
                                     ca.inverse * nb + cb.inverse, powers))
    chars = [f"{x}x{y}" for x in a.characters for y in b.characters]
    L = lcm(a.conductor, b.conductor)

    def value(i, c):
        return a.value(i // b.nchars, c // nb) * b.value(i % b.nchars, c % nb)

    def table_mod(p, r):
        ta = a.table_mod(p, pow(r, L // a.conductor, p))
        tb = b.table_mod(p, pow(r, L // b.conductor, p))
        t = (ta[:, None, :, None] * tb[None, :, None, :]) % p
        return t.reshape(a.nchars * b.nchars, a.nclasses * nb)

    int_table = None
    if a.int_table() is not None and b.int_table() is not None:
        ia, ib = a.int_table(), b.int_table()
        int_table = (ia[:, None, :, None] * ib[None, :, None, :]).reshape(
            a.nchars * b.nchars, a.nclasses * nb)
    return GroupModel(name or f"{a.name} x {b.name}", classes, chars, value, L,
                      table_mod=table_mod, int_table=int_table,
                      trivial=a.trivial * b.nchars + b.trivial, validate=validate)
