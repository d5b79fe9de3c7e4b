"""Wreath products ``B wr S_w`` over a small base group ``B``.

Classes and characters are both labelled by ``s``-tuples of partitions of
``w``, ``s`` being the number of classes of ``B``.  A class label collects,
in component ``c``, the lengths of the cycles whose cycle product lies in
class ``c`` of ``B``; a character label puts in component ``i`` the partition
attached to the base character ``alpha_i``.  Character values come from the
wreath Murnaghan-Nakayama recursion

    chi_L(cls) = sum_i alpha_i(g_c) sum_{k-hooks h of L_i} (-1)^leg(h) chi_{L - h}(cls - cycle)

where ``(k, c)`` is the longest remaining cycle.  The recursion runs either
in exact cyclotomic arithmetic or in ``GF(p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd, lcm, prod
from typing import Callable, Sequence

import numpy as np

from .arith import CycloValue, divisors, pi_part, root_of_unity_mod, split_prime
from .blocks import ClassInfo, GroupModel, TheoremViolation
from .partitions import MultiPartition, Partition, enumerate_multipartitions, rim_hooks
from .symmetric import degree_hlf


def cyclic_base(ell: int, validate: bool = True) -> GroupModel:
    """``Z_ell`` with classes ``g_j = j`` and characters ``alpha_i(g_j) = zeta^(i j)``."""
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    classes = []
    for j in range(ell):
        o = ell // gcd(j, ell)
        classes.append(ClassInfo(str(j), 1, o, (-j) % ell,
                                 {k: (j * k) % ell for k in range(o) if gcd(k, o) == 1}))

    def table_mod(p, r):
        powers = [pow(r, e, p) for e in range(ell)]
        return np.array([[powers[(i * j) % ell] for j in range(ell)] for i in range(ell)],
                        dtype=np.int64 if p < (1 << 31) else object)

    return GroupModel(f"Z_{ell}", classes, [f"a{i}" for i in range(ell)],
                      lambda i, j: CycloValue.root(i * j, ell), ell,
                      table_mod=table_mod, validate=validate)


@dataclass(frozen=True)
class WreathClass:
    type: MultiPartition
    class_size: int
    centralizer_order: int
    element_order: int


def wreath_classes(base: GroupModel, w: int) -> list[WreathClass]:
    """Classes of ``base wr S_w`` with exact sizes, in multipartition enumeration order."""
    if w < 0:
        raise ValueError(f"w must be >= 0, got {w}")
    order = base.order ** w * factorial(w)
    out = []
    for t in enumerate_multipartitions(w, base.nclasses):
        cent = 1
        eo = 1
        for c, part in enumerate(t):
            z = base.order // base.classes[c].size
            for k, m in part.multiplicities().items():
                cent *= (k * z) ** m * factorial(m)
                eo = lcm(eo, k * base.classes[c].order)
        out.append(WreathClass(t, order // cent, cent, eo))
    return out


def _permute_type(t: tuple[tuple[int, Partition], ...],
                  target: Callable[[int], int]) -> tuple[tuple[int, Partition], ...]:
    """Sparse class type with component ``c`` moved to ``target(c)``."""
    return tuple(sorted((target(c), part) for c, part in t))


def _cycles(t: MultiPartition) -> tuple[tuple[int, int], ...]:
    """Cycles ``(length, base class)`` with the longest first."""
    return tuple(sorted(((k, c) for c, part in enumerate(t) for k in part), reverse=True))


class _Recursion:
    """Memoized wreath MN recursion over one coefficient ring.

    Labels are sparse: tuples of ``(component, nonempty partition)`` pairs.
    ``baseval(i, c)`` returns ``alpha_i(g_c)`` in the ring.
    """

    def __init__(self, baseval, zero, one, reduce=None):
        self.baseval = baseval
        self.zero, self.one = zero, one
        self.reduce = reduce
        self.memo: dict = {}

    def __call__(self, label: tuple[tuple[int, Partition], ...],
                 cycles: tuple[tuple[int, int], ...]):
        if not cycles:
            return self.one
        key = (label, cycles)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        (k, c), rest = cycles[0], cycles[1:]
        total = self.zero
        for pos, (i, part) in enumerate(label):
            hooks_k = rim_hooks(part, k)
            if not hooks_k:
                continue
            inner = self.zero
            for smaller, sign in hooks_k:
                sub_label = (label[:pos] + ((i, smaller),) + label[pos + 1:]) if smaller \
                    else label[:pos] + label[pos + 1:]
                sub = self(sub_label, rest)
                inner = inner + sub if sign > 0 else inner - sub
            if self.reduce is not None:
                inner = self.reduce(inner)
            total = total + self.baseval(i, c) * inner
        if self.reduce is not None:
            total = self.reduce(total)
        self.memo[key] = total
        return total


class _TensorRecursion:
    """The MN recursion in ``GF(p)``, vectorized over the base classes of the cycles.

    For a label and a tuple of cycle lengths it returns the tensor of values
    indexed by the base class of each cycle.  Values are class functions, so
    the tensor is symmetric in axes of equal length.
    """

    def __init__(self, base_table: np.ndarray, p: int):
        self.big = p >= (1 << 31)
        self.A = base_table.astype(object if self.big else np.int64)
        self.p = p
        self.s = base_table.shape[1]
        self.memo: dict = {}

    def __call__(self, label, lengths: tuple[int, ...]) -> np.ndarray:
        key = (label, lengths)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        p = self.p
        if not lengths:
            out = np.array(1, dtype=self.A.dtype)
        else:
            k, rest = lengths[0], lengths[1:]
            out = np.zeros((self.s,) * len(lengths), dtype=self.A.dtype)
            for pos, (i, part) in enumerate(label):
                hooks_k = rim_hooks(part, k)
                if not hooks_k:
                    continue
                inner = None
                for smaller, sign in hooks_k:
                    sub_label = (label[:pos] + ((i, smaller),) + label[pos + 1:]) if smaller \
                        else label[:pos] + label[pos + 1:]
                    sub = self(sub_label, rest) if sign > 0 else (-self(sub_label, rest)) % p
                    inner = sub if inner is None else (inner + sub) % p
                out = (out + np.multiply.outer(self.A[i], inner) % p) % p
        self.memo[key] = out
        return out

    def table(self, labels, cycles) -> np.ndarray:
        shapes: dict[tuple[int, ...], list[int]] = {}
        for c, cyc in enumerate(cycles):
            shapes.setdefault(tuple(k for k, _ in cyc), []).append(c)
        out = np.zeros((len(labels), len(cycles)), dtype=self.A.dtype)
        for lengths, cols in shapes.items():
            index = tuple(np.array([[b for _, b in cycles[c]][j] for c in cols], dtype=np.intp)
                          for j in range(len(lengths)))
            for row, label in enumerate(labels):
                out[row, cols] = self(label, lengths)[index]
        return out


def _sparse(label: MultiPartition) -> tuple[tuple[int, Partition], ...]:
    return tuple((i, part) for i, part in enumerate(label) if part)


class WreathModel(GroupModel):
    """``base wr S_w`` as a :class:`GroupModel`.

    ``labels[i]`` is the multipartition of character ``i`` and
    ``class_types[c]`` the :class:`WreathClass` of class ``c``; both follow
    :func:`~ellblocks.partitions.enumerate_multipartitions`, so character 0 is
    the trivial character when ``base`` lists its trivial character first.
    """

    def __init__(self, base: GroupModel, w: int, name: str | None = None,
                 validate: bool = True):
        if w < 1:
            raise ValueError(f"w must be >= 1, got {w}")
        self.base = base
        self.w = w
        self.class_types = wreath_classes(base, w)
        self.labels = enumerate_multipartitions(w, base.nchars)
        sparse_types = [_sparse(wc.type) for wc in self.class_types]
        index = {t: i for i, t in enumerate(sparse_types)}
        self._cycles = [_cycles(wc.type) for wc in self.class_types]
        infos = []
        for wc, t in zip(self.class_types, sparse_types):
            o = wc.element_order
            inv = index[_permute_type(t, lambda c: base.classes[c].inverse)]
            powers = {e: index[_permute_type(t, lambda c: base.classes[c].power(e))]
                      for e in range(o) if gcd(e, o) == 1}
            infos.append(ClassInfo(str(wc.type), wc.class_size, o, inv, powers))
        L = base.conductor
        self._sparse = [_sparse(lab) for lab in self.labels]
        self._exact = _Recursion(lambda i, c: base.value(i, c).lift(L),
                                 CycloValue.integer(0, L), CycloValue.integer(1, L))
        trivial = self.labels.index(MultiPartition(
            [Partition((w,)) if i == base.trivial else Partition() for i in range(base.nchars)]))
        super().__init__(name or f"{base.name} wr S_{w}", infos, [str(l) for l in self.labels],
                         self._value_exact, L, table_mod=self._table_mod, trivial=trivial,
                         validate=validate)

    def _value_exact(self, i: int, c: int) -> CycloValue:
        return self._exact(self._sparse[i], self._cycles[c])

    def _table_mod(self, p: int, r: int) -> np.ndarray:
        return _TensorRecursion(self.base.table_mod(p, r), p).table(self._sparse, self._cycles)

    def label_index(self, label) -> int:
        if isinstance(label, str):
            label = MultiPartition.parse(label)
        return self.labels.index(MultiPartition(label))

    def degree_formula(self, label) -> int:
        """``|B|^w w! / prod(|B|^k_i k_i!) * prod alpha_i(1)^k_i chi_{L_i}(1)``."""
        label = MultiPartition(label)
        B = self.base.order
        sizes = label.sizes
        num = B ** self.w * factorial(self.w)
        den = prod(B ** k * factorial(k) for k in sizes)
        base_deg = prod(self.base.degree(i) ** k for i, k in enumerate(sizes))
        return num // den * base_deg * prod(degree_hlf(part) for part in label)


def wreath_mn_value(model: WreathModel, label, cls) -> CycloValue:
    """Exact value of the character labelled ``label`` on the class of type ``cls``."""
    label = MultiPartition(label)
    if not isinstance(cls, WreathClass):
        cls = next(wc for wc in model.class_types if wc.type == MultiPartition(cls))
    if label.size != model.w or cls.type.size != model.w:
        raise ValueError(f"size mismatch: |{label}| = {label.size}, |{cls.type}| = {cls.type.size}")
    return model._exact(_sparse(label), _cycles(cls.type))


def regular_classes(model: WreathModel, singular: int | None = None) -> list[int]:
    """Classes with no cycle product in the base class ``singular`` (default: identity)."""
    if singular is None:
        singular = model.base.identity
    if not 0 <= singular < model.base.nclasses:
        raise ValueError(f"no base class {singular}")
    return [c for c, wc in enumerate(model.class_types) if not wc.type[singular]]


def reg_defect_formula(ell: int, w: int, label) -> int:
    """``ell^w (w!)_pi / chi(1)_pi`` for the character ``label`` of ``Z_ell wr S_w``.

    ``label`` is a multipartition; only its nonempty components matter, so a
    list of those may be passed instead.
    """
    parts = [Partition(p) for p in label if p]
    if sum(p.size for p in parts) != w:
        raise ValueError(f"label of size {sum(p.size for p in parts)} for w = {w}")
    if w == 0:
        return 1
    deg = factorial(w) // prod(factorial(p.size) for p in parts) \
        * prod(degree_hlf(p) for p in parts)
    q, r = divmod(ell ** w * pi_part(factorial(w), ell), pi_part(deg, ell))
    if r:
        raise ArithmeticError(f"{ell}^{w} ({w}!)_pi not divisible by deg_pi for {label}")
    return q


class CongruenceViolation(TheoremViolation):
    pass


def congruence_value(model: WreathModel, ell: int, chi: int,
                     numerators: Sequence[int] | None = None) -> int:
    """``ell^w w! <chi, 1>_reg / chi(1)``, checked to be an integer ``= (-1)^w (mod ell)``.

    ``numerators`` may supply the trivial-character column of ``|G| <., .>_reg``.
    """
    from .blocks import contribution_numerators, validate_closed

    if numerators is None:
        C = validate_closed(model, regular_classes(model), require_identity=False)
        numerators = contribution_numerators(model, C, rows=[chi])[0]
        num = int(numerators[model.trivial])
    else:
        num = int(numerators[chi])
    deg = model.degree(chi)
    # |G| <chi, 1>_reg = num and |G| = ell^w w!
    q, r = divmod(num, deg)
    if r:
        raise CongruenceViolation(f"{model.labels[chi]}: {num}/{deg} is not an integer")
    if (q - (-1) ** model.w) % ell:
        raise CongruenceViolation(f"{model.labels[chi]}: {q} is not (-1)^{model.w} mod {ell}")
    return q


# -- Z_ell wr S_1 = Z_ell without a full table ---------------------------------

def _powers_mod(r: int, n: int, p: int) -> np.ndarray:
    """``r^0, ..., r^(n-1) mod p`` (``p < 2^31``) by a baby-step/giant-step outer product."""
    b = max(1, int(n ** 0.5) + 1)
    small = np.ones(b, dtype=np.int64)
    for k in range(1, b):
        small[k] = small[k - 1] * r % p
    big = np.ones(-(-n // b), dtype=np.int64)
    step = pow(r, b, p)
    for k in range(1, len(big)):
        big[k] = big[k - 1] * step % p
    return (np.multiply.outer(big, small) % p).ravel()[:n]


def cyclic_regular_sums(ell: int) -> list[int]:
    """``F[d] = sum_{g=1}^{ell-1} zeta^(d g)``, so ``|Z_ell| <a_i, a_j>_reg = F[i - j]``.

    ``F[d]`` only depends on ``gcd(d, ell)`` (the nonzero residues are permuted
    by units), so the sum is evaluated once per divisor.  The evaluation is in
    ``GF(p)`` with ``p > 2 ell``; ``|F[d]| < ell`` makes the lift exact.
    """
    if ell < 2:
        raise ValueError(f"ell must be >= 2, got {ell}")
    p = split_prime(ell, 2 * ell)
    if p >= (1 << 31):
        raise ValueError(f"ell = {ell} is too large for the cyclic route")
    pw = _powers_mod(root_of_unity_mod(ell, p), ell, p)
    g = np.arange(1, ell, dtype=np.int64)
    by_gcd = {}
    for d in divisors(ell):
        x = int(pw[(d * g) % ell].sum() % p)
        by_gcd[d] = x - p if x > p // 2 else x
    return [by_gcd[gcd(d, ell)] for d in range(ell)]


@dataclass(frozen=True)
class CyclicRegularReport:
    """Regular-class blocks and defects of ``Z_ell``; character ``i`` is ``a{i}``."""
    ell: int
    sums: tuple[int, ...]
    defects: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    def congruence_values(self) -> tuple[int, ...]:
        """``ell * <a_i, 1>_reg / a_i(1) = F[i]`` for every ``i``."""
        return self.sums


def cyclic_regular_report(ell: int) -> CyclicRegularReport:
    """Blocks and defects of ``Z_ell`` for the nonidentity classes, one row at a time.

    Row ``i`` of ``|G| <., .>_reg`` is ``F`` shifted by ``i``, so every
    character has the same defect and ``a_i ~ a_j`` exactly when ``i - j`` lies
    in the subgroup generated by ``{d : F[d] != 0}``.
    """
    sums = cyclic_regular_sums(ell)
    d = 1
    for x in sums:
        d = lcm(d, ell // gcd(x, ell))
    h = ell
    for k, x in enumerate(sums):
        if x:
            h = gcd(h, k)
    blocks = tuple(tuple(range(c, ell, h)) for c in range(h))
    return CyclicRegularReport(ell, tuple(sums), (d,) * ell, blocks)
