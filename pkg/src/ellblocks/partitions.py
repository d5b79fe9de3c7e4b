"""Partitions, hooks, beta-sets and the abacus.

Conventions
-----------
A beta-set of ``lam`` of size ``m >= len(lam)`` is ``{lam_i - i + m}`` for
``i = 1..m`` (parts beyond ``len(lam)`` are zero).  On the ``ell``-abacus the
bead ``b`` sits on runner ``b % ell`` at level ``b // ell``.  Decompositions
always use ``m`` = least multiple of ``ell`` that is at least ``len(lam)``;
quotient component ``i`` is the partition whose beta-set is the list of bead
levels on runner ``i``.  Any multiple of ``ell`` gives the same quotient.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> Partition:
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def __str__(self) -> str:
        return ",".join(map(str, self)) if self else "-"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Inverse of ``str``: ``"3,3,1"``; ``"-"`` (or empty) is the empty partition."""
        text = text.strip()
        if text in ("", "-"):
            return cls()
        try:
            return cls(int(t) for t in text.split(","))
        except ValueError:
            raise ValueError(f"cannot parse partition {text!r}") from None


class MultiPartition(tuple):
    """Fixed-length tuple of partitions; components may be empty."""

    def __new__(cls, components: Iterable[Sequence[int]]):
        return super().__new__(cls, (c if isinstance(c, Partition) else Partition(c)
                                     for c in components))

    @property
    def size(self) -> int:
        return sum(c.size for c in self)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self)

    def __str__(self) -> str:
        return ";".join(str(c) for c in self)

    def __repr__(self) -> str:
        return f"MultiPartition({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> MultiPartition:
        return cls(Partition.parse(t) for t in text.split(";"))


@dataclass(frozen=True)
class Hook:
    row: int
    col: int
    arm: int
    leg: int

    @property
    def length(self) -> int:
        return self.arm + self.leg + 1


@dataclass(frozen=True)
class EllDecomposition:
    ell: int
    core: Partition
    quotient: MultiPartition
    weight: int


@dataclass(frozen=True)
class AbacusView:
    """Bead levels on each runner, for a beta-set whose size is a multiple of ``ell``."""
    ell: int
    runners: tuple[tuple[int, ...], ...]

    @property
    def nbeads(self) -> int:
        return sum(len(r) for r in self.runners)


# -- enumeration -------------------------------------------------------------

def _partitions_bounded(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partition_list(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions_bounded(n, n))


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order: ``(n)`` first, ``(1^n)`` last."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return list(_partition_list(n))


def _compositions(n: int, length: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``n`` into ``length`` parts, reverse lexicographic."""
    if length == 0:
        if n == 0:
            yield ()
        return
    a = [n] + [0] * (length - 1)
    while True:
        yield tuple(a)
        j = next((j for j in range(length - 2, -1, -1) if a[j]), None)
        if j is None:
            return
        tail = sum(a[j + 1:])
        a[j] -= 1
        a[j + 1:] = [tail + 1] + [0] * (length - j - 2)


def enumerate_multipartitions(n: int, length: int) -> list[MultiPartition]:
    """All ``length``-tuples of partitions of total size ``n``.

    Lexicographic by component; within a component larger sizes come first and
    partitions of equal size are in reverse lexicographic order.  The first
    entry is ``((n), -, ..., -)``.
    """
    if n < 0 or length < 0:
        raise ValueError(f"need n, length >= 0, got {n}, {length}")
    out = []
    for sizes in _compositions(n, length):
        out.extend(MultiPartition(t)
                   for t in itertools.product(*(_partition_list(k) for k in sizes)))
    return out


# -- hooks -------------------------------------------------------------------

def hooks(lam: Sequence[int]) -> list[Hook]:
    """One hook per cell, rows and columns 1-based, row-major order."""
    lam = Partition(lam)
    conj = lam.conjugate()
    return [Hook(i + 1, j + 1, lam[i] - j - 1, conj[j] - i - 1)
            for i in range(len(lam)) for j in range(lam[i])]


def hook_lengths(lam: Sequence[int]) -> list[int]:
    return [h.length for h in hooks(lam)]


def hook_lengths_divisible(lam: Sequence[int], ell: int) -> list[int]:
    """Sorted lengths of the hooks of ``lam`` divisible by ``ell``."""
    if ell < 2:
        raise ValueError(f"ell must be >= 2, got {ell}")
    return sorted(h for h in hook_lengths(lam) if h % ell == 0)


def beta_set(lam: Sequence[int], m: int | None = None) -> list[int]:
    """Decreasing beta-numbers ``lam_i - i + m`` (1-based ``i``), ``m`` defaults to ``len(lam)``."""
    if m is None:
        m = len(lam)
    if m < len(lam):
        raise ValueError("beta-set smaller than the number of parts")
    parts = list(lam) + [0] * (m - len(lam))
    return [p - i + m - 1 for i, p in enumerate(parts)]


def from_beta_set(beta: Iterable[int]) -> Partition:
    b = sorted(beta, reverse=True)
    if len(set(b)) != len(b) or (b and b[-1] < 0):
        raise ValueError(f"not a beta-set: {b}")
    m = len(b)
    return Partition(x - (m - 1 - i) for i, x in enumerate(b))


def remove_hook(lam: Sequence[int], h: Hook) -> tuple[Partition, int]:
    """Strip the rim hook attached to ``h``; returns the smaller partition and the leg length."""
    lam = Partition(lam)
    if not (1 <= h.row <= len(lam) and 1 <= h.col <= lam[h.row - 1]):
        raise ValueError(f"{h} is not a cell of {lam}")
    conj = lam.conjugate()
    if h.arm != lam[h.row - 1] - h.col or h.leg != conj[h.col - 1] - h.row:
        raise ValueError(f"{h} is not a hook of {lam}")
    beta = beta_set(lam)
    i = h.row - 1
    beta[i] -= h.length
    return from_beta_set(beta), h.leg


@lru_cache(maxsize=None)
def rim_hooks(lam: Partition, k: int) -> tuple[tuple[Partition, int], ...]:
    """Every removal of a rim hook of length ``k``: pairs ``(smaller partition, (-1)^leg)``."""
    beta = beta_set(lam)
    present = set(beta)
    out = []
    for i, b in enumerate(beta):
        if b - k >= 0 and b - k not in present:
            leg = sum(1 for x in beta if b - k < x < b)
            new = beta.copy()
            new[i] = b - k
            out.append((from_beta_set(new), -1 if leg % 2 else 1))
    return tuple(out)


# -- abacus ------------------------------------------------------------------

def _abacus_size(nparts: int, ell: int) -> int:
    return -(-nparts // ell) * ell


def abacus(lam: Sequence[int], ell: int, m: int | None = None) -> AbacusView:
    if ell < 2:
        raise ValueError(f"ell must be >= 2, got {ell}")
    if m is None:
        m = _abacus_size(len(lam), ell)
    if m % ell:
        raise ValueError("abacus size must be a multiple of ell")
    runners: list[list[int]] = [[] for _ in range(ell)]
    for b in beta_set(lam, m):
        runners[b % ell].append(b // ell)
    return AbacusView(ell, tuple(tuple(sorted(r)) for r in runners))


def from_abacus(view: AbacusView) -> Partition:
    return from_beta_set(level * view.ell + i
                         for i, runner in enumerate(view.runners) for level in runner)


def ell_decompose(lam: Sequence[int], ell: int) -> EllDecomposition:
    """``ell``-core, ``ell``-quotient and ``ell``-weight of ``lam``, read off the abacus."""
    lam = Partition(lam)
    view = abacus(lam, ell)
    quotient = MultiPartition(from_beta_set(r) for r in view.runners)
    core = from_abacus(AbacusView(ell, tuple(tuple(range(len(r))) for r in view.runners)))
    weight = quotient.size
    assert lam.size == core.size + ell * weight
    return EllDecomposition(ell, core, quotient, weight)


def ell_core(lam: Sequence[int], ell: int) -> Partition:
    return ell_decompose(lam, ell).core


def ell_weight(lam: Sequence[int], ell: int) -> int:
    return ell_decompose(lam, ell).weight


def is_ell_core(lam: Sequence[int], ell: int) -> bool:
    return not any(h % ell == 0 for h in hook_lengths(lam))


def recombine(core: Sequence[int], quotient: Sequence[Sequence[int]], ell: int) -> Partition:
    """The partition with the given ``ell``-core and ``ell``-quotient."""
    core = Partition(core)
    quotient = MultiPartition(quotient)
    if len(quotient) != ell:
        raise ValueError(f"quotient must have {ell} components, got {len(quotient)}")
    if not is_ell_core(core, ell):
        raise ValueError(f"{core} is not a {ell}-core")
    m = _abacus_size(len(core), ell)
    while True:
        runners = abacus(core, ell, m).runners
        if all(len(q) <= len(r) for q, r in zip(quotient, runners)):
            break
        m += ell
    levels = tuple(tuple(beta_set(q, len(r))) for q, r in zip(quotient, runners))
    return from_abacus(AbacusView(ell, levels))


def random_core_by_removal(lam: Sequence[int], ell: int, rng: random.Random) -> Partition:
    """Strip ``ell``-divisible rim hooks in random order until none remain."""
    lam = Partition(lam)
    while True:
        choices = [h for h in hooks(lam) if h.length % ell == 0]
        if not choices:
            return lam
        lam, _ = remove_hook(lam, rng.choice(choices))


def boost_weight(lam: Sequence[int], ell: int, target_w: int, nu: Sequence[int]) -> Partition:
    """A partition of ``|lam|`` with ``ell``-core ``nu`` and weight ``target_w``.

    Its ``ell``-divisible hooks are those of ``lam`` plus ``target_w - v`` hooks of
    length ``ell``, ``v`` being the weight of ``lam``.  The quotient of ``lam`` is
    kept on its own runners and a single bead is raised one level on each of the
    lowest-indexed runners that ``lam`` leaves empty.
    """
    lam, nu = Partition(lam), Partition(nu)
    dec = ell_decompose(lam, ell)
    v = dec.weight
    if target_w < v:
        raise ValueError(f"target weight {target_w} is below the weight {v} of {lam}")
    if target_w >= ell:
        raise ValueError(f"target weight {target_w} must be < ell = {ell}")
    if lam.size != ell * target_w + nu.size:
        raise ValueError(f"|nu| = {nu.size} does not match {lam.size} - {ell}*{target_w}")
    if not is_ell_core(nu, ell):
        raise ValueError(f"{nu} is not a {ell}-core")
    quotient = list(dec.quotient)
    free = [i for i, q in enumerate(quotient) if not q]
    for i in free[:target_w - v]:
        quotient[i] = Partition((1,))
    return recombine(nu, quotient, ell)
