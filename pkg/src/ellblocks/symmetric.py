"""Conjugacy classes and integer character tables of symmetric groups.

Characters are labelled so that ``(n)`` is the trivial character and ``(1^n)``
the sign character.  Values come from the Murnaghan-Nakayama rule, stripping
the largest remaining cycle first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, gcd, lcm, prod

import numpy as np

from .arith import CycloValue
from .blocks import ClassInfo, GroupModel
from .partitions import Partition, enumerate_partitions, hook_lengths, rim_hooks


@dataclass(frozen=True)
class CycleType:
    partition: Partition
    class_size: int
    element_order: int

    @property
    def centralizer_order(self) -> int:
        return centralizer_order(self.partition)


def centralizer_order(rho) -> int:
    return prod(k ** m * factorial(m) for k, m in Partition(rho).multiplicities().items())


def cycle_type(rho) -> CycleType:
    rho = Partition(rho)
    n = rho.size
    return CycleType(rho, factorial(n) // centralizer_order(rho), lcm(*rho) if rho else 1)


def classes(n: int) -> list[CycleType]:
    """One entry per cycle type, in the order of :func:`enumerate_partitions`."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return [cycle_type(rho) for rho in enumerate_partitions(n)]


@lru_cache(maxsize=None)
def _mn(lam: Partition, rho: tuple[int, ...]) -> int:
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    return sum(sign * _mn(smaller, rest) for smaller, sign in rim_hooks(lam, k))


def mn_value(lam, rho) -> int:
    """``chi_lam`` on the class of cycle type ``rho`` (a partition or a :class:`CycleType`)."""
    if isinstance(rho, CycleType):
        rho = rho.partition
    lam, rho = Partition(lam), Partition(rho)
    if lam.size != rho.size:
        raise ValueError(f"size mismatch: |{lam}| = {lam.size}, |{rho}| = {rho.size}")
    return _mn(lam, tuple(rho))


def degree_hlf(lam) -> int:
    """Degree of ``chi_lam`` by the hook-length formula."""
    lam = Partition(lam)
    q, r = divmod(factorial(lam.size), prod(hook_lengths(lam)))
    if r:
        raise ArithmeticError(f"hook product of {lam} does not divide {lam.size}!")
    return q


def ell_regular_classes(n: int, ell: int) -> list[int]:
    """Indices into :func:`classes` of the cycle types with no part divisible by ``ell``."""
    if ell < 2:
        raise ValueError(f"ell must be >= 2, got {ell}")
    return [i for i, c in enumerate(classes(n)) if all(k % ell for k in c.partition)]


@dataclass(frozen=True)
class SnCharacterTable:
    n: int
    characters: tuple[Partition, ...]
    classes: tuple[CycleType, ...]
    values: np.ndarray  # int64, rows = characters, columns = classes

    def value(self, lam, rho) -> int:
        return int(self.values[self.characters.index(Partition(lam)),
                               [c.partition for c in self.classes].index(Partition(rho))])

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "characters": [str(l) for l in self.characters],
            "classes": [str(c.partition) for c in self.classes],
            "class_sizes": [str(c.class_size) for c in self.classes],
            "values": [[str(int(v)) for v in row] for row in self.values],
        }


class OrthogonalityError(ArithmeticError):
    """A constructed character table failed an orthogonality check."""


@lru_cache(maxsize=None)
def character_table(n: int) -> SnCharacterTable:
    """Full table of ``S_n``, checked against both orthogonality relations."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    parts = tuple(enumerate_partitions(n))
    cls = tuple(classes(n))
    values = np.array([[_mn(lam, tuple(c.partition)) for c in cls] for lam in parts],
                      dtype=np.int64).reshape(len(parts), len(cls))
    sizes = np.array([c.class_size for c in cls], dtype=np.int64)
    order = factorial(n)
    rows = (values * sizes) @ values.T
    if not np.array_equal(rows, order * np.eye(len(parts), dtype=np.int64)):
        raise OrthogonalityError(f"row orthogonality fails for S_{n}")
    cols = values.T @ values
    cents = np.array([c.centralizer_order for c in cls], dtype=np.int64)
    if not np.array_equal(cols, np.diag(cents)):
        raise OrthogonalityError(f"column orthogonality fails for S_{n}")
    values.setflags(write=False)
    return SnCharacterTable(n, parts, cls, values)


def sn_model(n: int, validate: bool = True) -> GroupModel:
    """``S_n`` as a :class:`~ellblocks.blocks.GroupModel` (``n = 0`` gives the trivial group)."""
    table = character_table(n)
    infos = []
    for c, ct in enumerate(table.classes):
        o = ct.element_order
        infos.append(ClassInfo(str(ct.partition), ct.class_size, o, c,
                               {k: c for k in range(o) if gcd(k, o) == 1}))
    return GroupModel(f"S_{n}", infos, [str(l) for l in table.characters],
                      lambda i, c: CycloValue.integer(int(table.values[i, c])),
                      int_table=table.values, validate=validate)
