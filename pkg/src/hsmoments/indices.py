"""Hermite multi-indices, their canonical ordering, and chain-closed index sets.

A moment is identified by a multi-index ``alpha = (alpha_1, ..., alpha_D)``.
The wall-normal direction is the *second* component, so parity of
``alpha[1]`` decides whether a moment is even or odd with respect to the
wall.  Positions inside an :class:`IndexSet` are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterable, Sequence

from .errors import InvalidArgumentError

NORMAL_AXIS = 1  # 0-based slot of the wall-normal component


class MultiIndex(tuple):
    """Immutable tuple of non-negative integers with a cached norm."""

    def __new__(cls, components: Iterable[int]):
        comps = tuple(int(c) for c in components)
        if len(comps) < 1:
            raise InvalidArgumentError("a multi-index needs at least one component")
        if any(c < 0 for c in comps):
            raise InvalidArgumentError(f"negative component in {comps}")
        return super().__new__(cls, comps)

    @property
    def dim(self) -> int:
        return len(self)

    @property
    def norm(self) -> int:
        return sum(self)

    @property
    def normal(self) -> int:
        return self[NORMAL_AXIS]

    def shifted(self, axis: int, amount: int) -> "MultiIndex | None":
        """Return ``self + amount * e_axis`` or None if a component goes negative."""
        value = self[axis] + amount
        if value < 0:
            return None
        comps = list(self)
        comps[axis] = value
        return MultiIndex(comps)

    def __repr__(self) -> str:
        return f"MultiIndex{tuple(self)}"


def unit(dim: int, axis: int, scale: int = 1) -> MultiIndex:
    """``scale * e_axis`` in ``dim`` dimensions (axis is 0-based)."""
    comps = [0] * dim
    comps[axis] = scale
    return MultiIndex(comps)


def _sort_key(alpha: Sequence[int]):
    return (alpha[NORMAL_AXIS] % 2, sum(alpha), tuple(-a for a in alpha))


def compare_indices(a: Sequence[int], b: Sequence[int]) -> int:
    """Three-way comparison in the canonical moment ordering.

    Even normal component first, then by norm, then anti-lexicographically
    (a larger entry in the first differing slot sorts earlier).  Returns
    -1, 0 or 1.
    """
    if len(a) != len(b):
        raise InvalidArgumentError(f"dimension mismatch: {len(a)} vs {len(b)}")
    if len(a) <= NORMAL_AXIS:
        raise InvalidArgumentError("ordering needs D >= 2 (second component is wall-normal)")
    ka, kb = _sort_key(a), _sort_key(b)
    return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class IndexSet:
    """Ordered selection of multi-indices split by parity of the normal component.

    Instances built directly are not checked for chain closure; use
    :func:`build_index_set` or run :func:`validate_c1` before assembly.
    """

    order: int
    dim: int
    even: tuple[MultiIndex, ...]
    odd: tuple[MultiIndex, ...]
    _positions: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        positions = {alpha: k for k, alpha in enumerate(self.even + self.odd)}
        if len(positions) != len(self.even) + len(self.odd):
            raise InvalidArgumentError("duplicate multi-index in index set")
        object.__setattr__(self, "_positions", positions)

    @classmethod
    def from_indices(cls, indices: Iterable[Sequence[int]], order: int, dim: int) -> "IndexSet":
        """Deduplicate, sort canonically and split by parity."""
        uniq = {MultiIndex(a) for a in indices}
        for alpha in uniq:
            if alpha.dim != dim:
                raise InvalidArgumentError(f"{alpha} does not have dimension {dim}")
            if alpha.norm > order:
                raise InvalidArgumentError(f"{alpha} has norm above M={order}")
        ordered = sorted(uniq, key=cmp_to_key(compare_indices))
        even = tuple(a for a in ordered if a.normal % 2 == 0)
        odd = tuple(a for a in ordered if a.normal % 2 == 1)
        return cls(order=order, dim=dim, even=even, odd=odd)

    @property
    def m(self) -> int:
        return len(self.even)

    @property
    def n(self) -> int:
        return len(self.odd)

    @property
    def indices(self) -> tuple[MultiIndex, ...]:
        return self.even + self.odd

    def __len__(self) -> int:
        return len(self.even) + len(self.odd)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, alpha) -> bool:
        return MultiIndex(alpha) in self._positions

    def position(self, alpha: Sequence[int]) -> int:
        """0-based position of ``alpha`` in the full (even then odd) ordering."""
        try:
            return self._positions[MultiIndex(alpha)]
        except KeyError:
            raise KeyError(f"{tuple(alpha)} is not in the index set") from None

    def even_position(self, alpha: Sequence[int]) -> int:
        k = self.position(alpha)
        if k >= self.m:
            raise KeyError(f"{tuple(alpha)} is odd in the normal direction")
        return k

    def odd_position(self, alpha: Sequence[int]) -> int:
        k = self.position(alpha)
        if k < self.m:
            raise KeyError(f"{tuple(alpha)} is even in the normal direction")
        return k - self.m


def chain(gamma: Sequence[int], order: int) -> list[MultiIndex]:
    """All indices differing from ``gamma`` only in the normal slot, up to norm ``order``."""
    gamma = MultiIndex(gamma)
    base = gamma.shifted(NORMAL_AXIS, -gamma.normal)
    top = order - base.norm
    return [base.shifted(NORMAL_AXIS, k) for k in range(top + 1)]


def build_index_set(generators: Iterable[Sequence[int]], order: int, dim: int) -> IndexSet:
    """Chain closure of ``generators``: every generator brings its whole normal chain."""
    if order < 0 or dim < 2:
        raise InvalidArgumentError("need M >= 0 and D >= 2")
    indices: set[MultiIndex] = set()
    for g in generators:
        g = MultiIndex(g)
        if g.dim != dim:
            raise InvalidArgumentError(f"generator {tuple(g)} does not have dimension {dim}")
        if g.norm > order:
            raise InvalidArgumentError(f"generator {tuple(g)} has norm above M={order}")
        indices.update(chain(g, order))
    return IndexSet.from_indices(indices, order, dim)


def validate_c1(index_set: IndexSet) -> bool:
    """True iff every member's full normal chain (up to the set's order) is present."""
    members = set(index_set.indices)
    for gamma in members:
        if gamma.norm > index_set.order:
            return False
        for alpha in chain(gamma, index_set.order):
            if alpha not in members:
                return False
    return True
