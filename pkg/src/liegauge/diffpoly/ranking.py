"""Rankings: total orders on derivatives compatible with differentiation.

A ranking is a block elimination order on indeterminate classes; inside a
block derivatives compare orderly-first (derivation order), then by a height
table when one is attached (used for the ``b`` block of a root system), then
by index, then by a fixed class order.  This realizes both plain orderly
rankings and the rankings adapted to a root system: ``{b} >> {a+, a-, a0}``,
orderly on the ``b`` block, and ``b_i > b_j  =>  ht(alpha_i) >= ht(alpha_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .core import CLASSES, DiffPoly, Key

_CLASS_RANK = {c: i for i, c in enumerate(("ap", "a0", "am", "b", "r", "t", "y", "aux"))}


@dataclass(frozen=True)
class Ranking:
    """Block elimination ranking; earlier blocks rank higher."""

    blocks: tuple
    heights: Optional[Mapping[tuple, int]] = None  # (cls, idx) -> height weight

    def __post_init__(self):
        seen = set()
        for b in self.blocks:
            seen |= set(b)
        missing = set(CLASSES) - seen
        if missing:
            raise ValueError(f"ranking does not cover classes {sorted(missing)}")

    @staticmethod
    def orderly() -> "Ranking":
        return Ranking((frozenset(CLASSES),))

    @staticmethod
    def elimination(*blocks: Sequence[str], heights=None) -> "Ranking":
        listed = [frozenset(b) for b in blocks]
        rest = set(CLASSES)
        for b in listed:
            rest -= b
        if rest:
            listed.append(frozenset(rest))
        return Ranking(tuple(listed), heights)

    @staticmethod
    def adapted(rs) -> "Ranking":
        """The ranking adapted to a root system."""
        heights = {("b", i): rs.height(i) for i in range(1, rs.positive_count + 1)}
        return Ranking.elimination(("b",), ("ap", "am", "a0"), heights=heights)

    def _block_of(self, cls: str) -> int:
        for i, b in enumerate(self.blocks):
            if cls in b:
                return len(self.blocks) - i  # higher value = higher block
        raise KeyError(cls)

    def key(self, k: Key):
        """Sort key: greater key means higher-ranked derivative."""
        cls, idx, order = k
        h = self.heights.get((cls, idx), 0) if self.heights else 0
        return (self._block_of(cls), order, h, idx, _CLASS_RANK[cls])

    def compare(self, a: Key, b: Key) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def max_key(self, keys) -> Key:
        return max(keys, key=self.key)

    def leader_key(self, p: DiffPoly) -> Key:
        ks = p.keys()
        if not ks:
            raise ValueError("constant polynomial has no leader")
        return self.max_key(ks)
