"""Fixed-width bit-vector sets of group element indices."""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np


class ElementSet:
    """An immutable set of element indices in ``range(width)``.

    Stored as a Python integer bitmask: bit ``i`` is set when element ``i``
    belongs to the set. Subset and intersection tests are single integer
    operations, which is what the lattice and Sylow code lean on.
    """

    __slots__ = ("bits", "width")

    def __init__(self, bits: int, width: int) -> None:
        if bits < 0 or bits >> width:
            raise ValueError(f"bits out of range for width {width}")
        self.bits = bits
        self.width = width

    @classmethod
    def from_indices(cls, indices: Iterable[int], width: int) -> ElementSet:
        mask = np.zeros(width, dtype=bool)
        idx = np.fromiter((int(i) for i in indices), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= width):
            raise ValueError("index out of range")
        mask[idx] = True
        return cls.from_mask(mask)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> ElementSet:
        mask = np.asarray(mask, dtype=bool)
        packed = np.packbits(mask, bitorder="little").tobytes()
        return cls(int.from_bytes(packed, "little"), mask.shape[0])

    @classmethod
    def empty(cls, width: int) -> ElementSet:
        return cls(0, width)

    @classmethod
    def full(cls, width: int) -> ElementSet:
        return cls((1 << width) - 1, width)

    @classmethod
    def identity(cls, width: int) -> ElementSet:
        return cls(1, width)

    def mask(self) -> np.ndarray:
        nbytes = (self.width + 7) // 8
        raw = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.width].astype(bool)

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask())

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices().tolist())

    def __contains__(self, item: object) -> bool:
        if not isinstance(item, (int, np.integer)):
            return False
        return 0 <= item < self.width and bool((self.bits >> int(item)) & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.bits == other.bits and self.width == other.width

    def __hash__(self) -> int:
        return hash((self.bits, self.width))

    def _check(self, other: ElementSet) -> None:
        if self.width != other.width:
            raise ValueError("element sets over groups of different order")

    def __and__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet(self.bits & other.bits, self.width)

    def __or__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet(self.bits | other.bits, self.width)

    def __sub__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet(self.bits & ~other.bits, self.width)

    def __le__(self, other: ElementSet) -> bool:
        self._check(other)
        return self.bits & other.bits == self.bits

    def __lt__(self, other: ElementSet) -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: ElementSet) -> bool:
        return other <= self

    def __gt__(self, other: ElementSet) -> bool:
        return other < self

    def issubset(self, other: ElementSet) -> bool:
        return self <= other

    def is_trivial(self) -> bool:
        return self.bits == 1

    def is_full(self) -> bool:
        return self.bits == (1 << self.width) - 1

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Cardinality first, then the sorted member list."""
        return len(self), tuple(self.indices().tolist())

    def __repr__(self) -> str:
        members = self.indices().tolist()
        if len(members) > 12:
            shown = ", ".join(map(str, members[:12])) + ", ..."
        else:
            shown = ", ".join(map(str, members))
        return f"ElementSet({{{shown}}}, width={self.width})"
