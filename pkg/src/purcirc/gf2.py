"""Bit-packed GF(2) linear algebra on integer bitset rows.

Rows are plain Python ints (arbitrary width), one int per row, bit c of a
row being the entry in column c.  This keeps the elimination kernels at a
handful of machine ops per row even for ~100-column systems.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def pack_rows(matrix) -> list[int]:
    """Pack a 2-D 0/1 array (or nested sequence) into integer bitset rows."""
    arr = np.asarray(matrix, dtype=np.uint8)
    if arr.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    packed = np.packbits(arr, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of the given bitset rows (input not mutated)."""
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead not in basis:
                basis[lead] = row
                break
            row ^= basis[lead]
    return len(basis)


def gf2_rank(matrix) -> int:
    """Rank over GF(2) of a 0/1 matrix given as an array or nested lists."""
    return rank(pack_rows(matrix))


class Echelon:
    """XOR basis over GF(2) with combination tracking.

    Each basis row is keyed by its leading bit; ``solve`` recovers which of
    the original rows XOR to a target vector, which is what sign recovery
    from a stabilizer group needs.
    """

    __slots__ = ("basis", "combos")

    def __init__(self, rows: Sequence[int]):
        self.basis: dict[int, int] = {}
        self.combos: dict[int, int] = {}
        for j, row in enumerate(rows):
            combo = 1 << j
            while row:
                lead = row.bit_length() - 1
                if lead not in self.basis:
                    self.basis[lead] = row
                    self.combos[lead] = combo
                    break
                row ^= self.basis[lead]
                combo ^= self.combos[lead]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def solve(self, target: int) -> int | None:
        """Return a bitmask of original row indices XOR-ing to target, or None."""
        combo = 0
        while target:
            lead = target.bit_length() - 1
            row = self.basis.get(lead)
            if row is None:
                return None
            target ^= row
            combo ^= self.combos[lead]
        return combo

    def contains(self, target: int) -> bool:
        return self.solve(target) is not None
