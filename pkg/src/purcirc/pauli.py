"""Binary symplectic Pauli algebra with exact i-power phase tracking.

An n-qubit Pauli operator is stored as two n-bit integers ``x`` and ``z``
(bit i set means an X / Z factor on qubit i) plus an exponent ``phase``
of the imaginary unit, so the represented operator is

    i**phase * prod_j X_j**x_j Z_j**z_j

with the X factor to the left of the Z factor on every site.  Under this
convention Y on one qubit is (x=1, z=1, phase=1) since Y = i*X*Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True, slots=True)
class PauliString:
    """Immutable n-qubit Pauli operator in binary symplectic form."""

    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("x/z bits exceed the declared qubit count")
        if not 0 <= self.phase < 4:
            object.__setattr__(self, "phase", self.phase % 4)

    # -- structure ----------------------------------------------------

    @property
    def y_count(self) -> int:
        """Number of sites carrying both an X and a Z factor."""
        return (self.x & self.z).bit_count()

    @property
    def is_hermitian(self) -> bool:
        return (self.phase - self.y_count) % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for a Hermitian operator; undefined otherwise."""
        if not self.is_hermitian:
            raise ValueError("sign is defined only for Hermitian Pauli strings")
        return 1 if (self.phase - self.y_count) % 4 == 0 else -1

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def support(self) -> list[int]:
        bits = self.x | self.z
        return [i for i in range(self.n) if (bits >> i) & 1]

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def x_op(cls, n: int, i: int) -> "PauliString":
        return cls(n, 1 << i, 0, 0)

    @classmethod
    def z_op(cls, n: int, i: int) -> "PauliString":
        return cls(n, 0, 1 << i, 0)

    @classmethod
    def y_op(cls, n: int, i: int) -> "PauliString":
        return cls(n, 1 << i, 1 << i, 1)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse a text form like "+XIZY" or "-ZZII" (qubit 0 leftmost)."""
        sign = 1
        if label and label[0] in "+-":
            sign = -1 if label[0] == "-" else 1
            label = label[1:]
        x = z = 0
        for i, ch in enumerate(label):
            if ch == "X":
                x |= 1 << i
            elif ch == "Z":
                z |= 1 << i
            elif ch == "Y":
                x |= 1 << i
                z |= 1 << i
            elif ch != "I":
                raise ValueError(f"bad Pauli letter {ch!r}")
        y_count = (x & z).bit_count()
        phase = (y_count + (0 if sign == 1 else 2)) % 4
        return cls(len(label), x, z, phase)

    def label(self) -> str:
        """Text form with explicit sign, e.g. "+XIZY"; requires Hermiticity."""
        letters = []
        for i in range(self.n):
            xi = (self.x >> i) & 1
            zi = (self.z >> i) & 1
            letters.append("IXZY"[xi + 2 * zi])
        return ("+" if self.sign == 1 else "-") + "".join(letters)

    def __str__(self) -> str:
        return self.label() if self.is_hermitian else repr(self)

    # -- algebra -------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def symplectic(self) -> int:
        """Packed 2n-bit vector (x | z << n) used by the GF(2) kernels."""
        return self.x | (self.z << self.n)


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic inner product of p and q vanishes mod 2."""
    if p.n != q.n:
        raise ValueError("qubit count mismatch")
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) % 2 == 0


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Exact operator product p*q.

    Moving every Z factor of p past every X factor of q costs one factor
    of -1 per crossing, hence the 2*popcount(p.z & q.x) phase correction.
    """
    if p.n != q.n:
        raise ValueError("qubit count mismatch")
    phase = (p.phase + q.phase + 2 * (p.z & q.x).bit_count()) % 4
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z, phase)


class Region:
    """Sorted set of qubit indices defining a subsystem."""

    __slots__ = ("indices", "n")

    def __init__(self, indices: Iterable[int], n: int):
        idx = tuple(indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("indices must be strictly increasing")
        if idx and (idx[0] < 0 or idx[-1] >= n):
            raise ValueError("indices out of range")
        self.indices = idx
        self.n = n

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Region)
            and self.indices == other.indices
            and self.n == other.n
        )

    def __repr__(self) -> str:
        return f"Region({list(self.indices)}, n={self.n})"

    @classmethod
    def half_chain(cls, n: int) -> "Region":
        return cls(range(n // 2), n)

    @classmethod
    def window(cls, start: int, length: int, n: int) -> "Region":
        """Contiguous window of ``length`` sites starting at ``start`` (periodic)."""
        return cls(sorted((start + k) % n for k in range(length)), n)

    def complement(self) -> "Region":
        inside = set(self.indices)
        return Region((i for i in range(self.n) if i not in inside), self.n)


def restrict(p: PauliString, region: Region) -> int:
    """Truncate p to a subsystem, as a packed 2k-bit vector (x-bits | z-bits).

    The phase is dropped: only the commutation structure of truncated
    generators is ever needed.
    """
    if region.n != p.n:
        raise ValueError("region size mismatch")
    k = len(region)
    x = z = 0
    for t, i in enumerate(region):
        x |= ((p.x >> i) & 1) << t
        z |= ((p.z >> i) & 1) << t
    return x | (z << k)


def truncated_anticommute(u: int, v: int, k: int) -> bool:
    """Anticommutation test for two packed 2k-bit truncated vectors."""
    mask = (1 << k) - 1
    ux, uz = u & mask, u >> k
    vx, vz = v & mask, v >> k
    return ((ux & vz).bit_count() + (uz & vx).bit_count()) % 2 == 1
