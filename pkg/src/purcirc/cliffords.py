"""Uniform two-qubit Clifford sampling via symplectic-group indexing.

Sp(4, GF(2)) has 720 elements; each is reached bijectively from an index
through a transvection construction, and a phase-quotient Clifford gate is
a symplectic index plus 4 sign bits for the images of X_a, Z_a, X_b, Z_b
(720 * 16 = 11520 gates).  A precomputed lookup table maps every (gate,
local Pauli pattern) pair to the conjugated pattern and its i-power, so
the circuit inner loop never touches the group algebra.

Binary vectors use the slot order (x_a, z_a, x_b, z_b) with the pairing
summed over (x, z) slot pairs, i.e. the direct-sum symplectic form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .pauli import PauliString, multiply

SP4_ORDER = 720
N_GATES = SP4_ORDER * 16

# direct-sum symplectic form on (x_a, z_a, x_b, z_b)
LAMBDA = np.array(
    [[0, 1, 0, 0],
     [1, 0, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]], dtype=np.uint8)


def _sp_inner(u: np.ndarray, v: np.ndarray) -> int:
    t = 0
    for a in range(0, len(u), 2):
        t += u[a] * v[a + 1] + u[a + 1] * v[a]
    return t % 2


def _transvection(k: np.ndarray, v: np.ndarray) -> np.ndarray:
    return (v + _sp_inner(k, v) * k) % 2


def _int_to_bits(x: int, n: int) -> np.ndarray:
    return np.array([(x >> j) & 1 for j in range(n)], dtype=np.uint8)


def _find_transvection(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Two transvections mapping nonzero vector x to nonzero vector y."""
    out = np.zeros((2, len(x)), dtype=np.uint8)
    if np.array_equal(x, y):
        return out
    if _sp_inner(x, y) == 1:
        out[0] = (x + y) % 2
        return out
    # separated by a zero pairing: route through an intermediate z
    z = np.zeros(len(x), dtype=np.uint8)
    for i in range(len(x) // 2):
        ii = 2 * i
        if (x[ii] or x[ii + 1]) and (y[ii] or y[ii + 1]):
            z[ii] = (x[ii] + y[ii]) % 2
            z[ii + 1] = (x[ii + 1] + y[ii + 1]) % 2
            if z[ii] == 0 and z[ii + 1] == 0:
                z[ii + 1] = 1
                if x[ii] != x[ii + 1]:
                    z[ii] = 1
            out[0] = (x + z) % 2
            out[1] = (y + z) % 2
            return out
    for i in range(len(x) // 2):
        ii = 2 * i
        if (x[ii] or x[ii + 1]) and not (y[ii] or y[ii + 1]):
            if x[ii] == x[ii + 1]:
                z[ii + 1] = 1
            else:
                z[ii + 1] = x[ii]
                z[ii] = x[ii + 1]
            break
    for i in range(len(x) // 2):
        ii = 2 * i
        if not (x[ii] or x[ii + 1]) and (y[ii] or y[ii + 1]):
            if y[ii] == y[ii + 1]:
                z[ii + 1] = 1
            else:
                z[ii + 1] = y[ii]
                z[ii] = y[ii + 1]
            break
    out[0] = (x + z) % 2
    out[1] = (y + z) % 2
    return out


def _symplectic(i: int, n: int) -> np.ndarray:
    """Group element of Sp(2n, GF(2)) for index i; rows are basis images."""
    nn = 2 * n
    s = (1 << nn) - 1
    k = (i % s) + 1
    i //= s
    f1 = _int_to_bits(k, nn)
    e1 = np.zeros(nn, dtype=np.uint8)
    e1[0] = 1
    t = _find_transvection(e1, f1)
    bits = _int_to_bits(i % (1 << (nn - 1)), nn - 1)
    eprime = e1.copy()
    for j in range(2, nn):
        eprime[j] = bits[j - 1]
    h0 = _transvection(t[0], eprime)
    h0 = _transvection(t[1], h0)
    if bits[0] == 1:
        f1 = f1 * 0
    if n == 1:
        g = np.eye(2, dtype=np.uint8)
    else:
        g = np.zeros((nn, nn), dtype=np.uint8)
        g[:2, :2] = np.eye(2, dtype=np.uint8)
        g[2:, 2:] = _symplectic(i >> (nn - 1), n - 1)
    for j in range(nn):
        row = _transvection(t[0], g[j])
        row = _transvection(t[1], row)
        row = _transvection(h0, row)
        g[j] = _transvection(f1, row)
    return g


def symplectic_from_index(idx: int) -> np.ndarray:
    """Bijection [0, 720) -> Sp(4, GF(2)); row k is the image of basis k."""
    if not 0 <= idx < SP4_ORDER:
        raise ValueError(f"symplectic index {idx} out of [0, {SP4_ORDER})")
    return _symplectic(idx, 2)


def is_symplectic(s: np.ndarray) -> bool:
    return np.array_equal(s.T @ LAMBDA @ s % 2, LAMBDA)


def _image_pauli(row: np.ndarray, negative: bool) -> PauliString:
    """Signed Hermitian 2-qubit Pauli from a symplectic row (xa, za, xb, zb)."""
    x = int(row[0]) | (int(row[2]) << 1)
    z = int(row[1]) | (int(row[3]) << 1)
    phase = ((x & z).bit_count() + (2 if negative else 0)) % 4
    return PauliString(2, x, z, phase)


@dataclass(frozen=True)
class TwoQubitClifford:
    """Phase-quotient two-qubit Clifford gate.

    ``images`` are the conjugates of X_a, Z_a, X_b, Z_b (signed Hermitian
    Pauli strings on the local 2-qubit register, qubit 0 = a, qubit 1 = b).
    """

    index: int  # in [0, 11520)
    images: tuple[PauliString, PauliString, PauliString, PauliString]

    @property
    def symplectic_index(self) -> int:
        return self.index >> 4

    @property
    def sign_bits(self) -> int:
        return self.index & 15

    @classmethod
    def from_index(cls, idx: int) -> "TwoQubitClifford":
        if not 0 <= idx < N_GATES:
            raise ValueError(f"gate index {idx} out of [0, {N_GATES})")
        s = symplectic_from_index(idx >> 4)
        signs = idx & 15
        images = tuple(
            _image_pauli(s[k], bool((signs >> k) & 1)) for k in range(4)
        )
        return cls(idx, images)

    def conjugate(self, p: PauliString) -> PauliString:
        """g p g^dagger for a 2-qubit Pauli p, with exact phase."""
        if p.n != 2:
            raise ValueError("conjugate expects a 2-qubit Pauli")
        out = PauliString(2, 0, 0, p.phase)
        for k, (bit) in enumerate(
            ((p.x >> 0) & 1, (p.z >> 0) & 1, (p.x >> 1) & 1, (p.z >> 1) & 1)
        ):
            if bit:
                out = multiply(out, self.images[k])
        return out


class GateTable:
    """List-up table for the 11520 gates.

    For symplectic index s and local input pattern v (bits xa, za, xb, zb),
    ``patterns[s, v]`` is the conjugated pattern and ``phases[s, v]`` the
    i-power picked up when all image signs are positive.  A gate's sign
    bits r contribute a further 2 * parity(r & v).
    """

    def __init__(self):
        self.patterns = np.zeros((SP4_ORDER, 16), dtype=np.uint8)
        self.phases = np.zeros((SP4_ORDER, 16), dtype=np.uint8)
        for s in range(SP4_ORDER):
            mat = symplectic_from_index(s)
            images = [_image_pauli(mat[k], negative=False) for k in range(4)]
            for v in range(16):
                prod = PauliString.identity(2)
                for k in range(4):
                    if (v >> k) & 1:
                        prod = multiply(prod, images[k])
                self.patterns[s, v] = (
                    (prod.x & 1)
                    | (((prod.z >> 0) & 1) << 1)
                    | (((prod.x >> 1) & 1) << 2)
                    | (((prod.z >> 1) & 1) << 3)
                )
                self.phases[s, v] = prod.phase


_PARITY16 = np.array([bin(v).count("1") & 1 for v in range(16)], dtype=np.uint8)

_TABLE: GateTable | None = None


def get_gate_table() -> GateTable:
    """Process-wide singleton; built once on first use."""
    global _TABLE
    if _TABLE is None:
        _TABLE = GateTable()
    return _TABLE


def sample_gate_index(rng: np.random.Generator) -> int:
    """Uniform gate index over the 11520 phase-quotient Cliffords."""
    return int(rng.integers(0, N_GATES))


def sample_gate_indices(rng: np.random.Generator, size: int) -> np.ndarray:
    """Batch of uniform gate indices (the circuit layers draw one per link)."""
    return rng.integers(0, N_GATES, size=size)


def sample(rng: np.random.Generator) -> TwoQubitClifford:
    """Uniformly random two-qubit Clifford gate."""
    return TwoQubitClifford.from_index(sample_gate_index(rng))
