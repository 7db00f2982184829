"""Mixed-state stabilizer tableau with projective Z measurements.

A mixed stabilizer state on L qubits is rho = 2^(m-L) * prod_k (1 + g_k)/2
for m mutually commuting, independent, Hermitian Pauli generators g_k.
Generators are stored bit-packed, one row per generator, with 64 qubits
per machine word, plus an i-power exponent per row.  Unitary layers are
applied to all generators and all links of the layer in one vectorized
pass through the gate lookup table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .cliffords import TwoQubitClifford, get_gate_table, _PARITY16
from .pauli import PauliString

KIND_RANDOM = "random-existing"
KIND_DETERMINISTIC = "deterministic"
KIND_PURIFYING = "purifying"


@dataclass(frozen=True)
class MeasurementOutcome:
    """Record of one projective Z measurement."""

    value: int  # +1 or -1
    kind: str   # random-existing | deterministic | purifying

    @property
    def purified(self) -> bool:
        return self.kind == KIND_PURIFYING


class MixedTableau:
    """Set of stabilizer generators for a mixed state, m <= L of them."""

    __slots__ = ("n", "_w", "_x", "_z", "_ph", "_version", "_ech", "_ech_rows")

    def __init__(self, n: int):
        if n < 2 or n % 2 != 0:
            raise ValueError("qubit count must be even and at least 2")
        self.n = n
        self._w = (n + 63) >> 6
        self._x = np.zeros((0, self._w), dtype=np.uint64)
        self._z = np.zeros((0, self._w), dtype=np.uint64)
        self._ph = np.zeros(0, dtype=np.uint8)
        self._version = 0
        self._ech: gf2.Echelon | None = None
        self._ech_rows: list[tuple[int, int, int]] | None = None

    # -- construction ---------------------------------------------------

    @classmethod
    def maximally_mixed(cls, n: int) -> "MixedTableau":
        """Infinite-temperature state: no generators at all."""
        return cls(n)

    @classmethod
    def from_generators(cls, n: int, gens: Iterable[PauliString]) -> "MixedTableau":
        tab = cls(n)
        for g in gens:
            if g.n != n:
                raise ValueError("generator size mismatch")
            if not g.is_hermitian:
                raise ValueError("generators must be Hermitian")
            tab._append_pauli(g)
        tab.check_invariants()
        return tab

    def clone(self) -> "MixedTableau":
        tab = MixedTableau(self.n)
        tab._x = self._x.copy()
        tab._z = self._z.copy()
        tab._ph = self._ph.copy()
        return tab

    # -- inspection -------------------------------------------------------

    @property
    def num_generators(self) -> int:
        return self._x.shape[0]

    def _row_ints(self, j: int) -> tuple[int, int, int]:
        x = z = 0
        for w in range(self._w):
            x |= int(self._x[j, w]) << (64 * w)
            z |= int(self._z[j, w]) << (64 * w)
        return x, z, int(self._ph[j])

    def generators(self) -> list[PauliString]:
        return [
            PauliString(self.n, *self._row_ints(j))
            for j in range(self.num_generators)
        ]

    def generator_bits(self, region: Sequence[int] | None = None):
        """X and Z bit matrices (m x k, uint8) on the given sites (default all)."""
        sites = np.arange(self.n) if region is None else np.asarray(list(region))
        words = (sites >> 6).astype(np.int64)
        shifts = (sites & 63).astype(np.uint64)
        xb = ((self._x[:, words] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)
        zb = ((self._z[:, words] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)
        return xb, zb

    def snapshot(self) -> str:
        """One signed generator label per line, for golden-file regression."""
        return "\n".join(g.label() for g in self.generators())

    @classmethod
    def from_snapshot(cls, n: int, text: str) -> "MixedTableau":
        gens = [PauliString.from_label(line) for line in text.splitlines() if line]
        return cls.from_generators(n, gens)

    # -- mutation helpers -------------------------------------------------

    def _touch(self):
        self._version += 1
        self._ech = None
        self._ech_rows = None

    def _append_pauli(self, g: PauliString):
        xrow = np.zeros(self._w, dtype=np.uint64)
        zrow = np.zeros(self._w, dtype=np.uint64)
        mask = (1 << 64) - 1
        for w in range(self._w):
            xrow[w] = (g.x >> (64 * w)) & mask
            zrow[w] = (g.z >> (64 * w)) & mask
        self._x = np.vstack([self._x, xrow[None, :]])
        self._z = np.vstack([self._z, zrow[None, :]])
        self._ph = np.append(self._ph, np.uint8(g.phase % 4))
        self._touch()

    # -- unitary layer ------------------------------------------------------

    def apply_gate_layer(self, a_sites, b_sites, sym_idx, sign_bits):
        """Conjugate all generators by a layer of disjoint two-qubit gates.

        a_sites/b_sites are the qubit pairs, sym_idx the symplectic table
        indices and sign_bits the 4-bit image signs, one entry per gate.
        """
        a = np.asarray(a_sites, dtype=np.int64)
        b = np.asarray(b_sites, dtype=np.int64)
        if a.size == 0 or self.num_generators == 0:
            self._touch()
            return
        table = get_gate_table()
        sym = np.asarray(sym_idx, dtype=np.int64)
        sgn = np.asarray(sign_bits, dtype=np.uint8)

        wa, sa = a >> 6, (a & 63).astype(np.uint64)
        wb, sb = b >> 6, (b & 63).astype(np.uint64)
        one = np.uint64(1)

        xa = (self._x[:, wa] >> sa[None, :]) & one
        za = (self._z[:, wa] >> sa[None, :]) & one
        xb = (self._x[:, wb] >> sb[None, :]) & one
        zb = (self._z[:, wb] >> sb[None, :]) & one
        idx = (xa + (za << one) + (xb << np.uint64(2)) + (zb << np.uint64(3))).astype(
            np.uint8
        )

        pat = table.patterns[sym[None, :], idx]
        delta = table.phases[sym[None, :], idx].astype(np.int64)
        delta += 2 * _PARITY16[sgn[None, :] & idx]
        self._ph = ((self._ph.astype(np.int64) + delta.sum(axis=1)) & 3).astype(
            np.uint8
        )

        # clear the touched bits, then scatter the conjugated patterns back in
        clear = np.zeros(self._w, dtype=np.uint64)
        for site in np.concatenate([a, b]):
            clear[site >> 6] |= one << np.uint64(site & 63)
        self._x &= ~clear[None, :]
        self._z &= ~clear[None, :]

        nxa = (pat & 1).astype(np.uint64)
        nza = ((pat >> 1) & 1).astype(np.uint64)
        nxb = ((pat >> 2) & 1).astype(np.uint64)
        nzb = ((pat >> 3) & 1).astype(np.uint64)
        for words, shifts, xbits, zbits in (
            (wa, sa, nxa, nza),
            (wb, sb, nxb, nzb),
        ):
            for w in np.unique(words):
                sel = words == w
                self._x[:, w] |= np.bitwise_or.reduce(
                    xbits[:, sel] << shifts[sel][None, :], axis=1
                )
                self._z[:, w] |= np.bitwise_or.reduce(
                    zbits[:, sel] << shifts[sel][None, :], axis=1
                )
        self._touch()

    def apply_two_qubit(self, gate: TwoQubitClifford, a: int, b: int):
        """Conjugate every generator by one gate acting on sites (a, b)."""
        if a == b or not (0 <= a < self.n) or not (0 <= b < self.n):
            raise ValueError("gate sites must be distinct and in range")
        self.apply_gate_layer(
            [a], [b], [gate.symplectic_index], [gate.sign_bits]
        )

    # -- membership -----------------------------------------------------------

    def _echelon(self) -> tuple[gf2.Echelon, list[tuple[int, int, int]]]:
        if self._ech is None:
            rows = [self._row_ints(j) for j in range(self.num_generators)]
            self._ech_rows = rows
            self._ech = gf2.Echelon([x | (z << self.n) for x, z, _ in rows])
        return self._ech, self._ech_rows

    def contains_up_to_sign(self, p: PauliString) -> int | None:
        """Sign s with s*p in the stabilizer group, or None if p is not in it."""
        if not p.is_hermitian:
            raise ValueError("membership is defined for Hermitian Paulis")
        ech, rows = self._echelon()
        combo = ech.solve(p.x | (p.z << self.n))
        if combo is None:
            return None
        ax = az = aph = 0
        j = 0
        while combo:
            if combo & 1:
                gx, gz, gph = rows[j]
                aph = (aph + gph + 2 * (az & gx).bit_count()) % 4
                ax ^= gx
                az ^= gz
            combo >>= 1
            j += 1
        rel = (aph - p.phase) % 4
        return 1 if rel == 0 else -1

    # -- measurement --------------------------------------------------------

    def measure_z(self, i: int, rng: np.random.Generator) -> MeasurementOutcome:
        """Projective measurement of Z on site i; updates the state in place.

        Outcomes with probability 1/2 draw one uniform bit from rng
        (0 -> +1, 1 -> -1); deterministic outcomes consume no randomness.
        """
        if not 0 <= i < self.n:
            raise ValueError("site out of range")
        w, s = i >> 6, np.uint64(i & 63)
        xcol = (self._x[:, w] >> s) & np.uint64(1)
        anti = np.flatnonzero(xcol)
        if anti.size:
            k = int(anti[0])
            rest = anti[1:]
            if rest.size:
                par = (
                    np.bitwise_count(self._z[rest] & self._x[k]).sum(axis=1)
                    & np.uint64(1)
                ).astype(np.uint8)
                self._ph[rest] = (
                    self._ph[rest] + self._ph[k] + 2 * par
                ) & np.uint8(3)
                self._x[rest] ^= self._x[k]
                self._z[rest] ^= self._z[k]
            value = 1 if int(rng.integers(0, 2)) == 0 else -1
            self._x[k] = 0
            self._z[k] = 0
            self._z[k, w] = np.uint64(1) << s
            self._ph[k] = np.uint8(0 if value == 1 else 2)
            self._touch()
            return MeasurementOutcome(value, KIND_RANDOM)

        sign = self.contains_up_to_sign(PauliString.z_op(self.n, i))
        if sign is not None:
            return MeasurementOutcome(sign, KIND_DETERMINISTIC)

        value = 1 if int(rng.integers(0, 2)) == 0 else -1
        self._append_pauli(
            PauliString(self.n, 0, 1 << i, 0 if value == 1 else 2)
        )
        return MeasurementOutcome(value, KIND_PURIFYING)

    # -- diagnostics --------------------------------------------------------

    def check_invariants(self):
        """Mutual commutation, GF(2) independence, Hermiticity; raises on breach."""
        m = self.num_generators
        if m > self.n:
            raise AssertionError("more generators than qubits")
        xb, zb = self.generator_bits()
        x16, z16 = xb.astype(np.int16), zb.astype(np.int16)
        sympl = (x16 @ z16.T + z16 @ x16.T) % 2
        if np.any(sympl):
            raise AssertionError("generators do not mutually commute")
        rows = [self._row_ints(j) for j in range(m)]
        if gf2.rank([x | (z << self.n) for x, z, _ in rows]) != m:
            raise AssertionError("generators are not independent over GF(2)")
        for x, z, ph in rows:
            if (ph - (x & z).bit_count()) % 2 != 0:
                raise AssertionError("non-Hermitian generator")
