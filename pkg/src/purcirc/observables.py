"""Logarithmic purity and many-body negativity on mixed stabilizer tableaus.

Both quantities are reported in bits (log base 2).  Purity is L - m for m
independent generators.  Negativity over a subsystem is half the GF(2)
rank of the antisymmetric matrix J whose (k, l) entry records whether the
generators truncated to the subsystem anticommute.
"""

from __future__ import annotations

import numpy as np

from . import gf2
from .gf2 import gf2_rank  # re-exported: the rank kernel is part of the API
from .pauli import Region
from .tableau import MixedTableau

__all__ = [
    "log_purity",
    "negativity",
    "negativity_profile",
    "j_matrix",
    "gf2_rank",
]


def _independent_rows(tab: MixedTableau) -> np.ndarray:
    """Indices of a maximal independent generator subset, in order."""
    basis: dict[int, int] = {}
    keep = []
    for j, g in enumerate(tab.generators()):
        row = g.symplectic()
        while row:
            lead = row.bit_length() - 1
            if lead not in basis:
                basis[lead] = row
                keep.append(j)
                break
            row ^= basis[lead]
    return np.asarray(keep, dtype=np.int64)


def log_purity(tab: MixedTableau) -> int:
    """-log2 Tr rho^2 in bits: qubit count minus independent generator count."""
    rows = [g.symplectic() for g in tab.generators()]
    return tab.n - gf2.rank(rows)


def j_matrix(tab: MixedTableau, region: Region) -> np.ndarray:
    """Anticommutation matrix of the generators truncated to the region.

    Entry (k, l) is 1 iff the truncations of g_k and g_l anticommute on the
    region.  Symmetric with zero diagonal by construction, hence even rank.
    """
    if region.n != tab.n:
        raise ValueError("region size mismatch")
    keep = _independent_rows(tab)
    xb, zb = tab.generator_bits(region.indices)
    xb = xb[keep].astype(np.int32)
    zb = zb[keep].astype(np.int32)
    j = (xb @ zb.T + zb @ xb.T) % 2
    j = j.astype(np.uint8)
    if np.any(np.diagonal(j)):
        raise AssertionError("J must have zero diagonal")
    if not np.array_equal(j, j.T):
        raise AssertionError("J must be symmetric")
    return j


def negativity(tab: MixedTableau, region: Region) -> int:
    """Many-body negativity over the region: half the GF(2) rank of J."""
    if len(region) == 0 or len(region) >= tab.n:
        raise ValueError("region must be a non-empty proper subset")
    j = j_matrix(tab, region)
    r = gf2.rank(gf2.pack_rows(j))
    if r % 2 != 0:
        raise AssertionError("rank of an alternating form must be even")
    return r // 2


def negativity_profile(
    tab: MixedTableau, l_max: int, anchor: int = 0
) -> list[int]:
    """Negativity of contiguous windows of length 1..l_max starting at anchor."""
    if l_max >= tab.n:
        raise ValueError("window length must stay below the system size")
    return [
        negativity(tab, Region.window(anchor, length, tab.n))
        for length in range(1, l_max + 1)
    ]
