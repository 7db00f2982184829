import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from purcirc.pauli import (
    PauliString,
    Region,
    commutes,
    multiply,
    restrict,
    truncated_anticommute,
)

from dense_oracle import pauli_matrix


def dense_commutes(p, q):
    a, b = pauli_matrix(p), pauli_matrix(q)
    return np.allclose(a @ b, b @ a)


def test_single_qubit_examples():
    x = PauliString.x_op(2, 0)
    z = PauliString.z_op(2, 0)
    assert not commutes(x, z)  # X(x)I vs Z(x)I anticommute
    xx = PauliString.from_label("+XX")
    zz = PauliString.from_label("+ZZ")
    assert commutes(xx, zz)  # two sign flips cancel
    y = PauliString.y_op(2, 0)
    assert commutes(y, y)


def test_commutes_exhaustive_vs_dense():
    # all 4^n x 4^n pairs for n = 1, 2
    for n in (1, 2):
        strings = [
            PauliString(n, x, z, 0)
            for x in range(1 << n)
            for z in range(1 << n)
        ]
        for p in strings:
            for q in strings:
                assert commutes(p, q) == dense_commutes(p, q)


def test_multiply_single_qubit_algebra():
    x = PauliString.x_op(1, 0)
    z = PauliString.z_op(1, 0)
    y = PauliString.y_op(1, 0)
    xz = multiply(x, z)
    # XZ = -iY: phase 0 in the X-then-Z convention, and i*XZ == Y
    assert (xz.x, xz.z, xz.phase) == (1, 1, 0)
    assert np.allclose(pauli_matrix(xz), pauli_matrix(x) @ pauli_matrix(z))
    assert np.allclose(1j * pauli_matrix(xz), pauli_matrix(y))


@pytest.mark.parametrize("label", ["+X", "+Y", "+Z", "-X", "-Y", "-Z", "+XY", "-ZY"])
def test_hermitian_square_is_identity(label):
    p = PauliString.from_label(label)
    sq = multiply(p, p)
    assert sq.is_identity and sq.phase == 0


def test_multiply_exhaustive_two_qubit_vs_dense():
    # every pair of the 16 unsigned two-qubit strings, exact phase included
    strings = [
        PauliString(2, x, z, 0) for x in range(4) for z in range(4)
    ]
    for p in strings:
        for q in strings:
            r = multiply(p, q)
            assert np.allclose(
                pauli_matrix(r), pauli_matrix(p) @ pauli_matrix(q)
            )


def test_xx_times_zz_phase():
    r = multiply(PauliString.from_label("+XX"), PauliString.from_label("+ZZ"))
    dense = pauli_matrix(PauliString.from_label("+XX")) @ pauli_matrix(
        PauliString.from_label("+ZZ")
    )
    assert np.allclose(pauli_matrix(r), dense)
    # (XX)(ZZ) = (XZ)x(XZ) = (-iY)x(-iY) = -YY
    assert r.label() == "-YY"


def test_size_mismatch_rejected():
    with pytest.raises(ValueError):
        commutes(PauliString.x_op(2, 0), PauliString.x_op(3, 0))
    with pytest.raises(ValueError):
        multiply(PauliString.x_op(2, 0), PauliString.x_op(3, 0))


@st.composite
def pauli_strings(draw, n=None):
    if n is None:
        n = draw(st.integers(min_value=1, max_value=8))
    x = draw(st.integers(min_value=0, max_value=(1 << n) - 1))
    z = draw(st.integers(min_value=0, max_value=(1 << n) - 1))
    phase = draw(st.integers(min_value=0, max_value=3))
    return PauliString(n, x, z, phase)


@given(st.data())
@settings(max_examples=150, deadline=None)
def test_multiply_associative_and_identity(data):
    n = data.draw(st.integers(min_value=1, max_value=8))
    p = data.draw(pauli_strings(n=n))
    q = data.draw(pauli_strings(n=n))
    r = data.draw(pauli_strings(n=n))
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))
    assert multiply(p, PauliString.identity(n)) == p
    assert multiply(PauliString.identity(n), p) == p


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_multiply_matches_dense_small(data):
    n = data.draw(st.integers(min_value=1, max_value=3))
    p = data.draw(pauli_strings(n=n))
    q = data.draw(pauli_strings(n=n))
    r = multiply(p, q)
    assert np.allclose(pauli_matrix(r), pauli_matrix(p) @ pauli_matrix(q))


def test_restrict_examples():
    # Z0 Z1 on L=4, A={0,1} -> (00|11)
    v = restrict(PauliString.from_label("+ZZII"), Region([0, 1], 4))
    assert v == 0b1100
    # Z2 Z3 on L=4, A={0,1} -> zero support
    assert restrict(PauliString.from_label("+IIZZ"), Region([0, 1], 4)) == 0
    # X1 Y2 on L=4, A={1,2} -> x-bits (1,1), z-bits (0,1): Y fills both halves
    v = restrict(PauliString.from_label("+IXYI"), Region([1, 2], 4))
    assert v == (0b11) | (0b10 << 2)


def test_restricted_anticommutation_matches_dense():
    rng = np.random.default_rng(7)
    for _ in range(60):
        n = int(rng.integers(2, 4))
        region = Region(
            sorted(rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False)),
            n,
        )
        p = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), 0)
        q = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), 0)
        # dense partial operators on the region
        sub_p = PauliString(
            len(region),
            restrict(p, region) & ((1 << len(region)) - 1),
            restrict(p, region) >> len(region),
            0,
        )
        sub_q = PauliString(
            len(region),
            restrict(q, region) & ((1 << len(region)) - 1),
            restrict(q, region) >> len(region),
            0,
        )
        a, b = pauli_matrix(sub_p), pauli_matrix(sub_q)
        dense_anti = np.allclose(a @ b, -b @ a) and not np.allclose(a @ b, 0)
        assert (
            truncated_anticommute(
                restrict(p, region), restrict(q, region), len(region)
            )
            == dense_anti
        )


def test_region_validation():
    with pytest.raises(ValueError):
        Region([1, 1], 4)
    with pytest.raises(ValueError):
        Region([0, 4], 4)
    with pytest.raises(ValueError):
        Region([2, 1], 4)
    assert Region.half_chain(8).indices == tuple(range(4))
    assert Region.window(6, 4, 8).indices == (0, 1, 6, 7)
    assert Region([0, 2], 4).complement().indices == (1, 3)


def test_label_roundtrip():
    for label in ("+XIZY", "-ZZII", "+IIII", "-Y"):
        assert PauliString.from_label(label).label() == label
