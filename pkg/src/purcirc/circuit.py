"""Brickwork circuit driver: alternating two-qubit gate and measurement layers.

Three modulation cases are supported on a periodic chain of L qubits:

  I    uniform measurement probability p, every gate applied;
  II   site-dependent measurement probability p_i = w_i^n with w_i uniform
       in [0, 1), quenched per trajectory (mean probability 1/(n+1));
  III  uniform p, but each gate applied only with a quasi-periodic per-link
       probability (1 + A cos(2 pi Q j)) / (1 + A), Q the golden ratio.

One time step is a unitary layer followed by a measurement layer.  Even
steps act on the odd links (1,2), (3,4), ..., (L-1,0); odd steps on the
even links (0,1), (2,3), ...  All cases share one code path: every step
draws an acceptance coin and a gate index for every link of the layer
(cases I and II have acceptance probability exactly 1), then a coin for
every site, so matched seeds give matched circuits across cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cliffords import sample_gate_indices
from .observables import log_purity, negativity, negativity_profile
from .pauli import Region
from .tableau import MixedTableau

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2

CASES = ("I", "II", "III")


@dataclass(frozen=True)
class MeasurementProfile:
    """Per-site measurement probabilities plus how they were produced."""

    probs: np.ndarray
    provenance: str

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if np.any(p < 0) or np.any(p > 1):
            raise ValueError("measurement probabilities must lie in [0, 1]")
        object.__setattr__(self, "probs", p)


@dataclass(frozen=True)
class GateProfile:
    """Per-link gate application probabilities (link j sits left of qubit j+1)."""

    probs: np.ndarray
    amplitude: float

    def __post_init__(self):
        object.__setattr__(self, "probs", np.asarray(self.probs, dtype=float))


def build_measurement_profile(
    case: str,
    length: int,
    rng: np.random.Generator,
    p: float | None = None,
    n: float | None = None,
) -> MeasurementProfile:
    """Uniform profile for cases I/III, quenched p_i = w_i^n for case II."""
    if case in ("I", "III"):
        if p is None or not 0 <= p <= 1:
            raise ValueError("p out of [0,1]")
        return MeasurementProfile(np.full(length, float(p)), f"uniform(p={p})")
    if case == "II":
        if n is None or n <= 0:
            raise ValueError("power-random exponent n must be positive")
        w = rng.random(length)
        return MeasurementProfile(w**n, f"power-random(n={n})")
    raise ValueError(f"unknown case {case!r}")


def build_gate_profile(a_j: float, length: int) -> GateProfile:
    """Quasi-periodic per-link gate probabilities; a_j = 0 gives all ones."""
    if not 0 <= a_j <= 1:
        raise ValueError("A_J out of [0,1]")
    j = np.arange(length)
    probs = (1 + a_j * np.cos(2 * np.pi * GOLDEN_RATIO * j)) / (1 + a_j)
    return GateProfile(probs, float(a_j))


def layer_links(length: int, t: int) -> tuple[np.ndarray, np.ndarray]:
    """Left and right qubits of the links touched at step t (periodic)."""
    start = 1 if t % 2 == 0 else 0
    a = np.arange(start, length, 2, dtype=np.int64)
    return a, (a + 1) % length


@dataclass(frozen=True)
class RunConfig:
    """One grid point of a simulation: system, modulation, schedule, seeding."""

    length: int
    case: str
    p: float | None = None          # cases I and III
    n: float | None = None          # case II
    a_j: float | None = None        # case III
    t_steps: int | None = None
    observable: str = "purity"      # purity | mbn | both
    samples: int = 100
    seed: int = 0
    record_every: int | None = None
    profile_lmax: int | None = None
    profile_anchor: int = 0

    def validated(self) -> "RunConfig":
        if self.length < 2 or self.length % 2 != 0:
            raise ValueError("L must be even and at least 2")
        if self.case not in CASES:
            raise ValueError(f"case must be one of {CASES}")
        if self.case in ("I", "III"):
            if self.p is None or not 0 <= self.p <= 1:
                raise ValueError("p out of [0,1]")
        if self.case == "II":
            if self.n is None or self.n <= 0:
                raise ValueError("n must be positive")
        if self.case == "III":
            if self.a_j is None or not 0 <= self.a_j <= 1:
                raise ValueError("A_J out of [0,1]")
        if self.observable not in ("purity", "mbn", "both"):
            raise ValueError("observable must be purity, mbn or both")
        if self.samples < 2:
            raise ValueError("at least 2 samples are needed for error bars")
        if self.profile_lmax is not None and not (
            0 < self.profile_lmax < self.length
        ):
            raise ValueError("profile_lmax must lie in (0, L)")
        if not 0 <= self.profile_anchor < self.length:
            raise ValueError("profile_anchor out of range")
        steps = self.resolved_steps()
        if steps < 1:
            raise ValueError("t_steps must be positive")
        return self

    def resolved_steps(self) -> int:
        """4L for purity-only runs, ceil(L^2/4) once negativity is recorded."""
        if self.t_steps is not None:
            return self.t_steps
        if self.observable == "purity" and self.profile_lmax is None:
            return 4 * self.length
        return math.ceil(self.length**2 / 4)

    @property
    def wants_mbn(self) -> bool:
        return self.observable in ("mbn", "both")

    @property
    def param_name(self) -> str:
        return {"I": "p", "II": "pbar", "III": "a_j"}[self.case]

    @property
    def param_value(self) -> float:
        if self.case == "I":
            return float(self.p)
        if self.case == "II":
            return 1.0 / (1.0 + float(self.n))
        return float(self.a_j)


@dataclass(frozen=True)
class TrajectoryRecord:
    """Observables of one trajectory on its recording schedule."""

    sample: int
    steps: tuple[int, ...]
    s_p: tuple[int, ...]
    e_a: tuple[int, ...] | None
    profile: tuple[int, ...] | None
    final_rank: int


def trajectory_rng(master_seed: int, sample: int) -> np.random.Generator:
    """Independent, reproducible stream for (master seed, sample index)."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=master_seed, spawn_key=(sample,))
    )


def step(
    tab: MixedTableau,
    t: int,
    mprofile: MeasurementProfile,
    gprofile: GateProfile | None,
    rng: np.random.Generator,
):
    """One unitary layer then one measurement layer, in place."""
    a, b = layer_links(tab.n, t)
    coins = rng.random(a.size)
    gidx = sample_gate_indices(rng, a.size)
    if gprofile is None:
        keep = np.ones(a.size, dtype=bool)
    else:
        keep = coins < gprofile.probs[a]
    if keep.any():
        g = gidx[keep]
        tab.apply_gate_layer(a[keep], b[keep], g >> 4, g & 15)
    site_coins = rng.random(tab.n)
    for i in range(tab.n):
        if site_coins[i] < mprofile.probs[i]:
            tab.measure_z(i, rng)


def run_trajectory(cfg: RunConfig, sample: int) -> TrajectoryRecord:
    """Deterministic function of (cfg.seed, sample)."""
    rng = trajectory_rng(cfg.seed, sample)
    mprofile = build_measurement_profile(
        cfg.case, cfg.length, rng, p=cfg.p, n=cfg.n
    )
    gprofile = (
        build_gate_profile(cfg.a_j, cfg.length) if cfg.case == "III" else None
    )
    # cases I/II run with a unit gate profile so all cases share one stream
    if gprofile is None:
        gprofile = GateProfile(np.ones(cfg.length), 0.0)

    tab = MixedTableau.maximally_mixed(cfg.length)
    half = Region.half_chain(cfg.length)
    t_steps = cfg.resolved_steps()

    steps: list[int] = []
    s_p: list[int] = []
    e_a: list[int] = [] if cfg.wants_mbn else None

    def record(t: int):
        steps.append(t)
        s_p.append(log_purity(tab))
        if e_a is not None:
            e_a.append(negativity(tab, half))

    prev_rank = 0
    for t in range(t_steps):
        step(tab, t, mprofile, gprofile, rng)
        if tab.num_generators < prev_rank:
            raise AssertionError("stabilizer rank decreased along a trajectory")
        prev_rank = tab.num_generators
        if cfg.record_every and (t + 1) % cfg.record_every == 0 and t + 1 < t_steps:
            record(t + 1)
    record(t_steps)

    profile = None
    if cfg.profile_lmax:
        profile = tuple(
            negativity_profile(tab, cfg.profile_lmax, cfg.profile_anchor)
        )

    if any(b > a for a, b in zip(s_p, s_p[1:])):
        raise AssertionError("log purity must be non-increasing")

    return TrajectoryRecord(
        sample=sample,
        steps=tuple(steps),
        s_p=tuple(s_p),
        e_a=tuple(e_a) if e_a is not None else None,
        profile=profile,
        final_rank=tab.num_generators,
    )
