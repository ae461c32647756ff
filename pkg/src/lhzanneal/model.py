"""Shared domain types: coupling distributions, annealing control coordinates,
temperature, parity-encoding qubit counts, and power-law schedule trajectories."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CouplingModel:
    """Distribution of the local longitudinal fields J_i.

    ``uniform``  : every site carries the same field +J.
    ``bimodal``  : +J with weight ``epsilon`` and -J with weight
                   ``1 - epsilon`` (frustrated all-to-all instance;
                   epsilon = 0.5 is the fully random spin-glass point).
    """

    kind: str
    J: float
    epsilon: float | None = None

    def __post_init__(self):
        if self.kind not in ("uniform", "bimodal"):
            raise ValueError(f"unknown coupling kind {self.kind!r}")
        if not self.J > 0:
            raise ValueError("J must be > 0")
        if self.kind == "bimodal":
            if self.epsilon is None:
                raise ValueError("bimodal couplings require epsilon")
            if not 0.0 <= self.epsilon <= 1.0:
                raise ValueError("epsilon must be in [0, 1]")
        elif self.epsilon is not None:
            raise ValueError("epsilon is only meaningful for bimodal couplings")

    @classmethod
    def uniform(cls, J: float) -> "CouplingModel":
        return cls("uniform", float(J))

    @classmethod
    def bimodal(cls, J: float, epsilon: float) -> "CouplingModel":
        return cls("bimodal", float(J), float(epsilon))

    def terms(self) -> tuple[tuple[float, float], ...]:
        """(weight, field) pairs of the distribution.

        Zero-weight entries are dropped, so bimodal(epsilon=1) runs through
        exactly the same arithmetic as uniform and agrees bit for bit.
        """
        if self.kind == "uniform":
            return ((1.0, self.J),)
        pairs = []
        if self.epsilon > 0.0:
            pairs.append((self.epsilon, self.J))
        if self.epsilon < 1.0:
            pairs.append((1.0 - self.epsilon, -self.J))
        return tuple(pairs)

    def mirrored(self) -> "CouplingModel":
        """The distribution of -J_i (epsilon -> 1 - epsilon)."""
        if self.kind == "uniform":
            return self
        return CouplingModel.bimodal(self.J, 1.0 - self.epsilon)


@dataclass(frozen=True)
class ControlPoint:
    """A point (s, tau) in the two-parameter annealing control plane.

    ``s`` multiplies the local-field (problem) term, ``tau`` the four-body
    constraint term, and ``1 - s`` the transverse driver.  Out-of-range
    values are rejected rather than clamped: the control plane is [0, 1]^2
    and anything else indicates a caller bug.
    """

    s: float
    tau: float

    def __post_init__(self):
        if not 0.0 <= self.s <= 1.0:
            raise ValueError(f"s must be in [0, 1], got {self.s}")
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must be in [0, 1], got {self.tau}")


@dataclass(frozen=True)
class Temperature:
    """Inverse temperature, with an explicit zero-temperature variant.

    ``beta=None`` selects the genuine zero-temperature formulas in every
    consumer; it is never approximated by a large finite beta, which avoids
    cosh overflow and silent precision loss.
    """

    beta: float | None = None

    def __post_init__(self):
        if self.beta is not None and not self.beta > 0:
            raise ValueError("beta must be > 0 (or None for zero temperature)")

    @classmethod
    def finite(cls, beta: float) -> "Temperature":
        return cls(float(beta))

    @classmethod
    def infinite(cls) -> "Temperature":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.beta is None


@dataclass(frozen=True)
class LhzCounts:
    """Qubit bookkeeping for the parity embedding of an all-to-all instance."""

    n_logical: int
    n_physical: int
    n_constraints: int


def lhz_counts(n_logical: int) -> LhzCounts:
    """Physical-qubit and constraint counts for ``n_logical`` logical qubits.

    One physical qubit per pairwise interaction, N = N_l (N_l - 1) / 2, and
    N_c = (N_l - 1)(N_l - 2) / 2 local parity constraints, so that
    N - N_c = N_l - 1 degrees of freedom remain.
    """
    n = int(n_logical)
    if n != n_logical:
        raise ValueError("n_logical must be an integer")
    if n < 2:
        raise ValueError("n_logical must be >= 2 (no interactions exist below that)")
    return LhzCounts(
        n_logical=n,
        n_physical=n * (n - 1) // 2,
        n_constraints=(n - 1) * (n - 2) // 2,
    )


@dataclass(frozen=True)
class ScheduleFamily:
    """Power-law trajectory tau = s**r through the control plane.

    Every member passes through (0, 0) and (1, 1); r > 1 delays the
    constraint term relative to the problem term, r < 1 advances it.
    """

    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("r must be > 0")


def schedule_tau(family: ScheduleFamily, s: float) -> float:
    """Constraint coefficient tau = s**r at problem coefficient ``s``."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s must be in [0, 1], got {s}")
    return float(s) ** family.r
