"""Two-spin states and free evolution under the diagonal NMR Hamiltonian.

With hbar = 1 the Hamiltonian is::

    H = omega1 Z(x)I + omega2 I(x)Z + omega12 Z(x)Z

using full Pauli matrices, not spin-1/2 operators, so physical
frequencies differ by a factor of two from the spin-1/2 reading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParseError, ZeroCoupling
from .linalg import EXACT_TOL, Operator4, complex_to_pair

# Z eigenvalue of spin 1 and spin 2 on each basis state (up = +1).
_Z1 = np.array([1, 1, -1, -1])
_Z2 = np.array([1, -1, 1, -1])


@dataclass(frozen=True)
class StateVector:
    """Amplitudes ``(a, b, c, d)`` on ``|uu>, |ud>, |du>, |dd>``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise ValueError(f"a two-spin state needs 4 amplitudes, got {amps.shape[0]}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, index: int) -> "StateVector":
        v = np.zeros(4, dtype=complex)
        v[index] = 1.0
        return cls(v)

    def __getitem__(self, k):
        return self.amplitudes[k]

    def __iter__(self):
        return iter(self.amplitudes)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = EXACT_TOL) -> bool:
        return abs(float(np.sum(np.abs(self.amplitudes) ** 2)) - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalise the zero vector")
        return StateVector(self.amplitudes / n)

    def isclose(self, other: "StateVector", tol: float = EXACT_TOL) -> bool:
        return float(np.max(np.abs(self.amplitudes - other.amplitudes))) <= tol

    def to_json(self) -> list:
        return [complex_to_pair(z) for z in self.amplitudes]

    @classmethod
    def from_json(cls, obj) -> "StateVector":
        if not isinstance(obj, list) or len(obj) != 4:
            raise ParseError("state JSON must be a list of 4 [re, im] pairs")
        amps = []
        for k, pair in enumerate(obj):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise ParseError(f"amplitude {k}: expected [re, im], got {pair!r}")
            try:
                amps.append(complex(float(pair[0]), float(pair[1])))
            except (TypeError, ValueError):
                raise ParseError(f"amplitude {k}: non-numeric entry {pair!r}") from None
        return cls(amps)


def apply_operator(m: Operator4, psi: StateVector) -> StateVector:
    return StateVector(np.asarray(m) @ psi.amplitudes)


@dataclass(frozen=True)
class HamiltonianParams:
    """Angular frequencies in rad/s; ``omega12`` is the scalar coupling."""

    omega1: float = 0.0
    omega2: float = 0.0
    omega12: float = 0.0

    def __post_init__(self):
        for name in ("omega1", "omega2", "omega12"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def energies(self) -> np.ndarray:
        """Diagonal of ``H`` in the fixed basis."""
        return self.omega1 * _Z1 + self.omega2 * _Z2 + self.omega12 * _Z1 * _Z2

    def matrix(self) -> Operator4:
        return Operator4(np.diag(self.energies()))


def hamiltonian_unitary(p: HamiltonianParams, t: float) -> Operator4:
    """``exp(-i H t)``; diagonal because ``H`` is."""
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    return Operator4(np.diag(np.exp(-1j * t * p.energies())))


class CouplingDelay(NamedTuple):
    """Evolution time for a coupling rotation plus the z phases picked up meanwhile.

    ``residual_z1`` / ``residual_z2`` are rotation angles: the free
    evolution equals ``Rzz(theta) Rz1(residual_z1) Rz2(residual_z2)``.
    Apply ``Rz1(-residual_z1)`` and ``Rz2(-residual_z2)`` to cancel them.
    """

    t: float
    residual_z1: float
    residual_z2: float


def coupling_delay(p: HamiltonianParams, theta: float) -> CouplingDelay:
    """Free-evolution time realising ``Rzz(theta)``.

    Raises:
        ZeroCoupling: if ``omega12`` is zero.
    """
    if p.omega12 == 0.0:
        raise ZeroCoupling("omega12 is zero; the coupling rotation cannot be realised")
    t = -theta / p.omega12
    return CouplingDelay(t + 0.0, -p.omega1 * t + 0.0, -p.omega2 * t + 0.0)
