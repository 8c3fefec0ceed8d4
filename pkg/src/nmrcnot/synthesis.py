"""Enumerate the 16-member CNOT family and pick sequences an apparatus can run.

Every family member is a four-pulse sandwich on one spin ``s``::

    R_{a,s}(-pi/4)  R_zz(eps pi/4)  R_{z,s}(delta pi/4)  R_{a,s}(pi/4)

with ``a`` in {x, y} and ``eps``, ``delta`` in {+1, -1}. The outer pair
turns ``z`` into ``a``; the diagonal middle produces a controlled phase
that the sandwich turns into a controlled flip.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import NotCnotLike
from .linalg import EIGEN_TOL, EXACT_TOL, Operator4, complex_to_pair, equal_up_to_global_phase
from .pulses import Pulse, PulseSequence, evaluate_sequence

log = logging.getLogger(__name__)

SANDWICH_AXES = ("x", "y")
QUARTER = Fraction(1, 4)


@dataclass(frozen=True, order=True)
class SequenceTemplate:
    sandwich_axis: str
    spin: int
    coupling_sign: int
    z_sign: int

    def __post_init__(self):
        if self.sandwich_axis not in SANDWICH_AXES:
            raise ValueError(f"sandwich axis must be x or y, got {self.sandwich_axis!r}")
        if self.spin not in (1, 2):
            raise ValueError(f"spin must be 1 or 2, got {self.spin!r}")
        if self.coupling_sign not in (1, -1) or self.z_sign not in (1, -1):
            raise ValueError("coupling_sign and z_sign must be +1 or -1")

    def operator_order(self) -> list[Pulse]:
        a, s = self.sandwich_axis, self.spin
        return [
            Pulse.rotation(a, s, -QUARTER),
            Pulse.coupling(self.coupling_sign * QUARTER),
            Pulse.rotation("z", s, self.z_sign * QUARTER),
            Pulse.rotation(a, s, QUARTER),
        ]

    def sequence(self) -> PulseSequence:
        return PulseSequence.from_operator_order(self.operator_order())

    def unitary(self) -> Operator4:
        return evaluate_sequence(self.sequence())

    def axes_on(self, spin: int) -> set[str]:
        """Single-spin axes this template pulses on ``spin``."""
        return {self.sandwich_axis, "z"} if spin == self.spin else set()

    def label(self) -> str:
        sign = {1: "+", -1: "-"}
        return f"{self.sandwich_axis}{self.spin}/zz{sign[self.coupling_sign]}/z{sign[self.z_sign]}"

    def to_json(self) -> dict:
        return {
            "sandwich_axis": self.sandwich_axis,
            "spin": self.spin,
            "coupling_sign": self.coupling_sign,
            "z_sign": self.z_sign,
            "sequence": self.sequence().to_text(),
        }


def all_templates() -> list[SequenceTemplate]:
    """The 16 templates in (axis, spin, coupling_sign, z_sign) order."""
    return sorted(
        SequenceTemplate(a, s, e, d)
        for a, s, e, d in itertools.product(SANDWICH_AXES, (1, 2), (-1, 1), (-1, 1))
    )


def enumerate_family(tol: float = EIGEN_TOL) -> list[tuple[SequenceTemplate, Operator4]]:
    """Compile every template; the results are checked to be pairwise distinct."""
    family = [(t, t.unitary()) for t in all_templates()]
    for (t1, m1), (t2, m2) in itertools.combinations(family, 2):
        if m1.isclose(m2, tol):
            raise AssertionError(f"templates {t1.label()} and {t2.label()} compile to the same matrix")
    return family


def phase_classes(
    family: Iterable[tuple[SequenceTemplate, Operator4]], tol: float = EXACT_TOL
) -> list[list[SequenceTemplate]]:
    """Group templates whose matrices differ only by a global phase."""
    classes: list[tuple[Operator4, list[SequenceTemplate]]] = []
    for t, m in family:
        for rep, members in classes:
            if equal_up_to_global_phase(m, rep, tol) is not None:
                members.append(t)
                break
        else:
            classes.append((m, [t]))
    return [members for _, members in classes]


@dataclass(frozen=True)
class GateClassification:
    """How a CNOT-like operator routes basis states.

    ``basis_phases[k]`` is the phase on whichever input lands on basis
    state ``k``, i.e. the nonzero entry of row ``k``. Polarity ``"up"``
    means the flip fires when the control spin is up.
    """

    control_spin: int
    control_polarity: str
    target_spin: int
    basis_phases: tuple[complex, complex, complex, complex]
    permutation: tuple[int, int, int, int]

    def to_json(self) -> dict:
        return {
            "control_spin": self.control_spin,
            "control_polarity": self.control_polarity,
            "target_spin": self.target_spin,
            "basis_phases": [complex_to_pair(z) for z in self.basis_phases],
            "permutation": list(self.permutation),
        }


def _spin_bits(index: int) -> tuple[int, int]:
    # 0 = up, 1 = down; spin 1 is the high bit
    return index >> 1, index & 1


def classify_cnot_like(m: Operator4, tol: float = EIGEN_TOL) -> GateClassification:
    """Identify the control/target structure of a phased controlled flip.

    Raises:
        NotCnotLike: unless every basis state maps to a unit-phase multiple
            of a basis state and exactly one pair of states that differ
            only in the target spin is swapped.
    """
    mm = np.asarray(m)
    perm = []
    for col in range(4):
        mags = np.abs(mm[:, col])
        row = int(np.argmax(mags))
        if abs(mags[row] - 1.0) > tol or np.delete(mags, row).max() > tol:
            raise NotCnotLike(f"basis state {col} is not sent to a single basis state")
        perm.append(row)
    if sorted(perm) != [0, 1, 2, 3]:
        raise NotCnotLike("basis images are not a permutation")

    moved = [k for k in range(4) if perm[k] != k]
    if len(moved) != 2:
        raise NotCnotLike(f"expected exactly two basis states swapped, found {len(moved)} moved")
    (s1a, s2a), (s1b, s2b) = _spin_bits(moved[0]), _spin_bits(moved[1])
    if s1a == s1b and s2a != s2b:
        control, target, value = 1, 2, s1a
    elif s2a == s2b and s1a != s1b:
        control, target, value = 2, 1, s2a
    else:
        raise NotCnotLike("swapped states differ in both spins")

    phases = tuple(complex(mm[row, perm.index(row)]) for row in range(4))
    return GateClassification(control, "up" if value == 0 else "down", target, phases, tuple(perm))


@dataclass(frozen=True)
class AxisConstraint:
    """Which single-spin axes an apparatus can pulse, and whether the coupling is usable."""

    spin1: frozenset[str] = frozenset("xyz")
    spin2: frozenset[str] = frozenset("xyz")
    coupling_available: bool = True

    def __post_init__(self):
        for name in ("spin1", "spin2"):
            axes = frozenset(getattr(self, name))
            if not axes <= {"x", "y", "z"}:
                raise ValueError(f"{name} axes must be a subset of x, y, z; got {sorted(axes)}")
            object.__setattr__(self, name, axes)

    @classmethod
    def everything(cls) -> "AxisConstraint":
        return cls()

    def allowed(self, spin: int) -> frozenset[str]:
        return self.spin1 if spin == 1 else self.spin2

    def permits(self, sequence: PulseSequence) -> bool:
        return not self.violations(sequence)

    def violations(self, sequence: PulseSequence) -> list[str]:
        out = []
        for p in sequence:
            if p.is_coupling:
                if not self.coupling_available:
                    out.append("coupling evolution unavailable")
            elif p.axis not in self.allowed(p.spin):
                out.append(f"{p.axis} pulses not allowed on spin {p.spin}")
        return sorted(set(out))


def select_realizable(constraints: AxisConstraint) -> list[SequenceTemplate]:
    """Family templates whose every pulse the apparatus can deliver."""
    chosen = [t for t in all_templates() if constraints.permits(t.sequence())]
    if not chosen:
        log.info("no CNOT-family template fits %s", constraints)
    return chosen


def rejection_reasons(constraints: AxisConstraint) -> dict[SequenceTemplate, list[str]]:
    """Why each excluded template was rejected."""
    out = {}
    for t in all_templates():
        v = constraints.violations(t.sequence())
        if v:
            out[t] = v
    return out
