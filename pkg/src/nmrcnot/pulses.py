"""Pulses, pulse sequences and their compilation to two-spin unitaries.

A rotation is ``R(theta) = exp(i theta P)`` where ``P`` is the pulse
generator: a single-spin Pauli string (``x``, ``y`` or ``z`` on spin 1 or
2, identity on the other spin) or the ``z (x) z`` coupling.

Text notation follows operator order, as products are usually written::

    Rx2(-pi/4) Rz2(-pi/4) Rzz(pi/4) Rx2(pi/4)

The rightmost token acts on the state first. :class:`PulseSequence`
stores pulses in *application* order, i.e. the reverse of the text.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import ParseError
from .linalg import Operator4, PauliAxis, PauliString, exp_i_theta_pauli

AXES = ("x", "y", "z", "zz")
SPINS = (1, 2)

_TOKEN = re.compile(r"R(?P<axis>zz|z12|x|y|z)(?P<spin>\d*)\((?P<angle>[^()]*)\)\Z")
_ANGLE = re.compile(
    r"(?P<sign>[+-]?)\s*(?:(?P<num>\d+)\s*\*?\s*)?pi\s*(?:/\s*(?P<den>\d+))?\Z"
)


def parse_angle(text: str) -> Fraction:
    """Parse a rational multiple of pi, e.g. ``"-pi/4"`` or ``"3pi/2"``.

    Returns the multiple of pi as a :class:`~fractions.Fraction`.
    """
    s = text.strip()
    if s in ("0", "+0", "-0"):
        return Fraction(0)
    m = _ANGLE.match(s)
    if not m:
        raise ValueError(f"angle must be a rational multiple of pi, got {text!r}")
    num = int(m["num"]) if m["num"] else 1
    den = int(m["den"]) if m["den"] else 1
    if den == 0:
        raise ValueError("zero denominator in angle")
    frac = Fraction(num, den)
    return -frac if m["sign"] == "-" else frac


def format_angle(multiple: Fraction) -> str:
    """Inverse of :func:`parse_angle` in canonical spelling."""
    if multiple == 0:
        return "0"
    sign = "-" if multiple < 0 else ""
    n, d = abs(multiple.numerator), multiple.denominator
    body = "pi" if n == 1 else f"{n}pi"
    return f"{sign}{body}" if d == 1 else f"{sign}{body}/{d}"


def _guess_pi_multiple(angle: float, max_den: int = 64) -> Fraction | None:
    # only exact float matches, so a JSON round trip never moves the angle
    frac = Fraction(angle / math.pi).limit_denominator(max_den)
    if float(frac) * math.pi == angle:
        return frac
    return None


@dataclass(frozen=True)
class Pulse:
    """One rotation.

    ``axis`` is ``"x"``, ``"y"``, ``"z"`` (single-spin, ``spin`` 1 or 2) or
    ``"zz"`` (the coupling, ``spin`` is ``None``). ``angle`` is in radians.
    ``pi_multiple`` keeps the exact angle when it was given as a rational
    multiple of pi.
    """

    axis: str
    spin: int | None
    angle: float
    pi_multiple: Fraction | None = None

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.axis == "zz":
            if self.spin is not None:
                raise ValueError("the coupling pulse takes no spin index")
        elif self.spin not in SPINS:
            raise ValueError(f"spin must be 1 or 2, got {self.spin!r}")
        if not math.isfinite(self.angle):
            raise ValueError("pulse angle must be finite")
        if self.pi_multiple is not None and not math.isclose(
            float(self.pi_multiple) * math.pi, self.angle, rel_tol=1e-15, abs_tol=1e-15
        ):
            raise ValueError("pi_multiple disagrees with angle")

    @classmethod
    def rotation(cls, axis: str, spin: int | None, angle) -> "Pulse":
        """Build a pulse; ``angle`` may be radians or a ``"pi/4"`` string."""
        if isinstance(angle, str):
            frac = parse_angle(angle)
            return cls(axis, spin, float(frac) * math.pi, frac)
        if isinstance(angle, Fraction):
            return cls(axis, spin, float(angle) * math.pi, angle)
        angle = float(angle)
        return cls(axis, spin, angle, _guess_pi_multiple(angle))

    @classmethod
    def coupling(cls, angle) -> "Pulse":
        return cls.rotation("zz", None, angle)

    @property
    def generator(self) -> PauliString:
        if self.axis == "zz":
            return PauliString(PauliAxis.Z, PauliAxis.Z)
        ax = PauliAxis(self.axis)
        if self.spin == 1:
            return PauliString(ax, PauliAxis.IDENTITY)
        return PauliString(PauliAxis.IDENTITY, ax)

    @property
    def is_coupling(self) -> bool:
        return self.axis == "zz"

    def negated(self) -> "Pulse":
        pm = -self.pi_multiple if self.pi_multiple is not None else None
        return Pulse(self.axis, self.spin, -self.angle, pm)

    def angle_text(self) -> str:
        if self.pi_multiple is not None:
            return format_angle(self.pi_multiple)
        return repr(self.angle)

    def to_text(self) -> str:
        spin = "" if self.spin is None else str(self.spin)
        return f"R{self.axis}{spin}({self.angle_text()})"

    def to_json(self) -> dict:
        angle = format_angle(self.pi_multiple) if self.pi_multiple is not None else self.angle
        return {"axis": self.axis, "spin": self.spin, "angle": angle}

    @classmethod
    def from_json(cls, obj: dict) -> "Pulse":
        try:
            return cls.rotation(obj["axis"], obj.get("spin"), obj["angle"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad pulse object {obj!r}: {exc}") from None


def pulse_unitary(p: Pulse) -> Operator4:
    return exp_i_theta_pauli(p.angle, p.generator)


@dataclass(frozen=True)
class PulseSequence:
    """Pulses in application order (``pulses[0]`` hits the state first)."""

    pulses: tuple[Pulse, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pulses", tuple(self.pulses))

    @classmethod
    def from_operator_order(cls, pulses: Iterable[Pulse]) -> "PulseSequence":
        return cls(tuple(reversed(list(pulses))))

    def operator_order(self) -> tuple[Pulse, ...]:
        return tuple(reversed(self.pulses))

    def __len__(self):
        return len(self.pulses)

    def __iter__(self):
        return iter(self.pulses)

    def __add__(self, other: "PulseSequence") -> "PulseSequence":
        """``a + b`` applies ``a`` first, then ``b``."""
        if not isinstance(other, PulseSequence):
            return NotImplemented
        return PulseSequence(self.pulses + other.pulses)

    def inverse(self) -> "PulseSequence":
        return PulseSequence(tuple(p.negated() for p in reversed(self.pulses)))

    def uses_coupling(self) -> bool:
        return any(p.is_coupling for p in self.pulses)

    def unitary(self) -> Operator4:
        return evaluate_sequence(self)

    def to_text(self) -> str:
        return " ".join(p.to_text() for p in self.operator_order())

    def __str__(self):
        return self.to_text()

    def to_json(self) -> dict:
        return {"pulses": [p.to_json() for p in self.pulses], "order": "application"}

    @classmethod
    def from_json(cls, obj: dict) -> "PulseSequence":
        if not isinstance(obj, dict) or not isinstance(obj.get("pulses"), list):
            raise ParseError('sequence JSON must be an object with a "pulses" list')
        order = obj.get("order", "application")
        pulses = [Pulse.from_json(p) for p in obj["pulses"]]
        if order == "application":
            return cls(tuple(pulses))
        if order == "operator":
            return cls.from_operator_order(pulses)
        raise ParseError(f'"order" must be "application" or "operator", got {order!r}')


def parse_sequence(text: str) -> PulseSequence:
    """Parse operator-order notation into a :class:`PulseSequence`.

    Raises:
        ParseError: carrying the 1-based position of the first bad token.
    """
    pulses = []
    for pos, tok in enumerate(text.split(), start=1):
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"cannot parse {tok!r}; expected R<axis><spin>(<angle>)", pos)
        axis, spin_txt = m["axis"], m["spin"]
        if axis in ("zz", "z12"):
            if spin_txt and not (axis == "zz" and spin_txt == "12"):
                raise ParseError(f"coupling pulse takes no spin index in {tok!r}", pos)
            axis, spin = "zz", None
        else:
            if spin_txt not in ("1", "2"):
                raise ParseError(f"spin must be 1 or 2 in {tok!r}", pos)
            spin = int(spin_txt)
        try:
            frac = parse_angle(m["angle"])
        except ValueError as exc:
            raise ParseError(str(exc), pos) from None
        pulses.append(Pulse(axis, spin, float(frac) * math.pi, frac))
    return PulseSequence.from_operator_order(pulses)


def evaluate_sequence(s: PulseSequence) -> Operator4:
    """Compile a sequence: the product of its pulse unitaries, last-applied leftmost."""
    u = np.eye(4, dtype=complex)
    for p in s.pulses:
        u = np.asarray(pulse_unitary(p)) @ u
    return Operator4(u)
