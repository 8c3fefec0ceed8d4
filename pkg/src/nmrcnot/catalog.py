"""Built-in catalog of the CNOT-class matrices and their pulse sequences.

Each entry carries the declared matrix plus two printed forms of the
pulse program: the compact rotation line (``R_y2(-pi/4) ...``) and the
explicit exponential line. Both are stored as written, including the
places where they disagree; :func:`audit_entry` reports the agreement.

Sign convention: ``exp(i theta P)`` in the exponential line is the
rotation ``R(theta)``, so ``e^{-i pi/4 e1 (x) sy2}`` is ``Ry2(-pi/4)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CatalogLookupError, TranscriptionError
from .linalg import EXACT_TOL, Operator4
from .pulses import PulseSequence, evaluate_sequence, parse_sequence

SQRT_MINUS_I = cmath.exp(-1j * math.pi / 4)

_CNOT = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
j = 1j

# id, declared rows, rotation line, exponential line (as rotations)
_RAW = [
    ("C_g", SQRT_MINUS_I * np.array(_CNOT),
     "Ry2(-pi/4) Rz1(-pi/4) Rz2(-pi/4) Rzz(pi/4) Ry2(pi/4)",
     "Ry2(-pi/4) Rz1(-pi/4) Rz2(-pi/4) Rzz(pi/4) Rz2(pi/4)"),
    ("C_c1",
     [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
     "Rx2(-pi/4) Rz2(-pi/4) Rzz(pi/4) Rx2(pi/4)",
     "Rx2(-pi/4) Rz2(-pi/4) Rzz(pi/4) Rx2(pi/4)"),
    ("C_c2",
     [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0]],
     "Rx1(-pi/4) Rz1(-pi/4) Rzz(pi/4) Rx1(pi/4)",
     "Rx1(-pi/4) Rz1(-pi/4) Rzz(pi/4) Rx1(pi/4)"),
    ("C_c11",
     [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -j], [0, 0, -j, 0]],
     "Ry2(-pi/4) Rzz(pi/4) Rz2(-pi/4) Ry2(pi/4)",
     "Ry2(-pi/4) Rzz(pi/4) Rz2(-pi/4) Ry2(pi/4)"),
    ("C_c22",
     [[1, 0, 0, 0], [0, 0, 0, -j], [0, 0, 1, 0], [0, -j, 0, 0]],
     "Ry1(-pi/4) Rzz(pi/4) Rz1(-pi/4) Ry1(pi/4)",
     "Ry1(-pi/4) Rzz(pi/4) Rz1(-pi/4) Ry1(pi/4)"),
    ("C_c31",
     [[0, 0, -j, 0], [0, 1, 0, 0], [-j, 0, 0, 0], [0, 0, 0, 1]],
     "Ry1(-pi/4) Rzz(-pi/4) Rz1(-pi/4) Ry1(pi/4)",
     "Ry1(-pi/4) Rzz(-pi/4) Rz1(-pi/4) Ry1(pi/4)"),
    ("C_c32",
     [[0, -j, 0, 0], [-j, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
     "Ry2(-pi/4) Rzz(-pi/4) Rz2(-pi/4) Ry2(pi/4)",
     "Ry2(-pi/4) Rzz(-pi/4) Rz2(-pi/4) Ry2(pi/4)"),
    ("C_c41",
     [[0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1]],
     "Rx1(-pi/4) Rzz(-pi/4) Rz1(-pi/4) Rx1(pi/4)",
     "Rx1(-pi/4) Rzz(-pi/4) Rz1(-pi/4) Rx1(pi/4)"),
    ("C_c42",
     [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
     "Rx2(-pi/4) Rzz(-pi/4) Rz2(-pi/4) Rx2(pi/4)",
     "Rx2(-pi/4) Rzz(-pi/4) Rz2(-pi/4) Rx2(pi/4)"),
    ("C_c51",
     [[1, 0, 0, 0], [0, 0, 0, j], [0, 0, 1, 0], [0, j, 0, 0]],
     "Ry1(-pi/4) Rzz(-pi/4) Rz1(pi/4) Ry1(pi/4)",
     "Ry1(-pi/4) Rzz(-pi/4) Rz1(-pi/4) Ry1(pi/4)"),
    ("C_c52",
     [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, j], [0, 0, j, 0]],
     "Ry2(-pi/4) Rzz(-pi/4) Rz2(pi/4) Ry2(pi/4)",
     "Ry2(-pi/4) Rzz(-pi/4) Rz2(pi/4) Ry2(pi/4)"),
    ("C_c61",
     [[1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0]],
     "Rx1(-pi/4) Rzz(-pi/4) Rz1(pi/4) Rx1(pi/4)",
     "Rx1(-pi/4) Rzz(-pi/4) Rz1(pi/4) Rx1(pi/4)"),
    ("C_c62",
     [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
     "Rx2(-pi/4) Rzz(-pi/4) Rz2(pi/4) Rx2(pi/4)",
     "Rx2(-pi/4) Rzz(-pi/4) Rz2(pi/4) Rx2(pi/4)"),
    ("C_c71",
     [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
     "Rx2(-pi/4) Rzz(pi/4) Rz2(pi/4) Rx2(pi/4)",
     "Rx2(-pi/4) Rzz(pi/4) Rz2(pi/4) Rx2(pi/4)"),
    ("C_c72",
     [[0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]],
     "Rx1(-pi/4) Rzz(pi/4) Rz1(pi/4) Rx1(pi/4)",
     "Rx1(-pi/4) Rzz(pi/4) Rz1(pi/4) Rx1(pi/4)"),
    ("C_c81",
     [[0, j, 0, 0], [j, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
     "Ry2(-pi/4) Rzz(pi/4) Rz2(pi/4) Ry2(pi/4)",
     "Ry2(-pi/4) Rzz(pi/4) Rz2(pi/4) Ry2(pi/4)"),
    ("C_c82",
     [[0, 0, j, 0], [0, 1, 0, 0], [j, 0, 0, 0], [0, 0, 0, 1]],
     "Ry1(-pi/4) Rzz(pi/4) Rz1(pi/4) Ry1(pi/4)",
     "Ry1(-pi/4) Rzz(pi/4) Rz1(pi/4) Ry1(pi/4)"),
]
del j


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    declared_matrix: Operator4
    r_form: PulseSequence
    exp_form: PulseSequence
    index: int

    @property
    def is_family_member(self) -> bool:
        """True for the sixteen CNOT-family members, False for ``C_g``."""
        return self.id != "C_g"


def _build() -> tuple[CatalogEntry, ...]:
    return tuple(
        CatalogEntry(id_, Operator4(rows), parse_sequence(r), parse_sequence(e), k)
        for k, (id_, rows, r, e) in enumerate(_RAW, start=1)
    )


_CATALOG = _build()
_BY_ID = {e.id: e for e in _CATALOG}


def builtin_catalog() -> tuple[CatalogEntry, ...]:
    """All 17 entries, ``C_g`` first, then the family in its usual listing order."""
    return _CATALOG


def catalog_ids() -> list[str]:
    return [e.id for e in _CATALOG]


def lookup(entry_id: str) -> CatalogEntry:
    try:
        return _BY_ID[entry_id]
    except KeyError:
        raise CatalogLookupError(
            f"no catalog entry {entry_id!r}; known ids: {', '.join(_BY_ID)}"
        ) from None


def family_entries() -> tuple[CatalogEntry, ...]:
    return tuple(e for e in _CATALOG if e.is_family_member)


@dataclass(frozen=True)
class AuditRecord:
    id: str
    index: int
    r_product: Operator4
    exp_product: Operator4
    r_deviation: float
    exp_deviation: float
    forms_deviation: float
    tol: float

    @property
    def r_matches_declared(self) -> bool:
        return self.r_deviation <= self.tol

    @property
    def exp_matches_declared(self) -> bool:
        return self.exp_deviation <= self.tol

    @property
    def forms_agree(self) -> bool:
        return self.forms_deviation <= self.tol

    @property
    def any_match(self) -> bool:
        return self.r_matches_declared or self.exp_matches_declared

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "index": self.index,
            "r_matches_declared": self.r_matches_declared,
            "exp_matches_declared": self.exp_matches_declared,
            "forms_agree": self.forms_agree,
            "r_deviation": _dev(self.r_deviation),
            "exp_deviation": _dev(self.exp_deviation),
            "forms_deviation": _dev(self.forms_deviation),
            "r_product": self.r_product.to_json(),
            "exp_product": self.exp_product.to_json(),
        }


def _dev(x: float) -> float:
    # round-off noise differs across BLAS builds; keep the JSON stable
    return 0.0 if x < 1e-15 else float(f"{x:.6e}")


def audit_entry(e: CatalogEntry, tol: float = EXACT_TOL) -> AuditRecord:
    """Evaluate both printed forms and compare them with the declared matrix."""
    r = evaluate_sequence(e.r_form)
    x = evaluate_sequence(e.exp_form)
    return AuditRecord(
        id=e.id,
        index=e.index,
        r_product=r,
        exp_product=x,
        r_deviation=r.max_abs_diff(e.declared_matrix),
        exp_deviation=x.max_abs_diff(e.declared_matrix),
        forms_deviation=r.max_abs_diff(x),
        tol=tol,
    )


def audit_catalog(tol: float = EXACT_TOL, strict: bool = False) -> list[AuditRecord]:
    """Audit every entry in catalog order.

    With ``strict`` a :class:`TranscriptionError` is raised if some entry
    matches neither form, since that points at a mistyped catalog rather
    than at a slip in one printed line.
    """
    records = [audit_entry(e, tol) for e in _CATALOG]
    bad = [r.id for r in records if not r.any_match]
    if strict and bad:
        raise TranscriptionError(
            f"entries matching neither printed form: {', '.join(bad)}; check the transcription"
        )
    return records


def format_audit_table(records: list[AuditRecord]) -> str:
    head = f"{'id':<6} {'#':>3} {'R=decl':<6} {'exp=decl':<8} {'agree':<5} {'dev R':>8} {'dev exp':>8} {'dev R/exp':>9}"
    lines = [head, "-" * len(head)]

    def yn(flag):
        return "yes" if flag else "NO"

    for r in records:
        lines.append(
            f"{r.id:<6} {r.index:>3} {yn(r.r_matches_declared):<6} {yn(r.exp_matches_declared):<8} "
            f"{yn(r.forms_agree):<5} {_dev(r.r_deviation):>8.1e} {_dev(r.exp_deviation):>8.1e} "
            f"{_dev(r.forms_deviation):>9.1e}"
        )
    disagree = [r.id for r in records if not r.forms_agree]
    lines.append("")
    lines.append(f"entries audited: {len(records)}")
    lines.append(f"printed forms disagree: {', '.join(disagree) if disagree else 'none'}")
    return "\n".join(lines)
