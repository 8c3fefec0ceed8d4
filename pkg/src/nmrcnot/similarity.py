"""Similarity of normal 4x4 operators.

Two matrices ``A`` and ``B`` are similar when ``B = P^-1 A P`` for some
nonsingular ``P``. For normal (in particular unitary) matrices this is
decided by comparing spectra and then building ``P`` from the two
eigenbases. Every candidate ``P`` is checked by substitution before it
is reported.

:func:`check_similarity` evaluates six standard necessary-or-sufficient
conditions separately so each can be audited on its own:

1. equal determinants
2. equal traces
3. the inverses are similar
4. a conjugator ``P`` exists with ``A = P B P^-1``
5. equal eigenvalue multisets
6. ``P`` carries each eigenvector of ``B`` to an eigenvector of ``A``
   with the same eigenvalue
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotNormal
from .linalg import (
    EIGEN_TOL,
    Operator4,
    complex_to_pair,
    eigen_decompose,
    match_multisets,
)

PROPERTY_NAMES = {
    1: "determinant",
    2: "trace",
    3: "inverse similarity",
    4: "conjugator",
    5: "spectrum",
    6: "eigenvector map",
}

INVERSE_CAVEAT = (
    "measured on the inverses; follows from similarity but is reported "
    "separately and does not enter the verdict"
)


def _jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return complex_to_pair(complex(value))[0]
    if isinstance(value, complex):
        return complex_to_pair(value)
    if isinstance(value, Operator4):
        return value.to_json()
    if isinstance(value, np.ndarray):
        return [_jsonable(complex(z)) for z in value]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    raise TypeError(f"cannot serialise {type(value).__name__}")


@dataclass(frozen=True)
class PropertyCheck:
    """Outcome of one similarity property.

    ``passed`` is ``None`` when the property was skipped. ``residual`` is
    the measured mismatch the pass/fail decision was made on.
    """

    property: int
    passed: bool | None
    lhs: object = None
    rhs: object = None
    residual: float | None = None
    note: str = ""

    @property
    def name(self) -> str:
        return PROPERTY_NAMES[self.property]

    def to_json(self) -> dict:
        out = {
            "property": self.property,
            "name": self.name,
            "pass": self.passed,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "residual": _jsonable(self.residual),
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class SimilarityReport:
    properties: tuple[PropertyCheck, ...]
    conjugator: Operator4 | None
    tol: float
    _by_number: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_number", {p.property: p for p in self.properties})

    @property
    def similar(self) -> bool:
        return self.conjugator is not None

    @property
    def verdict(self) -> str:
        return "similar" if self.similar else "not-similar"

    def __getitem__(self, k: int) -> PropertyCheck:
        return self._by_number[k]

    def failed(self) -> list[int]:
        return [p.property for p in self.properties if p.passed is False]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "tol": self.tol,
            "properties": [p.to_json() for p in self.properties],
            "conjugator": None if self.conjugator is None else self.conjugator.to_json(),
        }


def _require_normal(m: Operator4, name: str, tol: float):
    defect = m.normality_defect()
    if defect > tol:
        raise NotNormal(f"{name} is not normal (commutator norm {defect:.3e})")


def _candidate(a: Operator4, b: Operator4, tol: float):
    """Best-effort conjugator from paired eigenbases.

    Returns ``(P, spectral_gap, eigen_b, paired_a_values)``. ``P`` is
    unitary; it is a true conjugator only if the spectra agree.
    """
    ea = eigen_decompose(a, tol)
    eb = eigen_decompose(b, tol)
    # perm[k]: which eigenpair of A is paired with the k-th eigenpair of B
    perm, gap = match_multisets(eb.eigenvalues, ea.eigenvalues)
    va = ea.eigenvectors[:, perm]
    p = va @ eb.eigenvectors.conj().T
    return Operator4(p), gap, eb, ea.eigenvalues[perm]


def substitution_residual(a: Operator4, b: Operator4, p: Operator4) -> float:
    """``max |A - P B P^-1|``."""
    pm = np.asarray(p)
    return float(np.max(np.abs(np.asarray(a) - pm @ np.asarray(b) @ np.linalg.inv(pm))))


def find_conjugator(a: Operator4, b: Operator4, tol: float = EIGEN_TOL) -> Operator4 | None:
    """Return ``P`` with ``A = P B P^-1`` within ``tol``, or ``None``.

    Both inputs must be normal. The returned ``P`` is unitary.
    """
    _require_normal(a, "A", tol)
    _require_normal(b, "B", tol)
    p, gap, _, _ = _candidate(a, b, tol)
    if gap > tol:
        return None
    if substitution_residual(a, b, p) > tol:
        return None
    return p


def check_similarity(
    a: Operator4, b: Operator4, tol: float = EIGEN_TOL, check_inverses: bool = True
) -> SimilarityReport:
    """Evaluate all six similarity properties for ``A`` and ``B``.

    Raises:
        NotNormal: if either input is not normal.
        SingularInput: if ``check_inverses`` and either input is singular.
    """
    _require_normal(a, "A", tol)
    _require_normal(b, "B", tol)

    det_a, det_b = a.det(), b.det()
    tr_a, tr_b = a.trace(), b.trace()
    checks = [
        PropertyCheck(1, abs(det_a - det_b) <= tol, det_a, det_b, abs(det_a - det_b)),
        PropertyCheck(2, abs(tr_a - tr_b) <= tol, tr_a, tr_b, abs(tr_a - tr_b)),
    ]

    if check_inverses:
        inv_a, inv_b = a.inverse(), b.inverse()
        spec_ia = eigen_decompose(inv_a, tol).eigenvalues
        spec_ib = eigen_decompose(inv_b, tol).eigenvalues
        gap = match_multisets(spec_ia, spec_ib)[1]
        ok = gap <= tol and find_conjugator(inv_a, inv_b, tol) is not None
        checks.append(PropertyCheck(3, ok, spec_ia, spec_ib, gap, INVERSE_CAVEAT))
    else:
        checks.append(PropertyCheck(3, None, note="skipped"))

    p, gap, eb, paired = _candidate(a, b, tol)
    sub_res = substitution_residual(a, b, p)
    conj = p if (gap <= tol and sub_res <= tol) else None
    pm = np.asarray(p)
    checks.append(
        PropertyCheck(
            4,
            conj is not None,
            a,
            Operator4(pm @ np.asarray(b) @ pm.conj().T),
            sub_res,
        )
    )

    spec_a = eigen_decompose(a, tol).eigenvalues
    checks.append(PropertyCheck(5, gap <= tol, spec_a, eb.eigenvalues, gap))

    # columns of P V_b must be eigenvectors of A for the paired eigenvalues
    mapped = pm @ eb.eigenvectors
    evec_res = np.linalg.norm(np.asarray(a) @ mapped - mapped * eb.eigenvalues[None, :], axis=0)
    worst = float(np.max(evec_res))
    checks.append(PropertyCheck(6, gap <= tol and worst <= tol, paired, eb.eigenvalues, worst))

    return SimilarityReport(tuple(checks), conj, tol)

