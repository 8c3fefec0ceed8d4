"""Small fixed-size complex linear algebra for two spin-1/2 systems.

Everything here works on 2x2 single-spin matrices and 4x4 two-spin
operators. The two-spin basis order is fixed for the whole package::

    index 0: |up, up>    index 1: |up, down>
    index 2: |down, up>  index 3: |down, down>

so spin 1 is the slow (left) tensor index.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .errors import NotNormal, ParseError, SingularInput

EXACT_TOL = 1e-12
EIGEN_TOL = 1e-9

# Values below this are written as exact zeros in JSON output.
_SERIAL_ZERO = 1e-15

SIGMA_I = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
for _m in (SIGMA_I, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.flags.writeable = False


class PauliAxis(enum.Enum):
    IDENTITY = "i"
    X = "x"
    Y = "y"
    Z = "z"

    @property
    def matrix(self) -> np.ndarray:
        return _AXIS_MATRIX[self]

    @classmethod
    def parse(cls, label: str) -> "PauliAxis":
        key = label.strip().lower()
        if key in ("e", "identity", "1"):
            key = "i"
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown Pauli axis {label!r}") from None


_AXIS_MATRIX = {
    PauliAxis.IDENTITY: SIGMA_I,
    PauliAxis.X: SIGMA_X,
    PauliAxis.Y: SIGMA_Y,
    PauliAxis.Z: SIGMA_Z,
}


class PauliString(NamedTuple):
    """Two-factor tensor word ``spin1 (x) spin2``."""

    spin1: PauliAxis
    spin2: PauliAxis

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Build from a two-letter label such as ``"ZZ"`` or ``"IX"``."""
        if len(label) != 2:
            raise ValueError(f"Pauli string label must have 2 letters, got {label!r}")
        return cls(PauliAxis.parse(label[0]), PauliAxis.parse(label[1]))

    @property
    def label(self) -> str:
        return (self.spin1.value + self.spin2.value).upper()

    def matrix(self) -> "Operator4":
        return pauli_string_matrix(self)


ALL_PAULI_STRINGS = tuple(PauliString(a, b) for a in PauliAxis for b in PauliAxis)


def complex_to_pair(z: complex) -> list[float]:
    re, im = float(z.real), float(z.imag)
    re = 0.0 if abs(re) < _SERIAL_ZERO else re + 0.0
    im = 0.0 if abs(im) < _SERIAL_ZERO else im + 0.0
    return [re, im]


def _from_pair(pair, where: str) -> complex:
    if (
        not isinstance(pair, (list, tuple))
        or len(pair) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
    ):
        raise ParseError(f"{where}: expected [re, im], got {pair!r}")
    return complex(pair[0], pair[1])


class Operator4:
    """Immutable 4x4 complex operator in the fixed two-spin basis.

    Equality (``==``) is elementwise within ``EXACT_TOL``; use
    :meth:`isclose` for any other tolerance.
    """

    __slots__ = ("_m",)

    def __init__(self, data):
        m = np.array(data, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"Operator4 needs a 4x4 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("Operator4 entries must be finite")
        m.flags.writeable = False
        self._m = m

    @classmethod
    def identity(cls) -> "Operator4":
        return cls(np.eye(4))

    @property
    def matrix(self) -> np.ndarray:
        """Read-only view of the underlying array."""
        return self._m

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._m.copy()
        return self._m.astype(dtype)

    def __getitem__(self, idx):
        return self._m[idx]

    def __matmul__(self, other):
        if isinstance(other, Operator4):
            return Operator4(self._m @ other._m)
        return self._m @ np.asarray(other)

    def __mul__(self, scalar) -> "Operator4":
        if isinstance(scalar, (Operator4, np.ndarray)):
            return NotImplemented
        return Operator4(self._m * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "Operator4":
        return Operator4(-self._m)

    def __eq__(self, other):
        if not isinstance(other, Operator4):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None

    def __repr__(self):
        rows = ",\n ".join(
            "[" + ", ".join(format_complex(z) for z in row) + "]" for row in self._m
        )
        return f"Operator4(\n[{rows}])"

    def dagger(self) -> "Operator4":
        return Operator4(self._m.conj().T)

    def inverse(self) -> "Operator4":
        if abs(np.linalg.det(self._m)) < 1e-14:
            raise SingularInput("matrix is singular; no inverse")
        return Operator4(np.linalg.inv(self._m))

    def trace(self) -> complex:
        return complex(np.trace(self._m))

    def det(self) -> complex:
        return complex(np.linalg.det(self._m))

    def max_abs_diff(self, other: "Operator4") -> float:
        return float(np.max(np.abs(self._m - np.asarray(other))))

    def isclose(self, other: "Operator4", tol: float = EXACT_TOL) -> bool:
        return self.max_abs_diff(other) <= tol

    def unitarity_defect(self) -> float:
        """``max |U^dag U - I|`` over entries."""
        return float(np.max(np.abs(self._m.conj().T @ self._m - np.eye(4))))

    def is_unitary(self, tol: float = EXACT_TOL) -> bool:
        return self.unitarity_defect() <= tol

    def normality_defect(self) -> float:
        """Spectral norm of the commutator ``M M^dag - M^dag M``."""
        m, md = self._m, self._m.conj().T
        return float(np.linalg.norm(m @ md - md @ m, 2))

    def is_normal(self, tol: float = EIGEN_TOL) -> bool:
        return self.normality_defect() <= tol

    def to_json(self) -> dict:
        return {"rows": [[complex_to_pair(z) for z in row] for row in self._m]}

    @classmethod
    def from_json(cls, obj) -> "Operator4":
        if not isinstance(obj, dict) or "rows" not in obj:
            raise ParseError('matrix JSON must be an object with a "rows" key')
        rows = obj["rows"]
        if not isinstance(rows, list) or len(rows) != 4:
            raise ParseError("matrix JSON must have exactly 4 rows")
        data = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != 4:
                raise ParseError(f"row {i} must have exactly 4 entries")
            data.append([_from_pair(p, f"entry ({i},{j})") for j, p in enumerate(row)])
        try:
            return cls(data)
        except ValueError as exc:
            raise ParseError(str(exc)) from None


def format_complex(z: complex, digits: int = 4) -> str:
    re, im = complex_to_pair(complex(round(z.real, digits), round(z.imag, digits)))
    if im == 0.0:
        return f"{re:g}"
    if re == 0.0:
        return f"{im:g}j"
    return f"{re:g}{im:+g}j"


def tensor_product(a, b) -> Operator4:
    """Kronecker product of two 2x2 matrices; ``a`` acts on spin 1."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError("tensor_product takes two 2x2 matrices")
    return Operator4(np.kron(a, b))


def pauli_string_matrix(p: PauliString) -> Operator4:
    return tensor_product(p.spin1.matrix, p.spin2.matrix)


def exp_i_theta_pauli(theta: float, p: PauliString) -> Operator4:
    """Return ``exp(i theta P)`` for the Pauli string ``P``.

    Since ``P @ P = I`` the series collapses to ``cos(theta) I + i sin(theta) P``.
    """
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    pm = np.kron(p.spin1.matrix, p.spin2.matrix)
    return Operator4(math.cos(theta) * np.eye(4) + 1j * math.sin(theta) * pm)


def equal_up_to_global_phase(a: Operator4, b: Operator4, tol: float = EXACT_TOL) -> complex | None:
    """Find the unit-modulus ``c`` with ``a = c * b`` within ``tol``.

    Returns ``None`` when no such scalar exists.
    """
    am, bm = np.asarray(a), np.asarray(b)
    k = np.unravel_index(np.argmax(np.abs(bm)), bm.shape)
    if abs(bm[k]) <= tol:
        return None
    c = am[k] / bm[k]
    if abs(abs(c) - 1.0) > tol:
        return None
    c = c / abs(c)
    if np.max(np.abs(am - c * bm)) > tol:
        return None
    return complex(c)


# -- eigen decomposition -----------------------------------------------------


def _arg_key(z: complex) -> float:
    # principal argument in (-pi, pi]; values sitting on the cut go to +pi
    ang = math.atan2(z.imag, z.real)
    if ang <= -math.pi + 1e-9:
        ang = math.pi
    return ang


def canonical_order(values: Sequence[complex]) -> list[int]:
    """Indices sorting eigenvalues by argument, then magnitude.

    Keys are rounded so that values equal to ~1e-9 sort as ties and keep
    their input order; this is what makes the ordering reproducible.
    """
    keys = [(round(_arg_key(z), 9), round(abs(z), 9)) for z in values]
    return sorted(range(len(values)), key=lambda i: keys[i])


def match_multisets(a: Sequence[complex], b: Sequence[complex]) -> tuple[list[int], float]:
    """Greedy minimal-distance pairing of two equal-size multisets.

    Returns ``(perm, worst)`` where ``a[i]`` is paired with ``b[perm[i]]``
    and ``worst`` is the largest paired distance.
    """
    if len(a) != len(b):
        raise ValueError("multisets differ in size")
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    dist = np.abs(a[:, None] - b[None, :])
    perm = [-1] * len(a)
    free_a, free_b = set(range(len(a))), set(range(len(b)))
    worst = 0.0
    while free_a:
        # ties resolve to the smallest (i, j) for determinism
        i, j = min(((i, j) for i in free_a for j in free_b), key=lambda ij: (dist[ij], ij))
        perm[i] = j
        worst = max(worst, float(dist[i, j]))
        free_a.remove(i)
        free_b.remove(j)
    return perm, worst


def spectra_distance(a: Sequence[complex], b: Sequence[complex]) -> float:
    return match_multisets(a, b)[1]


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues with orthonormal eigenvector columns, canonically ordered."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def residuals(self, m: Operator4) -> np.ndarray:
        """``|M v - lambda v|`` for each pair."""
        mm = np.asarray(m)
        v = self.eigenvectors
        return np.linalg.norm(mm @ v - v * self.eigenvalues[None, :], axis=0)

    def reconstruct(self) -> Operator4:
        v = self.eigenvectors
        return Operator4(v @ np.diag(self.eigenvalues) @ v.conj().T)


def eigen_decompose(m: Operator4, tol: float = EIGEN_TOL) -> EigenSystem:
    """Diagonalise a normal operator.

    A complex Schur form of a normal matrix is diagonal, and its Schur
    vectors are an orthonormal eigenbasis even inside degenerate
    eigenspaces.

    Raises:
        NotNormal: if ``||M M^dag - M^dag M|| > tol``.
    """
    defect = m.normality_defect()
    if defect > tol:
        raise NotNormal(f"matrix is not normal (commutator norm {defect:.3e})")
    t, z = scipy.linalg.schur(np.asarray(m), output="complex")
    vals = np.diag(t).copy()
    order = canonical_order(vals)
    vals = vals[order]
    vecs = z[:, order]
    vals.flags.writeable = False
    vecs.flags.writeable = False
    return EigenSystem(vals, vecs)
