"""Reference computations kept independent of the package code paths."""

import math

import numpy as np

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def taylor_expm(a, terms=50):
    """Truncated power series for exp(A)."""
    a = np.asarray(a, dtype=complex)
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    return out


def pauli_kron(label):
    """4x4 matrix of a two-letter label like "zx", built entry by entry."""
    a, b = PAULI[label[0].lower()], PAULI[label[1].lower()]
    out = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    out[2 * i + k, 2 * j + l] = a[i, j] * b[k, l]
    return out


def random_unitary(rng, n=4):
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def quadratic_roots(trace, det):
    """Eigenvalues of a 2x2 block from its characteristic polynomial."""
    disc = complex(trace) ** 2 - 4 * complex(det)
    s = np.sqrt(disc)
    return ((trace + s) / 2, (trace - s) / 2)
