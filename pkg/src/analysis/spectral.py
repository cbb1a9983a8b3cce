"""Spectral decomposition of the coupling Laplacian."""

from dataclasses import dataclass

import numpy as np

from src.model.network import CouplingTopology
from src.utils.errors import InvalidTopologyError

ZERO_EIGENVALUE_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """A = P diag(eigenvalues) P^T with ascending real eigenvalues.

    The first column of P is the normalized all-ones vector.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    algebraic_connectivity: float

    @property
    def zero_multiplicity(self) -> int:
        return int(np.sum(np.abs(self.eigenvalues) < ZERO_EIGENVALUE_ATOL))

    def reconstruction_error(self, laplacian: np.ndarray) -> float:
        P = self.eigenvectors
        return float(np.max(np.abs(laplacian - P @ np.diag(self.eigenvalues) @ P.T)))

    def as_dict(self) -> dict:
        return {"eigenvalues": self.eigenvalues.tolist(),
                "algebraic_connectivity": self.algebraic_connectivity}


def spectral_decompose(c: CouplingTopology) -> SpectralDecomposition:
    """
    Diagonalize the symmetric Laplacian with a symmetric eigensolver.

    The zero eigenspace is re-based so that its first vector is constant,
    which keeps the consensus mode in column 0 even for disconnected graphs.

    Raises:
        InvalidTopologyError: If the Laplacian is not symmetric.
    """
    A = np.asarray(c.laplacian, dtype=float)
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12):
        raise InvalidTopologyError("Laplacian must be symmetric")

    eigenvalues, P = np.linalg.eigh(A)
    P = P.copy()
    n = A.shape[0]
    ones = np.full(n, 1.0 / np.sqrt(n))

    null = np.flatnonzero(np.abs(eigenvalues) < ZERO_EIGENVALUE_ATOL)
    if null.size == 0:
        # A Laplacian always has 0 as an eigenvalue; fall back to the smallest one
        null = np.array([0])
    residual = P[:, null] - np.outer(ones, ones @ P[:, null])
    U, _, _ = np.linalg.svd(residual, full_matrices=False)
    P[:, null[0]] = ones
    P[:, null[1:]] = U[:, :null.size - 1]

    rho = float(eigenvalues[1]) if n > 1 else 0.0
    if abs(rho) < ZERO_EIGENVALUE_ATOL:
        rho = 0.0
    for array in (eigenvalues, P):
        array.setflags(write=False)
    return SpectralDecomposition(eigenvalues=eigenvalues, eigenvectors=P, algebraic_connectivity=rho)
