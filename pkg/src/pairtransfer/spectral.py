"""Spectral evaluation of the walk ``U(t) = exp(-i t L)``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, PreconditionError
from .graph import Graph, PairState, Perturbation, are_twins, check_pair, laplacian, perturb

SYMMETRY_TOL = 1e-12
ORTHOGONALITY_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-9
# fidelity may overshoot 1 by rounding, never by more than this
FIDELITY_SLACK = 1e-9
PHASE_FLOOR = 1e-12


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def source_dimension(self) -> int:
        return len(self.eigenvalues)


def decompose(L) -> SpectralDecomposition:
    """Eigendecomposition of a real symmetric matrix, eigenvalues ascending.

    Raises ``PreconditionError`` for a non-symmetric input and
    ``NumericalError`` when the result misses the orthogonality or
    reconstruction bounds.
    """
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {L.shape}")
    if L.size and np.max(np.abs(L - L.T)) > SYMMETRY_TOL:
        raise PreconditionError("matrix is not symmetric")
    try:
        w, V = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    n = len(w)
    if n:
        scale = max(1.0, float(np.max(np.abs(L))))
        if np.max(np.abs(V.T @ V - np.eye(n))) > ORTHOGONALITY_TOL:
            raise NumericalError("eigenvectors are not orthonormal")
        if np.max(np.abs((V * w) @ V.T - L)) > RECONSTRUCTION_TOL * scale:
            raise NumericalError("eigendecomposition does not reconstruct the input")
    w.setflags(write=False)
    V.setflags(write=False)
    return SpectralDecomposition(w, V)


def decompose_graph(g: Graph) -> SpectralDecomposition:
    return decompose(laplacian(g))


def evolve(d: SpectralDecomposition, t: float, x) -> np.ndarray:
    """Apply ``U(t)`` to a real or complex vector."""
    x = np.asarray(x)
    if x.shape != (d.source_dimension,):
        raise PreconditionError(f"vector of shape {x.shape} does not match n={d.source_dimension}")
    V = d.eigenvectors
    return V @ (np.exp(-1j * t * d.eigenvalues) * (V.T @ x))


def transition_matrix(d: SpectralDecomposition, t: float) -> np.ndarray:
    V = d.eigenvectors
    return (V * np.exp(-1j * t * d.eigenvalues)) @ V.T


def pair_amplitude(d: SpectralDecomposition, t: float, src: PairState, dst: PairState) -> complex:
    """``(1/2) src^T U(t) dst`` with both pairs in canonical orientation."""
    n = d.source_dimension
    check_pair(src, n)
    check_pair(dst, n)
    s = src.canonical()
    y = evolve(d, t, dst.canonical().vector(n))
    return complex(0.5 * (y[s.a] - y[s.b]))


def _fidelity_from_amplitude(amp: complex) -> tuple[float, complex | None]:
    f = abs(amp) ** 2
    if f > 1.0 + FIDELITY_SLACK:
        raise NumericalError(f"pair fidelity {f!r} exceeds 1")
    f = min(f, 1.0)
    phase = amp / abs(amp) if f > PHASE_FLOOR else None
    return f, phase


def pair_fidelity(d: SpectralDecomposition, t: float, src: PairState, dst: PairState):
    """Return ``(fidelity, phase)`` for the transfer ``src -> dst`` at time ``t``.

    ``phase`` is the unit-modulus amplitude, or ``None`` when the fidelity
    is too small for it to be meaningful.
    """
    return _fidelity_from_amplitude(pair_amplitude(d, t, src, dst))


def pair_amplitude_series(d: SpectralDecomposition, times, src: PairState, dst: PairState) -> np.ndarray:
    """Vectorized ``pair_amplitude`` over many times."""
    n = d.source_dimension
    check_pair(src, n)
    check_pair(dst, n)
    V = d.eigenvectors
    coeff = 0.5 * (V.T @ src.canonical().vector(n)) * (V.T @ dst.canonical().vector(n))
    times = np.asarray(times, dtype=float)
    return np.exp(-1j * np.multiply.outer(times, d.eigenvalues)) @ coeff


def pair_fidelity_series(d: SpectralDecomposition, times, src: PairState, dst: PairState) -> np.ndarray:
    f = np.abs(pair_amplitude_series(d, times, src, dst)) ** 2
    if f.size and f.max() > 1.0 + FIDELITY_SLACK:
        raise NumericalError(f"pair fidelity {f.max()!r} exceeds 1")
    return np.minimum(f, 1.0)


def lemma1_residual(g: Graph, p: Perturbation, t: float) -> float:
    """Max-entry gap between the two sides of the twin factorization.

    Left: ``U`` of the perturbed graph from its own eigendecomposition.
    Right: ``U_g(t) (I + (exp(-2i alpha t) - 1)/2 M)`` built from the
    unperturbed eigendecomposition and the rank-one correction. No twin
    check is made here.
    """
    left = transition_matrix(decompose_graph(perturb(g, p)), t)
    U = transition_matrix(decompose_graph(g), t)
    m = p.pair.vector(g.n)
    c = 0.5 * (np.exp(-2j * p.alpha * t) - 1.0)
    right = U + c * np.outer(U @ m, m)
    return float(np.max(np.abs(left - right))) if g.n else 0.0


def verify_lemma1(g: Graph, p: Perturbation, t: float, tol: float = 1e-9) -> tuple[float, bool]:
    check_pair(p.pair, g.n)
    if not are_twins(g, p.a, p.b):
        raise PreconditionError(f"vertices {p.a} and {p.b} are not twins")
    residual = lemma1_residual(g, p, t)
    return residual, residual <= tol
