"""Minimal complex linear algebra for finite-dimensional state spaces.

Only what the probability representation needs: the Hermitian inner
product (linear in the first argument, conjugate-linear in the second),
squared-modulus probabilities, diagonal-operator expectations and basis
expansions.  Pure states are unit vectors; observables are diagonal in
some orthonormal basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-10


class HilbertError(ValueError):
    """Dimension mismatch or a vector/basis violating its normalization."""


def _as_complex(v) -> np.ndarray:
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1:
        raise HilbertError(f"expected a vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise HilbertError("vector entries must be finite")
    return arr


def inner_product(v, w) -> complex:
    """Hermitian inner product ``sum_k v[k] * conj(w[k])``."""
    v = _as_complex(v)
    w = _as_complex(w)
    if v.shape != w.shape:
        raise HilbertError(f"dimension mismatch: {v.size} vs {w.size}")
    return complex(np.sum(v * np.conj(w)))


def norm(v) -> float:
    return float(np.linalg.norm(_as_complex(v)))


def is_unit(v, tol: float = NORM_TOL) -> bool:
    return abs(norm(v) - 1.0) <= tol


@dataclass(frozen=True)
class OrthonormalBasis:
    """``vectors[k]`` is the k-th basis vector; pairwise inner products are checked."""

    vectors: np.ndarray

    def __post_init__(self):
        vectors = np.array(self.vectors, dtype=complex)
        if vectors.ndim != 2 or vectors.shape[0] != vectors.shape[1]:
            raise HilbertError(f"expected n vectors of dimension n, got {vectors.shape}")
        gram = vectors @ vectors.conj().T
        if np.max(np.abs(gram - np.eye(vectors.shape[0]))) > NORM_TOL:
            raise HilbertError("vectors are not orthonormal")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @property
    def dimension(self) -> int:
        return self.vectors.shape[0]

    def __getitem__(self, k: int) -> np.ndarray:
        return self.vectors[k]

    def __len__(self) -> int:
        return self.vectors.shape[0]


def delta_basis(n: int) -> OrthonormalBasis:
    return OrthonormalBasis(np.eye(n, dtype=complex))


@dataclass(frozen=True)
class DiagonalObservable:
    """Observable diagonal in ``basis`` with real eigenvalues."""

    basis: OrthonormalBasis
    eigenvalues: np.ndarray

    def __post_init__(self):
        eig = np.array(self.eigenvalues, dtype=float)
        if eig.shape != (self.basis.dimension,):
            raise HilbertError("need one eigenvalue per basis vector")
        if not np.all(np.isfinite(eig)):
            raise HilbertError("eigenvalues must be finite")
        eig.setflags(write=False)
        object.__setattr__(self, "eigenvalues", eig)

    def matrix(self) -> np.ndarray:
        """Dense matrix ``sum_k lambda_k |e_k><e_k|``."""
        vecs = self.basis.vectors
        return (vecs.T * self.eigenvalues) @ vecs.conj()


def born_probability(state, basis_vector) -> float:
    """Squared modulus ``|<state, basis_vector>|^2`` for unit-norm inputs."""
    if not is_unit(state):
        raise HilbertError(f"state has norm {norm(state):.12g}, expected 1")
    if not is_unit(basis_vector):
        raise HilbertError(f"basis vector has norm {norm(basis_vector):.12g}, expected 1")
    return abs(inner_product(state, basis_vector)) ** 2


def expectation(observable: DiagonalObservable, state) -> float:
    """``sum_k lambda_k |<state, e_k>|^2`` — the diagonal-operator average."""
    return float(
        sum(
            lam * born_probability(state, observable.basis[k])
            for k, lam in enumerate(observable.eigenvalues)
        )
    )


def expand_in_basis(v, basis: OrthonormalBasis) -> np.ndarray:
    """Coefficients ``c_k = <v, e_k>`` so that ``v = sum_k c_k e_k``."""
    v = _as_complex(v)
    if v.size != basis.dimension:
        raise HilbertError(f"dimension mismatch: {v.size} vs {basis.dimension}")
    return basis.vectors.conj() @ v


def reconstruct_from_coefficients(coeffs, basis: OrthonormalBasis) -> np.ndarray:
    return np.asarray(coeffs, dtype=complex) @ basis.vectors


def gram_schmidt(vectors) -> OrthonormalBasis:
    """Orthonormalize n independent vectors, with one re-orthogonalization
    pass to keep roundoff below the basis tolerance."""
    raw = np.array(vectors, dtype=complex)
    n = raw.shape[0]
    out = np.zeros_like(raw)
    for i in range(n):
        v = raw[i]
        for _ in range(2):
            for j in range(i):
                v = v - np.sum(v * np.conj(out[j])) * out[j]
        length = np.linalg.norm(v)
        if length < 1e-12:
            raise HilbertError(f"vector {i} is linearly dependent on its predecessors")
        out[i] = v / length
    return OrthonormalBasis(out)


def random_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_orthonormal_basis(n: int, rng: np.random.Generator) -> OrthonormalBasis:
    raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return gram_schmidt(raw)
