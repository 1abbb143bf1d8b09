"""Batched Hermitian eigendecomposition with a deterministic basis.

Each 4x4 mode Hamiltonian has spectrum {+E, +E, -E, -E}. Inside a doubly
degenerate block the eigensolver may return any rotation; we pin it down by
projecting caller-supplied reference vectors onto the block and
orthonormalising them (Loewdin), so the result is the block basis closest to
the references.
"""
from __future__ import annotations

import numpy as np

from .errors import NumericError

DEGENERACY_TOL = 1e-12


def _loewdin(w: np.ndarray) -> np.ndarray:
    """Symmetric orthonormalisation of the columns of a stack of matrices."""
    s = np.conj(np.swapaxes(w, -1, -2)) @ w
    vals, vecs = np.linalg.eigh(s)
    inv_sqrt = (vecs / np.sqrt(vals)[..., None, :]) @ np.conj(np.swapaxes(vecs, -1, -2))
    return w @ inv_sqrt


def eigh_pinned(h: np.ndarray, refs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecompose a stack ``h`` of shape (n, 4, 4).

    ``refs`` has the same shape; columns 0-1 are references for the positive
    block, 2-3 for the negative one. Returns ``(energies, vectors)`` with
    energies ordered (+, +, -, -) and ``vectors[k, :, b]`` the eigenvector for
    ``energies[k, b]``.
    """
    h = np.asarray(h, dtype=complex)
    refs = np.asarray(refs, dtype=complex)
    if not np.all(np.isfinite(h)):
        bad = int(np.argwhere(~np.isfinite(h).all(axis=(-1, -2)))[0, 0])
        raise NumericError(f"non-finite Hamiltonian entries at mode {bad}")
    try:
        lam, vec = np.linalg.eigh(h)
    except np.linalg.LinAlgError:
        for k in range(h.shape[0]):
            try:
                np.linalg.eigh(h[k])
            except np.linalg.LinAlgError as exc:
                raise NumericError(f"eigensolver failed at mode {k}") from exc
        raise

    neg, pos = vec[..., :, 0:2], vec[..., :, 2:4]
    w_pos = pos @ (np.conj(np.swapaxes(pos, -1, -2)) @ refs[..., :, 0:2])
    w_neg = neg @ (np.conj(np.swapaxes(neg, -1, -2)) @ refs[..., :, 2:4])
    vectors = np.concatenate([w_pos, w_neg], axis=-1)
    energies = np.concatenate([lam[..., 2:4], lam[..., 0:2]], axis=-1)

    # Fully degenerate modes (H = 0): the split into blocks is arbitrary, keep the references.
    flat = (lam[..., 2] - lam[..., 1]) <= DEGENERACY_TOL
    if np.any(flat):
        vectors[flat] = refs[flat]
    return energies, _loewdin(vectors)
