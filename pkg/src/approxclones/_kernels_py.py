"""NumPy implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable or disabled with
``APPROXCLONES_PURE_PYTHON=1``.  Every function here has an identically named
twin in ``_ckernels.pyx`` and both must agree bit for bit.
"""

import numpy as np


def positions(rankings):
    """0-based position of every candidate in every ranking, shape ``(B, m)``."""
    rankings = np.asarray(rankings)
    pos = np.empty_like(rankings)
    rows = np.arange(rankings.shape[0])[:, None]
    pos[rows, rankings] = np.arange(rankings.shape[1])
    return pos


def margins(rankings, weights):
    """Weighted margin matrix ``M[x, y] = n(x>y) - n(y>x)`` as int64."""
    pos = positions(rankings)
    w = np.asarray(weights, dtype=np.int64)
    # sign(pos[y] - pos[x]) is +1 when x is ranked above y
    diff = np.sign(pos[:, None, :] - pos[:, :, None])
    return np.einsum("b,bxy->xy", w, diff.astype(np.int64))


def pair_counts(rankings, weights):
    """Weighted non-adjacency counts and adjacent-swap totals for every ordered pair.

    Returns ``(nonadjacent, swaps)``, both symmetric int64 ``(m, m)`` matrices with
    zero diagonals.
    """
    pos = positions(rankings)
    w = np.asarray(weights, dtype=np.int64)
    gap = np.abs(pos[:, None, :] - pos[:, :, None]).astype(np.int64)
    nonadj = np.einsum("b,bxy->xy", w, (gap > 1).astype(np.int64))
    swaps = np.einsum("b,bxy->xy", w, np.maximum(gap - 1, 0))
    return nonadj, swaps


def first_choice_counts(rankings, weights, alive):
    """Weighted first-choice tallies restricted to candidates where ``alive`` is nonzero."""
    rankings = np.asarray(rankings)
    alive = np.asarray(alive, dtype=bool)
    live = alive[rankings]
    first = rankings[np.arange(rankings.shape[0]), np.argmax(live, axis=1)]
    return np.bincount(first, weights=weights, minlength=alive.shape[0]).astype(np.int64)


def widest_paths(margins):
    """All-pairs widest-path strengths over the complete digraph weighted by ``margins``.

    Paths have at least one edge; the diagonal is left at zero.
    """
    S = np.array(margins, dtype=np.int64, copy=True)
    m = S.shape[0]
    for k in range(m):
        through = np.minimum(S[:, k][:, None], S[k, :][None, :])
        through[k, :] = S[k, :]
        through[:, k] = S[:, k]
        np.maximum(S, through, out=S)
    np.fill_diagonal(S, 0)
    return S


def perfect_clone_flags(batch):
    """For a batch of profiles ``(P, n, m)`` of rankings, flag those with a perfect-clone pair."""
    batch = np.asarray(batch)
    P, n, m = batch.shape
    pos = np.empty_like(batch)
    pi, vi = np.meshgrid(np.arange(P), np.arange(n), indexing="ij")
    pos[pi[..., None], vi[..., None], batch] = np.arange(m, dtype=batch.dtype)
    flags = np.zeros(P, dtype=bool)
    for x in range(m):
        for y in range(x + 1, m):
            gap = np.abs(pos[:, :, x].astype(np.int16) - pos[:, :, y])
            flags |= (gap == 1).all(axis=1)
    return flags
