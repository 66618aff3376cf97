"""Colexicographic indexing of faces (the combinatorial number system).

A face is a strictly increasing tuple of vertex indices. Its rank is its
position among all same-size subsets of {0..n-1} in colexicographic order:

    rank(v_0 < v_1 < ... < v_{k-1}) = sum_i C(v_i, i+1)

which is a bijection onto [0, C(n, k)). Ranks are dense integers, so degree
tables can be flat arrays instead of hash maps. Both scalar and vectorized
(numpy) variants are provided; the vectorized ones are what the sampler and
the boundary detector use on hot paths.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np


@lru_cache(maxsize=None)
def binom_table(n: int, k_max: int) -> np.ndarray:
    """Table of C(v, k) for 0 <= v <= n, 0 <= k <= k_max, as int64.

    Columns are nondecreasing in v, which makes greedy unranking a
    searchsorted per position.
    """
    table = np.zeros((n + 1, k_max + 1), dtype=np.int64)
    for v in range(n + 1):
        for k in range(min(v, k_max) + 1):
            table[v, k] = comb(v, k)
    return table


def rank_face(vertices, n: int) -> int:
    """Colex rank of a strictly increasing vertex tuple among size-k subsets of {0..n-1}."""
    verts = tuple(vertices)
    if not verts:
        raise ValueError("face must have at least one vertex")
    prev = -1
    for v in verts:
        if not isinstance(v, (int, np.integer)):
            raise ValueError(f"vertex {v!r} is not an integer")
        if v <= prev:
            raise ValueError(f"vertices {verts} are not strictly increasing")
        if v < 0 or v >= n:
            raise ValueError(f"vertex {v} out of range [0, {n})")
        prev = v
    return sum(comb(v, i + 1) for i, v in enumerate(verts))


def unrank_face(rank: int, size: int, n: int) -> tuple[int, ...]:
    """Inverse of rank_face: the size-`size` subset of {0..n-1} with the given colex rank."""
    if size < 1 or size > n:
        raise ValueError(f"size {size} out of range [1, {n}]")
    total = comb(n, size)
    if rank < 0 or rank >= total:
        raise ValueError(f"rank {rank} out of range [0, {total})")
    verts = [0] * size
    rem = int(rank)
    for i in range(size - 1, -1, -1):
        k = i + 1
        # largest v with C(v, k) <= rem; v >= k-1 always since C(k-1, k) = 0
        v = k - 1
        hi = n - 1
        while v < hi:
            mid = (v + hi + 1) // 2
            if comb(mid, k) <= rem:
                v = mid
            else:
                hi = mid - 1
        verts[i] = v
        rem -= comb(v, k)
    return tuple(verts)


def rank_many(verts: np.ndarray, n: int) -> np.ndarray:
    """Vectorized rank_face for an (M, k) array of sorted vertex rows."""
    verts = np.asarray(verts, dtype=np.int64)
    if verts.ndim != 2:
        raise ValueError("expected a 2-d array of vertex rows")
    k = verts.shape[1]
    table = binom_table(n, k + 1)
    cols = np.arange(1, k + 1)
    return table[verts, cols].sum(axis=1)


def unrank_many(ranks: np.ndarray, size: int, n: int) -> np.ndarray:
    """Vectorized unrank_face: (M,) ranks -> (M, size) sorted vertex rows."""
    ranks = np.asarray(ranks, dtype=np.int64)
    table = binom_table(n, size + 1)
    rem = ranks.copy()
    out = np.empty((len(ranks), size), dtype=np.int64)
    for i in range(size - 1, -1, -1):
        k = i + 1
        col = table[:, k]
        v = np.searchsorted(col, rem, side="right") - 1
        out[:, i] = v
        rem -= col[v]
    return out


def subface_rank_matrix(verts: np.ndarray, n: int) -> np.ndarray:
    """Ranks of all drop-one-vertex subfaces of each row.

    For an (M, k) array of sorted vertex rows, returns an (M, k) array whose
    column j is the rank of the row with vertex j removed. After dropping
    position j, vertex i > j slides to position i-1, so it contributes
    C(v_i, i) instead of C(v_i, i+1); prefix/suffix cumsums give all k
    subface ranks in O(k) per row.
    """
    verts = np.asarray(verts, dtype=np.int64)
    m, k = verts.shape
    table = binom_table(n, k + 1)
    high = table[verts, np.arange(1, k + 1)]  # C(v_i, i+1)
    low = table[verts, np.arange(0, k)]       # C(v_i, i)
    pref = np.zeros((m, k), dtype=np.int64)
    pref[:, 1:] = np.cumsum(high[:, :-1], axis=1)
    suff = np.zeros((m, k), dtype=np.int64)
    suff[:, :-1] = np.cumsum(low[:, :0:-1], axis=1)[:, ::-1]
    return pref + suff
