"""d-dimensional complexes over a full (d-1)-skeleton, and their collapses.

Only two layers of faces are materialized: the present d-faces and the degree
structure they induce on (d-1)-faces. A (d-1)-face is *isolated* when no
present d-face contains it, *free* when exactly one does; an elementary
collapse removes a free (d-1)-face together with its unique d-face. The
d-core (the fixed point of repeated collapsing) is order-independent, which
several tests exploit.

Faces are addressed by colex rank (see ``faces``); the degree index is a flat
list over all C(n, d) ranks of (d-1)-faces.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional

import numpy as np

from .faces import binom_table, rank_face, subface_rank_matrix, unrank_face, unrank_many
from .unionfind import UnionFind


class NotFreeError(ValueError):
    """Collapse requested on a face of degree != 1 (caller bug)."""


@dataclass(frozen=True)
class CollapseResult:
    """Outcome of one elementary collapse.

    ``affected`` are the d other (d-1)-subfaces of the removed d-face;
    ``newly_free`` are those whose degree dropped 2 -> 1 and ``newly_isolated``
    those that dropped 1 -> 0 (previously free faces destroyed by isolation).
    """

    tau: int
    sigma: int
    affected: tuple[int, ...]
    newly_free: tuple[int, ...]
    newly_isolated: tuple[int, ...]


class Complex:
    """An n-vertex d-complex stored as d-face ranks plus a (d-1)-degree index."""

    def __init__(self, n: int, d: int, d_faces: Iterable[int] = ()):
        if d < 1:
            raise ValueError(f"dimension d must be >= 1, got {d}")
        if n <= d:
            raise ValueError(f"need n > d, got n={n}, d={d}")
        self.n = n
        self.d = d
        self.num_dm1_faces = comb(n, d)
        self.num_candidate_d_faces = comb(n, d + 1)
        self.d_faces: set[int] = set()
        # containing[tau] lists the present d-faces that contain tau; its
        # length is the degree of tau.
        self.containing: list[list[int]] = [[] for _ in range(self.num_dm1_faces)]
        self.subfaces: dict[int, tuple[int, ...]] = {}
        self._free: set[int] = set()
        self._num_positive = 0
        ranks = np.fromiter((int(s) for s in d_faces), dtype=np.int64)
        if len(ranks):
            self._insert_batch(np.unique(ranks))

    def _insert_batch(self, ranks: np.ndarray) -> None:
        if ranks.min(initial=0) < 0 or ranks.max(initial=0) >= self.num_candidate_d_faces:
            raise ValueError("d-face rank out of range")
        verts = unrank_many(ranks, self.d + 1, self.n)
        subs = subface_rank_matrix(verts, self.n)
        for sigma, row in zip(ranks.tolist(), subs.tolist()):
            self.subfaces[sigma] = tuple(row)
            self.d_faces.add(sigma)
            for tau in row:
                lst = self.containing[tau]
                lst.append(sigma)
                if len(lst) == 1:
                    self._num_positive += 1
                    self._free.add(tau)
                elif len(lst) == 2:
                    self._free.discard(tau)

    def copy(self) -> "Complex":
        cp = Complex.__new__(Complex)
        cp.n, cp.d = self.n, self.d
        cp.num_dm1_faces = self.num_dm1_faces
        cp.num_candidate_d_faces = self.num_candidate_d_faces
        cp.d_faces = set(self.d_faces)
        cp.containing = [list(lst) for lst in self.containing]
        cp.subfaces = dict(self.subfaces)
        cp._free = set(self._free)
        cp._num_positive = self._num_positive
        return cp

    # -- queries ------------------------------------------------------------

    def degree(self, tau: int) -> int:
        """Number of present d-faces containing the (d-1)-face; 0 means isolated."""
        if tau < 0 or tau >= self.num_dm1_faces:
            raise ValueError(f"(d-1)-face rank {tau} out of range [0, {self.num_dm1_faces})")
        return len(self.containing[tau])

    def free_faces(self) -> set[int]:
        """Ranks of all (d-1)-faces of degree exactly 1."""
        return set(self._free)

    @property
    def num_positive_degree(self) -> int:
        """Number of (d-1)-faces of positive degree (the B_j statistic)."""
        return self._num_positive

    def num_d_faces(self) -> int:
        return len(self.d_faces)

    def face_vertices(self, rank: int, size: Optional[int] = None) -> tuple[int, ...]:
        return unrank_face(rank, self.d + 1 if size is None else size, self.n)

    # -- mutation -----------------------------------------------------------

    def elementary_collapse(self, tau: int) -> CollapseResult:
        """Remove the free face tau together with its unique d-face."""
        if self.degree(tau) != 1:
            raise NotFreeError(
                f"face {tau} has degree {self.degree(tau)}, collapse needs degree 1"
            )
        sigma = self.containing[tau][0]
        self.d_faces.remove(sigma)
        affected = []
        newly_free = []
        newly_isolated = []
        for t in self.subfaces.pop(sigma):
            lst = self.containing[t]
            lst.remove(sigma)
            if t == tau:
                self._free.discard(t)
                self._num_positive -= 1
                continue
            affected.append(t)
            deg = len(lst)
            if deg == 1:
                newly_free.append(t)
                self._free.add(t)
            elif deg == 0:
                newly_isolated.append(t)
                self._free.discard(t)
                self._num_positive -= 1
        return CollapseResult(tau, sigma, tuple(affected), tuple(newly_free), tuple(newly_isolated))

    # -- core and collapsibility ---------------------------------------------

    def d_core(self, seed: Optional[int] = None) -> "Complex":
        """Collapse until no free face remains; returns a new Complex.

        The core is the unique maximal sub-collection with no free face, so it
        does not depend on the worklist order; ``seed=None`` processes faces
        FIFO, an integer seed draws the next face uniformly from the worklist.
        """
        cp = self.copy()
        if seed is None:
            work = deque(sorted(cp._free))
            while work:
                tau = work.popleft()
                if len(cp.containing[tau]) != 1:
                    continue
                work.extend(cp.elementary_collapse(tau).newly_free)
        else:
            rng = random.Random(seed)
            work = list(cp._free)
            while work:
                idx = rng.randrange(len(work))
                work[idx], work[-1] = work[-1], work[idx]
                tau = work.pop()
                if len(cp.containing[tau]) != 1:
                    continue
                work.extend(cp.elementary_collapse(tau).newly_free)
        return cp

    def is_collapsible(self, seed: Optional[int] = None) -> bool:
        """True iff every d-face can be eliminated by elementary collapses."""
        return len(self.d_core(seed).d_faces) == 0

    def contains_simplex_boundary(self) -> Optional[tuple[int, ...]]:
        """Some (d+2)-vertex set whose d+2 faces of size d+1 are all present, or None.

        Such a set is the boundary of a (d+1)-simplex, the minimal
        non-collapsible structure. Scans present d-faces sigma against
        extension vertices v > max(sigma); each boundary is found through its
        colex-least d-face.
        """
        m = len(self.d_faces)
        if m < self.d + 2:
            return None
        present = np.zeros(self.num_candidate_d_faces, dtype=bool)
        ranks = np.fromiter(self.d_faces, dtype=np.int64, count=m)
        present[ranks] = True
        verts = unrank_many(ranks, self.d + 1, self.n)
        # partial[i, j]: rank contribution of row i with vertex j dropped and
        # all later vertices shifted down one slot; adding C(v, d+1) completes
        # the rank of (row minus vertex j) plus a new top vertex v.
        partial = subface_rank_matrix(verts, self.n)
        maxv = verts[:, -1]
        table = binom_table(self.n, self.d + 2)
        for v in range(self.d + 1, self.n):
            cand = np.nonzero(maxv < v)[0]
            if len(cand) == 0:
                continue
            ranks_v = partial[cand] + table[v, self.d + 1]
            ok = present[ranks_v].all(axis=1)
            hits = np.nonzero(ok)[0]
            if len(hits):
                base = verts[cand[hits[0]]]
                return tuple(int(u) for u in base) + (v,)
        return None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Complex)
            and self.n == other.n
            and self.d == other.d
            and self.d_faces == other.d_faces
        )

    def __repr__(self) -> str:
        return f"Complex(n={self.n}, d={self.d}, d_faces={len(self.d_faces)})"


def complex_from_vertex_faces(n: int, d: int, faces: Iterable[Iterable[int]]) -> Complex:
    """Build a Complex from explicit vertex tuples (convenience for tests and I/O)."""
    ranks = [rank_face(tuple(f), n) for f in faces]
    return Complex(n, d, ranks)


def degree_sum(cx: Complex) -> int:
    """Sum of all (d-1)-face degrees; equals (d+1) * |d_faces| at all times."""
    return sum(len(lst) for lst in cx.containing)


def is_forest(cx: Complex) -> bool:
    """For d=1: True iff the edge set is acyclic (disjoint-set oracle, no collapsing)."""
    if cx.d != 1:
        raise ValueError(f"is_forest needs a 1-dimensional complex, got d={cx.d}")
    uf = UnionFind(cx.n)
    for rank in cx.d_faces:
        u, v = unrank_face(rank, 2, cx.n)
        if not uf.union(u, v):
            return False
    return True
