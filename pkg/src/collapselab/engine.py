"""The two-epoch collapsing process, with exact per-step accounting.

Epoch 1 runs r *phases*; a phase snapshots the currently free (d-1)-faces and
collapses each of them in ascending rank, skipping any face whose unique
d-face was already removed within the phase (every snapshot face ends the
phase at degree zero, collapsed or isolated).

Epoch 2 repeats *mark rounds* until no free face remains. Since a free face
lies in exactly one d-face, the neighbor graph on free faces is a disjoint
union of cliques (one per d-face); a round permutes the free faces uniformly
and greedily marks the first face of each clique, then collapses the marked
faces in that same order. Marked faces provably stay free until their turn
(non-neighbors cannot destroy each other's d-face), so the defensive skip
branch is counted and expected to stay at zero.

Step i of epoch 2 satisfies the exact identity

    X_i = X_{i-1} - 1 + Y_i - W_i

where X is the free count, Y counts affected faces dropping to degree 1 and W
counts previously free faces isolated by the step. The W term corrects the
idealized bookkeeping X_i = X_{i-1} - 1 + Y_i, which is only asymptotic: an
unmarked free neighbor of the collapsed face dies with it, as in a single
triangle. Y_i is recorded for all 0 <= j <= d in the S histogram (the
narrower display range 1 <= j <= d-1 in the source analysis is not imposed).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .complexes import Complex

K_MAX = 20


@dataclass(frozen=True)
class TimeZeroStats:
    """Degree census of the (d-1)-faces: L = #positive, X0 = #free, D[k] = #degree-k.

    D is indexed 1..k_max (D[0] is kept at zero: degree-0 faces are the
    complement, C(n, d) - L); degrees above k_max land in d_overflow.
    """

    L: int
    X0: int
    D: list[int]
    d_overflow: int
    k_max: int = K_MAX


def time_zero_stats(cx: Complex, k_max: int = K_MAX) -> TimeZeroStats:
    degs = np.fromiter((len(lst) for lst in cx.containing), dtype=np.int64,
                       count=cx.num_dm1_faces)
    hist = np.bincount(degs, minlength=k_max + 1)
    D = [0] + hist[1 : k_max + 1].tolist()
    overflow = int((degs > k_max).sum())
    return TimeZeroStats(
        L=int((degs > 0).sum()),
        X0=int((degs == 1).sum()),
        D=D,
        d_overflow=overflow,
        k_max=k_max,
    )


def degree_excluding(cx: Complex, tau: int, sigma: int) -> int:
    """Degree of tau not counting sigma: degree - 1 if tau is a subface of sigma."""
    if sigma not in cx.d_faces:
        raise ValueError(f"d-face {sigma} is not present")
    deg = cx.degree(tau)
    return deg - 1 if tau in cx.subfaces[sigma] else deg


@dataclass(frozen=True)
class Epoch1Trace:
    r: int
    collapses_per_phase: list[int]
    B: list[int]                  # faces of positive degree after each phase
    L: int
    X0: int
    D: list[int]                  # degree histogram at time zero, k = 1..k_max
    d_overflow: int
    k_max: int = K_MAX


def run_epoch1(cx: Complex, r: int) -> Epoch1Trace:
    """Run r simultaneous-collapse phases, mutating cx; r = 0 records stats only."""
    if r < 0:
        raise ValueError(f"phase count r must be >= 0, got {r}")
    collapses = []
    B = []
    for _ in range(r):
        snapshot = sorted(cx.free_faces())
        done = 0
        for tau in snapshot:
            deg = cx.degree(tau)
            if deg == 1:
                cx.elementary_collapse(tau)
                done += 1
            elif deg != 0:  # degrees only drop within a phase
                raise RuntimeError(f"snapshot face {tau} has degree {deg} > 1")
        collapses.append(done)
        B.append(cx.num_positive_degree)
    stats = time_zero_stats(cx)
    return Epoch1Trace(
        r=r,
        collapses_per_phase=collapses,
        B=B,
        L=stats.L,
        X0=stats.X0,
        D=stats.D,
        d_overflow=stats.d_overflow,
        k_max=stats.k_max,
    )


def mark_round(cx: Complex, rng: np.random.Generator) -> list[int]:
    """A maximal independent set of free faces, in a uniformly random order.

    Greedy over a uniform permutation of the free faces: take a face unless a
    neighbor (a free face of the same d-face) was already taken. The induced
    order of the marked faces is itself a uniform permutation.
    """
    free_list = sorted(cx.free_faces())
    if not free_list:
        return []
    taken: set[int] = set()
    marked = []
    for idx in rng.permutation(len(free_list)):
        tau = free_list[idx]
        sigma = cx.containing[tau][0]
        if sigma not in taken:
            taken.add(sigma)
            marked.append(tau)
    return marked


@dataclass(frozen=True)
class Epoch2Step:
    i: int
    mark: int
    tau: int
    sigma: int
    Y: int
    W: int
    X: int


@dataclass(frozen=True)
class Epoch2Trace:
    steps: list[Epoch2Step]
    S: list[int]                  # S[j] = number of steps with Y = j, j = 0..d
    core_faces: int
    collapsible: bool
    max_mark: int
    skipped_marked: int           # defensive skips; provably 0
    q_fresh_steps: Optional[int] = None  # steps whose affected faces were all fresh


def run_epoch2(
    cx: Complex,
    rng: np.random.Generator,
    q_diagnostics: bool = False,
) -> Epoch2Trace:
    """Mark rounds until no free face remains, mutating cx down to its d-core."""
    d = cx.d
    X = len(cx.free_faces())
    steps: list[Epoch2Step] = []
    S = [0] * (d + 1)
    skipped = 0
    mark = 0
    i = 0
    affected_seen: set[int] = set()
    q_fresh = 0
    while cx.free_faces():
        mark += 1
        for tau in mark_round(cx, rng):
            if cx.degree(tau) != 1:
                skipped += 1
                continue
            res = cx.elementary_collapse(tau)
            i += 1
            Y = len(res.newly_free)
            W = len(res.newly_isolated)
            X = X - 1 + Y - W
            if X != len(cx._free):
                raise RuntimeError(
                    f"accounting violated at step {i}: X={X} vs {len(cx._free)} free faces"
                )
            S[Y] += 1
            steps.append(Epoch2Step(i=i, mark=mark, tau=tau, sigma=res.sigma, Y=Y, W=W, X=X))
            if q_diagnostics:
                if all(t not in affected_seen for t in res.affected):
                    q_fresh += 1
                affected_seen.update(res.affected)
    return Epoch2Trace(
        steps=steps,
        S=S,
        core_faces=len(cx.d_faces),
        collapsible=len(cx.d_faces) == 0,
        max_mark=mark if steps else 0,
        skipped_marked=skipped,
        q_fresh_steps=q_fresh if q_diagnostics else None,
    )


# -- trace serialization -------------------------------------------------------

def trace_to_dict(params: dict, e1: Epoch1Trace, e2: Epoch2Trace) -> dict:
    """The JSON trace layout: {params, epoch1: {B, L, X0, D}, epoch2: {steps, S, ...}}."""
    return {
        "params": params,
        "epoch1": {
            "r": e1.r,
            "collapses_per_phase": e1.collapses_per_phase,
            "B": e1.B,
            "L": e1.L,
            "X0": e1.X0,
            "D": e1.D,
            "D_overflow": e1.d_overflow,
        },
        "epoch2": {
            "steps": [
                {"i": s.i, "mark": s.mark, "tau": s.tau, "sigma": s.sigma,
                 "Y": s.Y, "W": s.W, "X": s.X}
                for s in e2.steps
            ],
            "S": e2.S,
            "core_faces": e2.core_faces,
            "collapsible": e2.collapsible,
            "max_mark": e2.max_mark,
            "skipped_marked": e2.skipped_marked,
            "q_fresh_steps": e2.q_fresh_steps,
        },
    }


def trace_to_json(params: dict, e1: Epoch1Trace, e2: Epoch2Trace, indent: int = 2) -> str:
    return json.dumps(trace_to_dict(params, e1, e2), indent=indent)


def steps_to_csv(e2: Epoch2Trace) -> str:
    """Compact per-step CSV: one row (i, mark, Y, W, X) per collapsing step."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["i", "mark", "Y", "W", "X"])
    for s in e2.steps:
        writer.writerow([s.i, s.mark, s.Y, s.W, s.X])
    return buf.getvalue()
