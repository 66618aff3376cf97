"""Closed-form and numerically solved quantities for the collapsing process.

Central objects, all per density c and dimension d:

* the isolation recursion gamma_0 = 0, gamma_{t+1} = exp(-c (1 - gamma_t)^d),
  with beta_t = 1 - gamma_{t+1}.  The printed source formula reads
  exp(-c (1 - gamma_t^d)); we implement exp(-c (1 - gamma_t)^d), the only
  parenthesization under which the limit of beta_t is a root of f_c and the
  root-degree law comes out Poisson((beta_{r-1})^d c).
* f_c(t) = 1 - exp(-c t^d) - t and g(t) = -ln(1-t)/t^d.  For c above the
  threshold, f_c has two roots 0 < b(c) < B(c) < 1 and B(c) = lim beta_t(c).
* the threshold c_d itself, located through the double root: t_star solves
  -d (1-t) ln(1-t) = t and c_d = g(t_star).
* expected time-zero statistics (fractions of C(n, d)) and the drift walk
  Z_i = Z_{i-1} - 1 + Y'_i with its McDiarmid tail bound.

Everything is double precision; root finding is plain bisection after a sign
scan, which is robust for these smooth one-humped functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb, exp, log1p
from typing import Optional

DEFAULT_K_MAX = 20
_BISECT_WIDTH = 1e-15
_ROOT_GRID = 10_000


class SubcriticalError(ValueError):
    """A quantity defined only above the threshold was requested below it."""


# -- recursions ---------------------------------------------------------------

def gamma_beta_seq(c: float, d: int, r: int) -> tuple[list[float], list[float]]:
    """The sequences gamma_0..gamma_{r+1} and beta_0..beta_r (beta_t = 1 - gamma_{t+1})."""
    if c < 0:
        raise ValueError(f"c must be >= 0, got {c}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    gamma = [0.0]
    for _ in range(r + 1):
        gamma.append(exp(-c * (1.0 - gamma[-1]) ** d))
    beta = [1.0 - gamma[t + 1] for t in range(r + 1)]
    return gamma, beta


# -- the analytic apparatus around the threshold -------------------------------

def f_eval(c: float, d: int, t: float) -> float:
    """f_c(t) = 1 - exp(-c t^d) - t."""
    return 1.0 - exp(-c * t**d) - t


def g_eval(d: int, t: float) -> float:
    """g(t) = -ln(1-t) / t^d, the density at which t is a root of f_c."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"g is defined on (0, 1), got t={t}")
    return -log1p(-t) / t**d


def _bisect(func, lo: float, hi: float) -> float:
    flo = func(lo)
    if flo == 0.0:
        return lo
    neg = flo < 0.0
    while hi - lo > _BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if (func(mid) < 0.0) == neg:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def roots_bB(c: float, d: int) -> Optional[tuple[float, float]]:
    """The two roots 0 < b < B < 1 of f_c, or None when c is subcritical.

    Sign scan on a uniform grid locates the brackets; bisection refines each
    to |f| < 1e-12. B(c) is the limit of the beta_t recursion.
    """
    if c <= 0:
        raise ValueError(f"c must be > 0, got {c}")
    if d < 2:
        raise ValueError(f"roots_bB needs d >= 2, got {d}")
    f = lambda t: f_eval(c, d, t)
    brackets = []
    prev_t = 1.0 / _ROOT_GRID
    prev_f = f(prev_t)
    for i in range(2, _ROOT_GRID):
        t = i / _ROOT_GRID
        ft = f(t)
        if (prev_f < 0.0) != (ft < 0.0) or ft == 0.0:
            brackets.append((prev_t, t))
        prev_t, prev_f = t, ft
    if not brackets:
        return None
    if len(brackets) != 2:
        raise RuntimeError(f"expected 0 or 2 sign changes of f_c, found {len(brackets)}")
    b = _bisect(f, *brackets[0])
    B = _bisect(f, *brackets[1])
    return b, B


@dataclass(frozen=True)
class ThresholdData:
    """The critical density for one dimension and its double-root location."""

    d: int
    c_d: float
    t_star: float

    def to_dict(self) -> dict:
        return {"d": self.d, "c_d": self.c_d, "t_star": self.t_star}


def c_threshold(d: int, tol: float = 1e-12) -> ThresholdData:
    """The threshold c_d, via the double root of f_c.

    At c = c_d the two roots of f_c merge at t_star, where both f = 0 and
    f' = 0 hold; eliminating c reduces the pair to -d (1-t) ln(1-t) = t,
    solved by bisection, after which c_d = g(t_star). The defining identities
    f_{c_d}(t_star) = 0 and d t_star^{d-1} c_d (1 - t_star) = 1 then hold to
    roundoff. d = 1 degenerates (t_star -> 0) and is returned as the analytic
    limit c_1 = 1, matching the forest threshold for graphs.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if d == 1:
        return ThresholdData(d=1, c_d=1.0, t_star=0.0)
    q = lambda t: -d * (1.0 - t) * log1p(-t) - t
    lo, hi = 1e-9, 1.0 - 1e-12
    if not (q(lo) > 0.0 > q(hi)):
        raise RuntimeError("sign scan failed for the reduced threshold equation")
    t_star = _bisect(q, lo, hi)
    return ThresholdData(d=d, c_d=g_eval(d, t_star), t_star=t_star)


def h_eval(c: float, d: int) -> float:
    """The limiting per-step branching factor h(c) = d B(c)^{d-1} c (1 - B(c)).

    h(c_d) = 1 and h decreases just above the threshold, which is what makes
    the free-face supply die out: the drift quantity d*x converges to h(c).
    """
    roots = roots_bB(c, d)
    if roots is None:
        raise SubcriticalError(f"h(c) needs c > c_d, got c={c} for d={d}")
    _, B = roots
    return d * B ** (d - 1) * c * (1.0 - B)


def hdot_eval(B: float) -> float:
    """Derivative of h along B, up to the constant positive factor d.

    Equals ln(1-B)/B^2 + 1/B, negative on all of (0, 1) since -ln(1-u) > u.
    The full derivative is d times this value; the sign, which is all the
    drift argument needs, is unaffected.
    """
    if not 0.0 < B < 1.0:
        raise ValueError(f"B must lie in (0, 1), got {B}")
    return log1p(-B) / (B * B) + 1.0 / B


# -- expected time-zero statistics ---------------------------------------------

@dataclass(frozen=True)
class TheoryProfile:
    """All recursion-derived quantities for one (c, d, r), as fractions of C(n, d).

    ``exp_Dk_frac[k]`` is the Poisson((beta_{r-1})^d c) mass at k: the
    degree law of a face in the collapse-forbidden local process. In the
    actual process every face that frees before the last phase is consumed,
    so the observable histogram matches exp_Dk_frac only for k >= 2, while
    the observable degree-1 fraction is exp_X0_frac and the degree-0
    fraction is 1 - exp_L_frac. The three are mutually consistent:
    exp_L_frac = exp_X0_frac + sum_{k>=2} exp_Dk_frac[k] exactly.
    """

    c: float
    d: int
    r: int
    gamma: list[float] = field(repr=False)
    beta: list[float] = field(repr=False)
    x: float
    exp_L_frac: float
    exp_X0_frac: float
    exp_Dk_frac: list[float] = field(repr=False)
    exp_Y_bound: float

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "d": self.d,
            "r": self.r,
            "gamma": self.gamma,
            "beta": self.beta,
            "x": self.x,
            "exp_L_frac": self.exp_L_frac,
            "exp_X0_frac": self.exp_X0_frac,
            "exp_Dk_frac": self.exp_Dk_frac,
            "exp_Y_bound": self.exp_Y_bound,
        }


def expectations(c: float, d: int, r: int, k_max: int = DEFAULT_K_MAX) -> TheoryProfile:
    """Expected fractions of C(n, d) at time zero of the second epoch.

    exp_X0_frac = (beta_{r-1})^d c (gamma_{r+1} - gamma_r)
    exp_L_frac  = 1 - (gamma_{r+1} + c gamma_r (beta_{r-1})^d)
    exp_Dk_frac = Poisson((beta_{r-1})^d c) pmf (k = 0..k_max)
    x           = (beta_{r-1})^{d-1} c gamma_{r+1},  exp_Y_bound = d*x
    """
    if r < 2:
        raise ValueError(f"expectations needs r >= 2, got {r}")
    gamma, beta = gamma_beta_seq(c, d, r)
    beta_rm1 = beta[r - 1]
    lam = beta_rm1**d * c
    x = beta_rm1 ** (d - 1) * c * gamma[r + 1]
    dk = [math.exp(-lam) * lam**k / math.factorial(k) for k in range(k_max + 1)]
    return TheoryProfile(
        c=c,
        d=d,
        r=r,
        gamma=gamma,
        beta=beta,
        x=x,
        exp_L_frac=1.0 - (gamma[r + 1] + c * gamma[r] * beta_rm1**d),
        exp_X0_frac=lam * (gamma[r + 1] - gamma[r]),
        exp_Dk_frac=dk,
        exp_Y_bound=d * x,
    )


def choose_r(c: float, d: int, delta: float, r_max: int = 10_000) -> int:
    """Smallest r >= 2 with exp_X0_frac <= delta and drift d*x < 1.

    Exists for every c > c_d because d*x converges to h(c) < 1 and
    exp_X0_frac -> 0; below the threshold the drift condition is
    unattainable and we raise.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if c <= c_threshold(d).c_d:
        raise SubcriticalError("drift condition unattainable: c <= c_d")
    for r in range(2, r_max + 1):
        prof = expectations(c, d, r, k_max=0)
        if prof.exp_X0_frac <= delta and prof.exp_Y_bound < 1.0:
            return r
    raise RuntimeError(f"no admissible r below {r_max}")


# -- drift walk and tail bound ---------------------------------------------------

def mcdiarmid_tail(l: float, bounds) -> float:
    """Bounded-differences tail 2 exp(-2 l^2 / sum_k eps_k^2), clamped to <= 1."""
    bounds = list(bounds)
    if not bounds:
        raise ValueError("need at least one coordinate bound")
    if l <= 0:
        raise ValueError(f"deviation l must be > 0, got {l}")
    if any(b <= 0 for b in bounds):
        raise ValueError("all coordinate bounds must be > 0")
    s = sum(b * b for b in bounds)
    return min(1.0, 2.0 * exp(-2.0 * l * l / s))


@dataclass(frozen=True)
class DriftEstimate:
    """The idealized walk E[Z_i] = E[X_0] - i (1 - d*x) and where it is surely negative."""

    c: float
    d: int
    r: int
    n: int
    delta: float          # exp_X0_frac
    epsilon: float        # 1 - d*x
    z0: float             # E[X_0] = delta * C(n, d)
    slope: float          # -(1 - d*x), per collapsing step
    i_stop: int           # ceil(2 delta / epsilon * C(n, d))
    tail_bound: float     # McDiarmid bound at deviation delta * C(n, d), i_stop steps

    def expected_z(self, i: float) -> float:
        return self.z0 + self.slope * i

    def to_dict(self) -> dict:
        return {
            "c": self.c, "d": self.d, "r": self.r, "n": self.n,
            "delta": self.delta, "epsilon": self.epsilon, "z0": self.z0,
            "slope": self.slope, "i_stop": self.i_stop, "tail_bound": self.tail_bound,
        }


def drift_estimate(c: float, d: int, r: int, n: int) -> DriftEstimate:
    """Drift line, stopping index and tail bound for the walk Z_i at size n."""
    prof = expectations(c, d, r, k_max=0)
    dx = prof.exp_Y_bound
    if dx >= 1.0:
        raise SubcriticalError(f"drift condition d*x < 1 fails: d*x = {dx}")
    cnd = comb(n, d)
    delta = prof.exp_X0_frac
    epsilon = 1.0 - dx
    i_stop = math.ceil(2.0 * delta / epsilon * cnd)
    tail = mcdiarmid_tail(delta * cnd, [float(d)] * i_stop) if delta > 0 else 1.0
    return DriftEstimate(
        c=c, d=d, r=r, n=n,
        delta=delta, epsilon=epsilon,
        z0=delta * cnd, slope=-epsilon,
        i_stop=i_stop, tail_bound=tail,
    )


def threshold_grid(d: int, c_values) -> list[dict]:
    """Rows (c, d, b, B, h) for plotting; b/B/h are None below the threshold."""
    rows = []
    for c in c_values:
        roots = roots_bB(c, d)
        if roots is None:
            rows.append({"c": c, "d": d, "b": None, "B": None, "h": None})
        else:
            b, B = roots
            rows.append({"c": c, "d": d, "b": b, "B": B, "h": d * B ** (d - 1) * c * (1 - B)})
    return rows
