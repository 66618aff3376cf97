"""Random d-dimensional simplicial complexes, their collapsing process, and the
numerical threshold machinery that predicts when collapsing gets stuck.

The package has three legs:

* exact combinatorics: dense colexicographic face indexing, elementary
  collapses, d-cores and collapsibility (``faces``, ``complexes``);
* stochastic processes: the X_d(n,p) sampler, the two-epoch collapsing engine
  with full per-step accounting, and the rooted Poisson d-tree local model
  (``sampler``, ``engine``, ``dtree``);
* closed-form/numerical theory: the gamma/beta recursions, the roots of
  f_c(t) = 1 - exp(-c t^d) - t, the critical density c_d, expected time-zero
  statistics and the drift walk (``theory``).

``experiments`` ties the legs together into reproducible Monte Carlo sweeps,
``plots`` renders report figures, and ``cli`` exposes everything as
subcommands of the ``collapselab`` executable.
"""

__version__ = "0.1.0"

from .complexes import Complex, CollapseResult, NotFreeError, is_forest
from .faces import rank_face, unrank_face
from .sampler import ModelParams, sample_complex
from .theory import (
    SubcriticalError,
    TheoryProfile,
    ThresholdData,
    c_threshold,
    choose_r,
    expectations,
    gamma_beta_seq,
    roots_bB,
)

__all__ = [
    "Complex",
    "CollapseResult",
    "NotFreeError",
    "ModelParams",
    "SubcriticalError",
    "TheoryProfile",
    "ThresholdData",
    "c_threshold",
    "choose_r",
    "expectations",
    "gamma_beta_seq",
    "is_forest",
    "rank_face",
    "roots_bB",
    "sample_complex",
    "unrank_face",
    "__version__",
]
