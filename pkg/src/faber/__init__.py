"""Tensorized higher-order Faber spline bases and adaptive sampling recovery.

Subpackage map:

- :mod:`faber.ppoly` -- exact piecewise-polynomial algebra, B-splines,
  spline wavelets, lifted kernels, dual/cardinal coefficient solves
- :mod:`faber.basis` -- univariate and tensor-product basis evaluation
- :mod:`faber.analysis` -- dyadic sampling, mixed differences, coefficient
  tensors, synthesis and cardinal interpolation operators
- :mod:`faber.seqnorm` -- discrete Besov/Lizorkin-Triebel sequence norms
- :mod:`faber.approx` -- hyperbolic projections, greedy n-term selection,
  brute-force optimum, reconstruction error and rate fitting
- :mod:`faber.testfns` / :mod:`faber.experiments` / :mod:`faber.cli` --
  test-function library, experiment pipeline, command-line front end
"""

from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
