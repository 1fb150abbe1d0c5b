"""Exact curvature and Einstein-like classification of four-dimensional Walker metrics.

The metric is g = 2(dx1 dx3 + dx2 dx4) + a dx3^2 + a dx4^2 for a defining
function a. Everything symbolic runs on a small exact kernel over Q
(``walkercurv.symcore``); geodesics are integrated numerically with RK4.
"""

__version__ = "0.1.0"
