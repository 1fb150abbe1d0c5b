"""One-shot computation of every tensor for a given defining function."""

from dataclasses import dataclass
from functools import cached_property

from .curvature import nabla_ricci, ricci, riemann
from .exprparse import parse_normal
from .symcore import NormalForm
from .walker import christoffel, generic_a, metric


@dataclass
class Analysis:
    a: NormalForm

    @cached_property
    def metric(self):
        return metric(self.a)

    @cached_property
    def connection(self):
        return christoffel(self.metric)

    @cached_property
    def riemann(self):
        return riemann(self.metric, self.connection)

    @cached_property
    def ricci(self):
        return ricci(self.riemann, self.metric)

    @cached_property
    def nabla_ricci(self):
        return nabla_ricci(self.ricci.rho, self.connection)


def restricted_a():
    """a = x1 b(x3,x4) + x2 c(x3,x4) + d(x3,x4) with b, c, d arbitrary."""
    return parse_normal("x1*b + x2*c + d")


def general_analysis():
    return Analysis(generic_a())


def restricted_analysis():
    return Analysis(restricted_a())
