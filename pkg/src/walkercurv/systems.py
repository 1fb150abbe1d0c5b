"""PDE systems: finite lists of expressions required to vanish identically."""

from dataclasses import dataclass, field

from .symcore import NormalForm

GENERAL = "general"
RESTRICTED = "restricted"


def canonical_generator(e):
    """Scale so the numerator has coprime integer coefficients and a positive lead."""
    e = NormalForm.lift(e)
    if e.is_zero():
        return e
    scaled, factor = e.num.primitive()
    return NormalForm(scaled, e.den, True)


@dataclass
class PDESystem:
    """Normalized, deduplicated generators with the components they came from."""

    label: str
    context: str
    generators: list = field(default_factory=list)
    origins: list = field(default_factory=list)

    @classmethod
    def build(cls, label, context, named):
        """``named`` is an iterable of (origin, expression) pairs."""
        system = cls(label, context)
        index = {}
        for origin, e in named:
            g = canonical_generator(e)
            if g.is_zero():
                continue
            if g in index:
                system.origins[index[g]].append(origin)
                continue
            index[g] = len(system.generators)
            system.generators.append(g)
            system.origins.append([origin])
        return system

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_empty(self):
        return not self.generators

    def atoms(self):
        out = set()
        for g in self.generators:
            out |= g.atoms()
        return out
