"""Exterior-algebra presentations, monomial bases and Betti tables.

Everything here is a finite graded object: an algebra is given by labelled
generators e_j in odd-ish degrees (squarefree monomials in the generators
form a vector-space basis), and a graded vector space is just a map
degree -> rank.  The optional ``module_basis`` on a presentation records the
rank-2 free-module situation where the basis is (monomials) union
(monomials * e_m); no multiplication rule for the extra element is assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DomainError

__all__ = [
    "GeneratorLabel",
    "GradedAlgebraPresentation",
    "GradedVectorSpace",
    "Monomial",
    "betti_table",
    "exterior",
    "monomial_basis",
    "poincare_complement",
    "poincare_polynomial",
    "shift",
    "truncate_top",
]


@dataclass(frozen=True)
class GeneratorLabel:
    """A named generator with a positive degree, e.g. ("e5", 5)."""

    name: str
    degree: int

    def __post_init__(self):
        if not self.name:
            raise DomainError("generator name must be nonempty")
        if self.degree < 1:
            raise DomainError(f"generator degree must be >= 1, got {self.degree}")


def e(degree: int) -> GeneratorLabel:
    """The standard label e<degree>."""
    return GeneratorLabel(f"e{degree}", degree)


@dataclass(frozen=True)
class GradedAlgebraPresentation:
    """Exterior algebra on ordered generators, optionally a rank-2 module.

    Generators must come in strictly increasing degree with unique names.
    With ``module_basis`` present the monomial basis doubles: each squarefree
    monomial also appears multiplied by the module element.
    """

    generators: tuple[GeneratorLabel, ...]
    module_basis: GeneratorLabel | None = None

    def __post_init__(self):
        degs = [g.degree for g in self.generators]
        if any(b <= a for a, b in zip(degs, degs[1:])):
            raise DomainError(f"generator degrees must strictly increase: {degs}")
        names = [g.name for g in self.generators]
        if self.module_basis is not None:
            names.append(self.module_basis.name)
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate generator names: {names}")

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def top_degree(self) -> int:
        top = sum(g.degree for g in self.generators)
        if self.module_basis is not None:
            top += self.module_basis.degree
        return top

    def degree_of(self, name: str) -> int:
        for g in self.generators:
            if g.name == name:
                return g.degree
        if self.module_basis is not None and self.module_basis.name == name:
            return self.module_basis.degree
        raise DomainError(f"unknown generator {name!r}")


def exterior(*degrees: int) -> GradedAlgebraPresentation:
    """Shorthand: exterior(3, 5) is the algebra on e3, e5."""
    return GradedAlgebraPresentation(tuple(e(d) for d in degrees))


@dataclass(frozen=True)
class Monomial:
    """Squarefree monomial in the generators; ``module`` marks the extra factor."""

    names: tuple[str, ...]
    degree: int
    module: bool = False

    @property
    def label(self) -> str:
        parts = list(self.names)
        if not parts and not self.module:
            return "1"
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class GradedVectorSpace:
    """Betti table: finitely many degrees with positive ranks."""

    _items: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        for d, r in self._items:
            if d < 0:
                raise DomainError(f"negative degree {d} in graded vector space")
            if r < 1:
                raise DomainError(f"rank must be >= 1, got {r} in degree {d}")
        degs = [d for d, _ in self._items]
        if degs != sorted(set(degs)):
            raise DomainError("degrees must be sorted and unique")

    @staticmethod
    def from_dict(ranks: dict[int, int]) -> "GradedVectorSpace":
        return GradedVectorSpace(tuple(sorted((d, r) for d, r in ranks.items() if r)))

    @property
    def ranks(self) -> dict[int, int]:
        return dict(self._items)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self._items)

    def rank(self, degree: int) -> int:
        return dict(self._items).get(degree, 0)

    @property
    def total_rank(self) -> int:
        return sum(r for _, r in self._items)

    @property
    def is_empty(self) -> bool:
        return not self._items

    @property
    def max_degree(self) -> int:
        if not self._items:
            raise DomainError("empty graded vector space has no top degree")
        return self._items[-1][0]


def monomial_basis(alg: GradedAlgebraPresentation) -> list[Monomial]:
    """All squarefree monomials, doubled by the module element when present.

    Sorted by (degree, name tuple) so output order is reproducible.
    """
    gens = alg.generators
    out = []
    for k in range(len(gens) + 1):
        for combo in itertools.combinations(gens, k):
            names = tuple(g.name for g in combo)
            deg = sum(g.degree for g in combo)
            out.append(Monomial(names, deg))
            if alg.module_basis is not None:
                out.append(Monomial(names, deg + alg.module_basis.degree, module=True))
    out.sort(key=lambda m: (m.degree, m.names + ((alg.module_basis.name,) if m.module else ())))
    return out


def betti_table(alg: GradedAlgebraPresentation) -> GradedVectorSpace:
    ranks: dict[int, int] = {}
    for mono in monomial_basis(alg):
        ranks[mono.degree] = ranks.get(mono.degree, 0) + 1
    return GradedVectorSpace.from_dict(ranks)


def truncate_top(space: GradedVectorSpace) -> GradedVectorSpace:
    """Drop every class in the single maximal occupied degree."""
    if space.is_empty:
        raise DomainError("cannot truncate an empty graded vector space")
    top = space.max_degree
    return GradedVectorSpace.from_dict({d: r for d, r in space.ranks.items() if d != top})


def shift(space: GradedVectorSpace, s: int) -> GradedVectorSpace:
    """Regrade so that ranks[d + s] = old ranks[d]."""
    if not space.is_empty and min(space.degrees) + s < 0:
        raise DomainError(
            f"shift by {s} sends degree {min(space.degrees)} below zero"
        )
    return GradedVectorSpace.from_dict({d + s: r for d, r in space.ranks.items()})


def poincare_polynomial(alg: GradedAlgebraPresentation) -> dict[int, int]:
    """Coefficients of prod over generators of (1 + t^deg), as {exponent: coeff}.

    The module factor contributes one more (1 + t^deg) term.
    """
    poly = {0: 1}
    degs = [g.degree for g in alg.generators]
    if alg.module_basis is not None:
        degs.append(alg.module_basis.degree)
    for d in degs:
        poly = _mul_1var(poly, {0: 1, d: 1})
    return poly


def _mul_1var(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, ca in a.items():
        for j, cb in b.items():
            out[i + j] = out.get(i + j, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def poincare_complement(mono: Monomial, alg: GradedAlgebraPresentation) -> Monomial:
    """The complementary squarefree monomial (duality partner; signs untracked)."""
    if alg.module_basis is not None:
        raise DomainError("duality complement is not defined with a module factor")
    if mono.module:
        raise DomainError("monomial carries a module flag but the algebra has none")
    known = alg.generator_names
    for name in mono.names:
        if name not in known:
            raise DomainError(f"monomial uses unknown generator {name!r}")
    names = tuple(n for n in known if n not in mono.names)
    return Monomial(names, alg.top_degree - mono.degree)
