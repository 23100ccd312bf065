"""singcoh: characteristic cohomology of matrix singularities.

Catalogs of Milnor-fiber / complement / link cohomology for the varieties of
singular matrices, kite-map construction and containment certification for
polynomial matrix germs, constructive rank normal forms, pseudo-rotation
factorization with Schubert cell identification, and local-to-global link
degree bookkeeping.
"""

from .catalog import (
    Coefficients,
    MatrixKind,
    SpaceSelector,
    complement_cohomology,
    inclusion_restriction,
    link_of_variety_cohomology,
    milnor_fiber_cohomology,
)
from .detection import DetectionResult, detect_complement, detect_link, detect_milnor
from .errors import (
    DomainError,
    ParseError,
    RankAmbiguityError,
    SingcohError,
    WitnessError,
)
from .grading import (
    GeneratorLabel,
    GradedAlgebraPresentation,
    GradedVectorSpace,
    Monomial,
    betti_table,
    exterior,
    monomial_basis,
    poincare_complement,
    poincare_polynomial,
    shift,
    truncate_top,
)

__version__ = "0.1.0"
