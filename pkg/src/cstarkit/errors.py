"""Exception types shared across the package."""


class CstarkitError(Exception):
    """Base class for all package-specific failures."""


class DimensionMismatch(CstarkitError):
    """Operands do not share the ambient dimension they need to."""


class NonConvergence(CstarkitError):
    """An iterative eigenvalue or closure computation failed to settle."""


class IllConditioned(CstarkitError):
    """A solve exceeded its condition bound; tolerances cannot separate."""


class NotInAlgebra(CstarkitError):
    """A matrix lies outside the span of the algebra it was handed to."""


class RelationMismatch(CstarkitError):
    """Two measures live on different relations."""


class ParentMismatch(CstarkitError):
    """Two sub-relations live over different parent relations."""


class DegenerateState(CstarkitError):
    """A functional is not a state: wrong normalization or negativity."""


class ContourTooClose(CstarkitError):
    """An integration contour or pole runs within eps_eig of a spectrum."""


class NotAbelian(CstarkitError):
    """A group operation that requires commutativity got a nonabelian group."""


class NotBoolean(CstarkitError):
    """A lattice operation that requires a Boolean algebra got something else."""


class InputError(CstarkitError):
    """A structured input file is malformed; message names the field."""
