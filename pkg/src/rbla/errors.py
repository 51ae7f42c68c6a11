"""Exception hierarchy shared by all modules."""


class RBLAError(Exception):
    pass


class ShapeError(RBLAError, ValueError):
    """Dimensions of matrices, tensors or vectors do not fit together."""


class InvalidInputError(RBLAError, ValueError):
    """An argument violates an algebraic precondition (e.g. base is not Rota-Baxter)."""


class ClosureError(InvalidInputError):
    """A proposed subalgebra is not closed under the bracket or the operator."""


class DecompositionError(InvalidInputError):
    """Two families of vectors do not form complementary subspaces."""


class InvalidProjectionError(InvalidInputError):
    pass


class InvalidWitnessError(InvalidInputError):
    pass
