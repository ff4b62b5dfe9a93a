"""Exception types shared across the package."""


class NetlabError(Exception):
    """Base class for all package errors."""


# ---- poset ----------------------------------------------------------------

class PosetError(NetlabError):
    pass


class ReflexivityViolation(PosetError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"relation not reflexive at {element!r}")


class AntisymmetryViolation(PosetError):
    def __init__(self, x, y):
        self.pair = (x, y)
        super().__init__(f"antisymmetry violated by {x!r} <= {y!r} <= {x!r}")


class TransitivityViolation(PosetError):
    def __init__(self, x, y, z):
        self.triple = (x, y, z)
        super().__init__(f"transitivity violated on ({x!r}, {y!r}, {z!r})")


class UnknownElement(PosetError):
    pass


class EmptyRefinement(PosetError):
    pass


class PerpAxiomViolation(PosetError):
    pass


class SizeOverflow(NetlabError):
    pass


# ---- simplicial / homotopy -------------------------------------------------

class EndpointMismatch(NetlabError):
    pass


class DisconnectedBasepoint(NetlabError):
    pass


class NoCover(NetlabError):
    pass


class GapTooLarge(NetlabError):
    pass


# ---- lattice ----------------------------------------------------------------

class NotAchronal(NetlabError):
    pass


class NotCausallyConvex(NetlabError):
    def __init__(self, witness_chain):
        self.witness_chain = witness_chain
        super().__init__(f"image not causally convex; escaping chain {witness_chain}")


class OutOfBounds(NetlabError):
    pass


# ---- operator algebra --------------------------------------------------------

class DimensionMismatch(NetlabError):
    pass


class RankOverflow(NetlabError):
    pass


class EmptyComplement(NetlabError):
    pass


# ---- cocycle ------------------------------------------------------------------

class InconsistentClassification(NetlabError):
    pass


class RelatorViolation(NetlabError):
    pass


class NotLocallyRelativelyConnected(NetlabError):
    pass


class PathNotFound(NetlabError):
    pass


class NotPathIndependent(NetlabError):
    pass


class IncompatibleIsomorphism(NetlabError):
    pass


class SimplexOutsideImage(NetlabError):
    pass


# ---- wavefront -------------------------------------------------------------------

class WindowTooSmall(NetlabError):
    pass


class ObstructionPresent(NetlabError):
    pass


# ---- cli ---------------------------------------------------------------------------

class ParseError(NetlabError):
    def __init__(self, path, location, message):
        self.path = path
        self.location = location
        super().__init__(f"{path}:{location}: {message}")


class UnknownKind(NetlabError):
    pass


class UnknownCommand(NetlabError):
    pass
