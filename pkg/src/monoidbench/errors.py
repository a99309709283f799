"""Exception taxonomy shared by all modules."""


class BenchError(Exception):
    """Base class for all monoidbench errors."""


class InvalidMonoid(BenchError):
    """Construction data violates a monoid invariant."""


class InvalidElement(BenchError):
    """Element does not belong to the monoid it was used with."""


class InvalidHom(BenchError):
    """Mapping data fails a homomorphism law at construction time."""


class UnsupportedQuotient(BenchError):
    """Rees quotient would have an infinite complement."""


class DegenerateLocalization(BenchError):
    """Localization collapses to the trivial monoid (0 in the saturation)."""


class NotTorsionFree(BenchError):
    """The zero ideal is not prime, so no group completion exists."""


class NotProper(BenchError):
    """Operation requires a proper ideal."""


class DomainError(BenchError):
    """Operation applied outside its applicability domain."""


class PreconditionError(BenchError):
    """Explicit operation precondition violated."""


class NotSeparated(BenchError):
    """The ideal powers do not intersect in {0}; no metric exists."""


class ResourceBound(BenchError):
    """A configured desk-scale resource guard was exceeded."""


class RelationAxiomError(BenchError):
    """Divisibility relation fails one of the five reconstruction axioms."""

    def __init__(self, axiom: int, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom-{axiom} violated at witness {witness!r}")
