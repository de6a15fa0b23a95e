"""Exception types shared across the package."""


class ReoError(Exception):
    """Base class for all library errors."""


class IncompatibleStructures(ReoError):
    def __init__(self, nodes):
        self.nodes = tuple(sorted(nodes))
        super().__init__(
            "structures cannot compose; shared nodes not input/output paired: "
            + ", ".join(self.nodes)
        )


class IncompatibleColorings(ReoError):
    def __init__(self, nodes):
        self.nodes = tuple(sorted(nodes))
        super().__init__("colorings disagree on: " + ", ".join(self.nodes))


class ResourceLimit(ReoError):
    def __init__(self, needed, bound):
        self.needed = needed
        self.bound = bound
        super().__init__(f"enumeration of {needed} assignments exceeds bound {bound}")


class InvalidModel(ReoError):
    def __init__(self, violations, what="model"):
        self.violations = tuple(violations)
        super().__init__(f"invalid {what}: " + "; ".join(self.violations))


class NondeterministicAutomaton(InvalidModel):
    def __init__(self, pairs):
        self.pairs = tuple(pairs)
        super().__init__(
            [f"transitions {a} and {b} collide" for a, b in self.pairs],
            what="automaton (nondeterministic)",
        )


class ArityError(ReoError, ValueError):
    pass


class NonInjectiveMapping(ReoError, ValueError):
    pass


class NodeSetMismatch(ReoError, ValueError):
    pass


class NotAdmitted(ReoError):
    """A trace step chose a constraint coloring absent from the current table."""


class DslError(ReoError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


class FormatError(ReoError):
    """Base for model-file decoding failures."""


class MalformedDocument(FormatError):
    pass


class SchemaViolation(FormatError):
    pass


class UnknownVersion(FormatError):
    pass


class ModelViolation(FormatError, InvalidModel):
    """A well-formed document whose model breaks a model invariant."""

    def __init__(self, violations, what="model"):
        InvalidModel.__init__(self, violations, what)
