"""Exception hierarchy shared by the library and the CLI."""


class StackyPicError(Exception):
    """Base class for every error raised on bad input."""


class GroupMismatch(StackyPicError):
    """Two objects that must live in the same presented group do not."""


class ElementGroupMismatch(GroupMismatch):
    """A supplied class is an element of some other group."""


class IllDefined(StackyPicError):
    """A proposed homomorphism does not send every relation to zero."""


class KernelMismatch(StackyPicError):
    """Lift orders disagree with the computed obstruction kernel."""


class EnumerationTooLarge(StackyPicError):
    """The extension enumeration would exceed its size bound."""


class SpecError(StackyPicError):
    """Malformed curve description.  ``line`` is 1-based when known."""

    def __init__(self, message, line=None, block=None):
        self.message = message
        self.line = line
        self.block = block
        super().__init__(self.__str__())

    def __str__(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.block is not None:
            where.append(f"[{self.block}]")
        prefix = " ".join(where)
        return f"{prefix}: {self.message}" if prefix else self.message


class SpecSyntaxError(SpecError):
    """Unparseable statement."""


class UnresolvedLabel(SpecError):
    pass


class DuplicateLabel(SpecError):
    pass


class BadInteger(SpecError):
    pass
