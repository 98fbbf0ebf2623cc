"""Exception hierarchy shared across the package."""


class GradcatError(Exception):
    pass


class ContractViolation(GradcatError, ValueError):
    """An operation was called outside its precondition."""


class ResourceGuardError(GradcatError):
    """An enumeration would exceed the configured instance-count guard."""

    def __init__(self, needed: int, bound: int):
        super().__init__(f"{needed} term instances exceed the guard limit of {bound}")
        self.needed = needed
        self.bound = bound


class TheoremViolation(GradcatError):
    """A theorem-backed verdict failed its own verification."""


class NotExponential(GradcatError):
    """No natural bijection with a power functor was found."""


class ModeNotSound(GradcatError):
    """Grade descent requested for a functor that does not preserve
    intersections; only brute force is valid."""


class NoSplitting(GradcatError):
    """An intersection square admits no splitting (empty Set intersection)."""


class NoLeastSubobject(GradcatError):
    """Brute force found several minimal subobjects and no least one."""

    def __init__(self, minimal):
        super().__init__(f"no least subobject; minimal ones: {minimal!r}")
        self.minimal = minimal


class SpecError(GradcatError):
    """A spec file could not be loaded; ``exit_code`` tells the CLI why."""

    exit_code = 3

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class SpecParseError(SpecError):
    exit_code = 2


class SpecSchemaError(SpecError):
    exit_code = 3


class UnsupportedVersion(SpecError):
    exit_code = 5


class UnknownBuiltin(SpecError):
    exit_code = 6
