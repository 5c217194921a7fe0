"""Exception hierarchy shared by every idont subsystem."""


class IdontError(Exception):
    """Base class for all toolkit errors."""


# -- script engine ---------------------------------------------------------

class ScriptError(IdontError):
    pass


class ProfileError(ScriptError):
    """A script profile or lexicon file is inconsistent."""


class UnknownUnitError(ScriptError):
    def __init__(self, codepoint, offset=None):
        self.codepoint = codepoint
        self.offset = offset
        where = "" if offset is None else f" at offset {offset}"
        super().__init__(f"unknown unit U+{codepoint:04X}{where}")


class GrammarError(ScriptError):
    """A unit sequence is rejected by the akshara grammar.

    ``rule`` is one of ``MALFORMED``, ``MAX_VOWEL_SIGNS`` or
    ``MAX_NASAL_SIGNS``; ``offset`` indexes the offending unit.
    """

    def __init__(self, rule, offset, message):
        self.rule = rule
        self.offset = offset
        self.detail = message
        super().__init__(f"{rule} at offset {offset}: {message}")

    def shifted(self, delta):
        return GrammarError(self.rule, self.offset + delta, self.detail)


# -- ontology --------------------------------------------------------------

class DesignParseError(IdontError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownEnumError(DesignParseError):
    def __init__(self, enum_name, token):
        self.enum_name = enum_name
        self.token = token
        super().__init__(f"unknown {enum_name} token {token!r}")


class DuplicateIdError(DesignParseError):
    def __init__(self, ident):
        self.ident = ident
        super().__init__(f"duplicate id {ident!r}")


class DanglingReferenceError(DesignParseError):
    def __init__(self, source, target):
        self.source = source
        self.target = target
        super().__init__(f"{source} refers to missing element {target!r}")


class CompositionError(IdontError):
    """Composition produced a design that fails schema validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(f"{v.rule} at {v.path}" for v in self.violations[:5])
        super().__init__(f"{len(self.violations)} violation(s): {lines}")


class UnresolvedNodeError(IdontError):
    def __init__(self, idents):
        self.idents = sorted(idents)
        super().__init__("unresolved process node id(s): " + ", ".join(self.idents))


# -- compiler / packager ---------------------------------------------------

class PrimerSpecError(IdontError):
    pass


class TemplateError(IdontError):
    pass


class VariantError(IdontError):
    def __init__(self, uncovered=(), unknown=(), invalid=()):
        self.uncovered = sorted(uncovered)
        self.unknown = sorted(unknown)
        self.invalid = sorted(invalid)
        parts = []
        if self.uncovered:
            parts.append("uncovered: " + ", ".join(self.uncovered))
        if self.unknown:
            parts.append("unknown: " + ", ".join(self.unknown))
        if self.invalid:
            parts.append("not spelled in the target script: " + ", ".join(self.invalid))
        super().__init__("incomplete variant maps; " + "; ".join(parts))


class PackageError(IdontError):
    def __init__(self, message, violations=(), path=None):
        self.violations = list(violations)
        self.path = path
        super().__init__(message)
