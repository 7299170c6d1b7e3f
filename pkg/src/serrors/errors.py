"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class ScenarioError(ValueError):
    """A scenario file failed schema validation.

    ``problems`` holds one ``(field_path, message)`` pair per offending field.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        lines = [f"{path or '<root>'}: {msg}" for path, msg in self.problems]
        super().__init__("invalid scenario:\n  " + "\n  ".join(lines))
