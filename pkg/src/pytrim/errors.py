"""Exception hierarchy shared across the package."""


class PytrimError(Exception):
    """Base class for all pytrim-specific errors."""


class UsageError(PytrimError):
    """Bad invocation or configuration; maps to CLI exit code 2."""


class EmptyNameError(PytrimError):
    """A package name was empty or whitespace-only."""


class MalformedRequirementError(PytrimError):
    """A requirement string could not be parsed by the supported grammar."""


class InstallerNotFoundError(PytrimError):
    """The configured installer executable is not on the search path."""


class MalformedMetadataError(PytrimError):
    """A dist-info directory is missing required metadata headers."""


class MultipleRootsError(PytrimError):
    """More than one in-degree-0 vertex and no known project name."""

    def __init__(self, candidates: list[str]):
        self.candidates = sorted(candidates)
        super().__init__(f"multiple root candidates: {', '.join(self.candidates)}")


class MissingRootError(PytrimError):
    """No in-degree-0 vertex exists and the project name is unknown."""


class UnsupportedEditError(PytrimError):
    """The file uses a construct the remover refuses to rewrite."""


class StaleFileError(PytrimError):
    """A file changed on disk between planning and applying edits."""


class NotARepoError(PytrimError):
    """The project root is not inside a version-control working tree."""


class DirtyWorktreeError(PytrimError):
    """A file targeted by the edit plan has uncommitted changes."""


class VcsCommandError(PytrimError):
    """A VCS subprocess exited nonzero."""


class CaseSetupError(PytrimError):
    """A replication case directory is malformed."""
