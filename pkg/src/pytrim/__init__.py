"""pytrim: find unused Python dependencies and trim them from config and source files."""

from .model import (
    BloatFinding,
    DependencyGraph,
    DistributionRecord,
    EditPlan,
    FileEdit,
    FileKind,
    ImportBinding,
    ImportKind,
    ManualFlag,
    PackageName,
    RequirementSpec,
    SourceLocation,
    normalize_name,
    parse_requirement_line,
    serialize_requirement,
)

__version__ = "0.1.0"

__all__ = [
    "BloatFinding",
    "DependencyGraph",
    "DistributionRecord",
    "EditPlan",
    "FileEdit",
    "FileKind",
    "ImportBinding",
    "ImportKind",
    "ManualFlag",
    "PackageName",
    "RequirementSpec",
    "SourceLocation",
    "normalize_name",
    "parse_requirement_line",
    "serialize_requirement",
    "__version__",
]
