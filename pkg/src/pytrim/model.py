"""Core domain types: package identity, requirement specs, findings, edit plans.

Everything here is an immutable value type; instances are safe to share
between threads and to use as dict keys / set members.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import EmptyNameError, MalformedRequirementError

# Valid package name as written in a manifest (PEP 508 name shape).
_RAW_NAME_RE = re.compile(r"[A-Za-z0-9](?:[A-Za-z0-9._-]*[A-Za-z0-9])?")
_NORMALIZED_RE = re.compile(r"[a-z0-9](?:[a-z0-9-]*[a-z0-9])?")
_SEPARATOR_RUN_RE = re.compile(r"[-_.]+")

# A version constraint (or URL reference) starts with one of these after the
# name/extras segment.  "(" covers the legacy `name (==1.0)` metadata style.
_CONSTRAINT_START = "=<>!~@("


class FileKind(Enum):
    REQUIREMENTS = "requirements"
    PYPROJECT_TOML = "pyproject"
    SETUP_PY = "setup.py"
    SETUP_CFG = "setup.cfg"
    YAML_ENV = "yaml-env"
    PYTHON_SOURCE = "python"
    UNMODIFIABLE = "unmodifiable"


class ImportKind(Enum):
    PLAIN = "plain"
    FROM_IMPORT = "from"
    DYNAMIC_LITERAL = "dynamic-literal"
    DUNDER_IMPORT = "dunder-import"


@dataclass(frozen=True)
class PackageName:
    """A distribution name in both the form it was written and canonical form.

    Equality and hashing use only the normalized form, so `Foo_Bar` and
    `foo-bar` are the same package.
    """

    normalized: str
    raw: str = field(compare=False)

    @classmethod
    def from_raw(cls, raw: str) -> "PackageName":
        return normalize_name(raw)

    def __str__(self) -> str:
        return self.normalized


def normalize_name(raw: str) -> PackageName:
    """Canonicalize a package name: lowercase, separator runs collapsed to `-`.

    Leading/trailing separator runs are dropped so the result always matches
    `^[a-z0-9]([a-z0-9-]*[a-z0-9])?$`.
    """
    stripped = raw.strip()
    if not stripped:
        raise EmptyNameError("package name is empty")
    norm = _SEPARATOR_RUN_RE.sub("-", stripped.lower()).strip("-")
    if not norm or not _NORMALIZED_RE.fullmatch(norm):
        raise MalformedRequirementError(f"invalid package name: {raw!r}")
    return PackageName(normalized=norm, raw=stripped)


@dataclass(frozen=True)
class SourceLocation:
    """Where something was declared or imported, relative to the project root."""

    file_path: str
    line: int
    file_kind: FileKind
    detail: str | None = None

    def __post_init__(self):
        if self.line < 1:
            raise ValueError(f"line must be 1-based, got {self.line}")

    def __str__(self) -> str:
        return f"{self.file_path}:{self.line}"


@dataclass(frozen=True)
class RequirementSpec:
    """One parsed dependency declaration.

    `version_constraint` and `marker` are kept verbatim; the grammar only
    needs to recover identity, not evaluate constraints.  The location does
    not participate in equality so that round-tripping compares cleanly.
    """

    name: PackageName
    extras: frozenset[str] = frozenset()
    version_constraint: str = ""
    marker: str | None = None
    location: SourceLocation | None = field(compare=False, default=None)


def parse_requirement_line(line: str) -> RequirementSpec | None:
    """Parse one requirement line; None for blank/comment/option lines.

    Grammar subset: `name [extras] constraint ; marker`, with `#` comments
    stripped when they start the line or follow whitespace.  Raises
    MalformedRequirementError when the name segment is invalid.
    """
    text = _strip_comment(line).strip()
    if not text:
        return None
    if text.startswith("#") or text.startswith("-"):
        return None

    match = _RAW_NAME_RE.match(text)
    if not match:
        raise MalformedRequirementError(f"unparseable requirement: {line.strip()!r}")
    name = normalize_name(match.group(0))
    rest = text[match.end():].lstrip()

    extras: frozenset[str] = frozenset()
    if rest.startswith("["):
        closing = rest.find("]")
        if closing < 0:
            raise MalformedRequirementError(f"unterminated extras in {line.strip()!r}")
        extras = frozenset(
            part.strip() for part in rest[1:closing].split(",") if part.strip()
        )
        rest = rest[closing + 1:].lstrip()

    marker: str | None = None
    semi = rest.find(";")
    if semi >= 0:
        marker = rest[semi + 1:].strip() or None
        rest = rest[:semi]

    constraint = rest.strip()
    if constraint and constraint[0] not in _CONSTRAINT_START:
        raise MalformedRequirementError(f"unexpected text after name: {line.strip()!r}")

    return RequirementSpec(
        name=name, extras=extras, version_constraint=constraint, marker=marker
    )


def serialize_requirement(spec: RequirementSpec) -> str:
    """Render a spec back to requirement-line syntax (field round-trip safe)."""
    out = spec.name.raw
    if spec.extras:
        out += f"[{','.join(sorted(spec.extras))}]"
    if spec.version_constraint:
        out += spec.version_constraint
    if spec.marker:
        out += f" ; {spec.marker}"
    return out


def _strip_comment(line: str) -> str:
    """Drop a `#` comment that starts the line or follows whitespace."""
    if line.lstrip().startswith("#"):
        return ""
    for idx, char in enumerate(line):
        if char == "#" and idx > 0 and line[idx - 1] in " \t":
            return line[:idx]
    return line


@dataclass(frozen=True)
class ImportBinding:
    """One import site in Python source."""

    module_path: str
    kind: ImportKind
    location: SourceLocation
    aliased_names: tuple[tuple[str, str | None], ...] = ()

    @property
    def top_level(self) -> str:
        return self.module_path.split(".", 1)[0]


@dataclass(frozen=True)
class DistributionRecord:
    """Metadata for one installed distribution."""

    name: PackageName
    version: str
    requires: tuple[RequirementSpec, ...] = ()
    import_names: frozenset[str] = frozenset()


@dataclass(frozen=True)
class DependencyGraph:
    """Directed graph over installed distributions; edge (x, y) = x depends on y."""

    nodes: tuple[DistributionRecord, ...]
    edges: frozenset[tuple[PackageName, PackageName]]
    root: PackageName

    def node_names(self) -> set[str]:
        return {record.name.normalized for record in self.nodes}

    def direct_dependencies(self) -> set[PackageName]:
        """Out-neighbors of the root: the project's direct dependencies."""
        return {dst for src, dst in self.edges if src == self.root}


@dataclass(frozen=True)
class BloatFinding:
    """One unused dependency, anchored to its declarations and import sites.

    `report_only` marks findings with no removable declaration (e.g. an
    externally supplied name that no parsed config file declares).
    """

    package: PackageName
    declared_at: tuple[SourceLocation, ...]
    import_sites: tuple[ImportBinding, ...] = ()
    detector_id: str = "builtin-imports"
    report_only: bool = False

    def __post_init__(self):
        if not self.declared_at and not self.report_only:
            raise ValueError(f"finding for {self.package} has no declaration anchor")


@dataclass(frozen=True)
class ManualFlag:
    """A mention the tool refuses to edit; left for human review."""

    location: SourceLocation
    reason: str
    package: PackageName | None = None


@dataclass(frozen=True)
class FileEdit:
    """A whole-file rewrite for one path, covering all packages removed from it."""

    file_path: str
    file_kind: FileKind
    original_content: bytes
    new_content: bytes
    removed_packages: frozenset[PackageName]
    encoding: str = "utf-8"

    def __post_init__(self):
        if self.new_content == self.original_content:
            raise ValueError(f"edit for {self.file_path} changes nothing")


@dataclass(frozen=True)
class EditPlan:
    """All file modifications plus review flags and lock-file warnings for a run."""

    file_edits: tuple[FileEdit, ...] = ()
    manual_flags: tuple[ManualFlag, ...] = ()
    lockfile_warnings: tuple[str, ...] = ()

    def __post_init__(self):
        paths = [edit.file_path for edit in self.file_edits]
        if len(paths) != len(set(paths)):
            raise ValueError("more than one FileEdit for the same path")

    @property
    def is_empty(self) -> bool:
        return not self.file_edits and not self.manual_flags
