"""Discover configuration files and extract declared dependencies statically.

Nothing here executes project code; setup.py is inspected through its syntax
tree only.  Parse failures degrade to warnings so one broken file cannot sink
an entire run.
"""
from __future__ import annotations

import ast
import configparser
import fnmatch
import logging
import os
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import yaml

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .errors import MalformedRequirementError, EmptyNameError
from .model import (
    FileKind,
    PackageName,
    RequirementSpec,
    SourceLocation,
    normalize_name,
    parse_requirement_line,
)

log = logging.getLogger(__name__)

# Directory names never descended into: vendored/generated trees plus the
# tool's own scratch dir.
EXCLUDED_DIR_NAMES = {
    ".git",
    ".hg",
    ".svn",
    "node_modules",
    "venv",
    ".venv",
    "build",
    "dist",
    "__pycache__",
    ".tox",
    ".eggs",
    ".pytrim",
}

LOCKFILE_NAMES = {"poetry.lock", "Pipfile.lock", "uv.lock", "pdm.lock"}

_UNMODIFIABLE_PATTERNS = ("Dockerfile*", "*.sh", "README*", "*.rst", "*.md")
_NAME_RUN_RE = re.compile(r"[A-Za-z0-9._-]+")


class ParseStatus(Enum):
    PARSED = "parsed"
    PARTIALLY_PARSED = "partially-parsed"
    DYNAMIC = "dynamic"
    FAILED = "failed"


@dataclass
class ConfigFile:
    """One discovered dependency-declaring file."""

    path: Path
    rel_path: str
    file_kind: FileKind
    parse_status: ParseStatus = ParseStatus.PARSED


@dataclass
class DiscoveryResult:
    config_files: list[ConfigFile] = field(default_factory=list)
    lockfiles: list[str] = field(default_factory=list)
    unmodifiable: list[str] = field(default_factory=list)


@dataclass
class StaticIndex:
    """Union of all statically declared dependencies, keyed by normalized name."""

    project_root: Path
    config_files: list[ConfigFile] = field(default_factory=list)
    declarations: dict[str, list[RequirementSpec]] = field(default_factory=dict)
    names: dict[str, PackageName] = field(default_factory=dict)
    project_name: PackageName | None = None
    lockfiles: list[str] = field(default_factory=list)
    unmodifiable: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def declared_names(self) -> set[str]:
        return set(self.declarations)


def decode_project_bytes(data: bytes, origin: str = "<bytes>") -> tuple[str, str]:
    """Decode file bytes; returns (text, codec that round-trips them).

    UTF-8 first (BOM tolerated), Latin-1 as last resort so no file is ever
    unreadable, at the cost of a warning.
    """
    if data.startswith(b"\xef\xbb\xbf"):
        return data.decode("utf-8-sig"), "utf-8-sig"
    try:
        return data.decode("utf-8"), "utf-8"
    except UnicodeDecodeError:
        log.warning("%s is not UTF-8; falling back to Latin-1", origin)
        return data.decode("latin-1"), "latin-1"


def read_project_text(path: Path) -> tuple[str, str]:
    """Read a project file as text; returns (text, codec used to decode it)."""
    return decode_project_bytes(path.read_bytes(), str(path))


@dataclass(frozen=True)
class LogicalLine:
    """One requirements-file logical line after continuation joining."""

    start_line: int
    physical_count: int
    text: str


def iter_logical_lines(content: str) -> list[LogicalLine]:
    """Join backslash-continued physical lines; keeps 1-based start positions."""
    out: list[LogicalLine] = []
    physical = content.splitlines()
    i = 0
    while i < len(physical):
        start = i
        joined = physical[i]
        while joined.rstrip().endswith("\\") and i + 1 < len(physical):
            joined = joined.rstrip()[:-1] + physical[i + 1]
            i += 1
        out.append(LogicalLine(start_line=start + 1, physical_count=i - start + 1, text=joined))
        i += 1
    return out


def parse_requirements_file(content: str, rel_path: str) -> list[RequirementSpec]:
    """One spec per declaring logical line; malformed lines warn and are skipped."""
    specs: list[RequirementSpec] = []
    for logical in iter_logical_lines(content):
        try:
            parsed = parse_requirement_line(logical.text)
        except (MalformedRequirementError, EmptyNameError) as exc:
            log.warning("%s:%d: skipping line: %s", rel_path, logical.start_line, exc)
            continue
        if parsed is None:
            continue
        location = SourceLocation(rel_path, logical.start_line, FileKind.REQUIREMENTS)
        specs.append(
            RequirementSpec(
                name=parsed.name,
                extras=parsed.extras,
                version_constraint=parsed.version_constraint,
                marker=parsed.marker,
                location=location,
            )
        )
    return specs


def requirement_include_targets(content: str) -> list[str]:
    """Paths referenced by `-r`/`--requirement` option lines."""
    targets = []
    for logical in iter_logical_lines(content):
        text = logical.text.strip()
        for prefix in ("-r", "--requirement"):
            if text == prefix:
                break
            if text.startswith(prefix + " ") or text.startswith(prefix + "="):
                targets.append(text[len(prefix) + 1:].split(" #", 1)[0].strip())
                break
    return targets


def _name_in_line(line: str, name: PackageName) -> bool:
    for run in _NAME_RUN_RE.finditer(line):
        try:
            if normalize_name(run.group(0)).normalized == name.normalized:
                return True
        except (MalformedRequirementError, EmptyNameError):
            continue
    return False


def _locate_line(lines: list[str], name: PackageName, used: set[int]) -> int:
    """Best-effort 1-based line of a declaration found by a structural parser."""
    for idx, line in enumerate(lines):
        if idx not in used and _name_in_line(line, name):
            used.add(idx)
            return idx + 1
    return 1


def _spec_from_string(
    raw: str, rel_path: str, kind: FileKind, line: int, detail: str
) -> RequirementSpec | None:
    try:
        parsed = parse_requirement_line(raw)
    except (MalformedRequirementError, EmptyNameError) as exc:
        log.warning("%s (%s): skipping entry %r: %s", rel_path, detail, raw, exc)
        return None
    if parsed is None:
        return None
    return RequirementSpec(
        name=parsed.name,
        extras=parsed.extras,
        version_constraint=parsed.version_constraint,
        marker=parsed.marker,
        location=SourceLocation(rel_path, line, kind, detail=detail),
    )


def parse_pyproject(content: str, rel_path: str) -> tuple[list[RequirementSpec], str | None]:
    """Extract PEP 621 and poetry dependency declarations from pyproject.toml.

    Raises tomllib.TOMLDecodeError on malformed input; the caller decides how
    to degrade.  The poetry interpreter pin (`python`) is not a dependency.
    """
    data = tomllib.loads(content)
    lines = content.splitlines()
    used: set[int] = set()
    specs: list[RequirementSpec] = []

    project = data.get("project", {})
    project_name = project.get("name") if isinstance(project, dict) else None

    def add_requirement_strings(entries, detail: str):
        if not isinstance(entries, list):
            return
        for entry in entries:
            if not isinstance(entry, str):
                continue
            parsed = _spec_from_string(entry, rel_path, FileKind.PYPROJECT_TOML, 1, detail)
            if parsed is None:
                continue
            line = _locate_line(lines, parsed.name, used)
            specs.append(
                RequirementSpec(
                    name=parsed.name,
                    extras=parsed.extras,
                    version_constraint=parsed.version_constraint,
                    marker=parsed.marker,
                    location=SourceLocation(rel_path, line, FileKind.PYPROJECT_TOML, detail=detail),
                )
            )

    def add_poetry_table(table, detail: str):
        if not isinstance(table, dict):
            return
        for key, value in table.items():
            if key == "python":
                continue
            try:
                name = normalize_name(key)
            except (MalformedRequirementError, EmptyNameError):
                log.warning("%s (%s): skipping key %r", rel_path, detail, key)
                continue
            constraint = value if isinstance(value, str) else ""
            extras = frozenset()
            if isinstance(value, dict) and isinstance(value.get("extras"), list):
                extras = frozenset(str(e) for e in value["extras"])
            line = _locate_line(lines, name, used)
            specs.append(
                RequirementSpec(
                    name=name,
                    extras=extras,
                    version_constraint=constraint if isinstance(constraint, str) else "",
                    location=SourceLocation(rel_path, line, FileKind.PYPROJECT_TOML, detail=detail),
                )
            )

    if isinstance(project, dict):
        add_requirement_strings(project.get("dependencies"), "project.dependencies")
        optional = project.get("optional-dependencies")
        if isinstance(optional, dict):
            for group, entries in optional.items():
                add_requirement_strings(entries, f"project.optional-dependencies.{group}")

    tool = data.get("tool")
    poetry = tool.get("poetry") if isinstance(tool, dict) else None
    if isinstance(poetry, dict):
        if project_name is None and isinstance(poetry.get("name"), str):
            project_name = poetry["name"]
        add_poetry_table(poetry.get("dependencies"), "tool.poetry.dependencies")
        groups = poetry.get("group")
        if isinstance(groups, dict):
            for group, table in groups.items():
                if isinstance(table, dict):
                    add_poetry_table(
                        table.get("dependencies"), f"tool.poetry.group.{group}.dependencies"
                    )

    return specs, project_name


def parse_setup_cfg(content: str, rel_path: str) -> tuple[list[RequirementSpec], str | None]:
    """Extract install_requires and extras_require entries from setup.cfg.

    Raises configparser.Error on malformed input.
    """
    # setup.cfg values are not interpolated by setuptools; % is literal
    parser = configparser.ConfigParser(interpolation=None)
    parser.read_string(content)
    lines = content.splitlines()
    used: set[int] = set()
    specs: list[RequirementSpec] = []

    def add_value(value: str, detail: str):
        for chunk in _split_cfg_value(value):
            parsed = _spec_from_string(chunk, rel_path, FileKind.SETUP_CFG, 1, detail)
            if parsed is None:
                continue
            line = _locate_line(lines, parsed.name, used)
            specs.append(
                RequirementSpec(
                    name=parsed.name,
                    extras=parsed.extras,
                    version_constraint=parsed.version_constraint,
                    marker=parsed.marker,
                    location=SourceLocation(rel_path, line, FileKind.SETUP_CFG, detail=detail),
                )
            )

    if parser.has_option("options", "install_requires"):
        add_value(parser.get("options", "install_requires"), "options.install_requires")
    if parser.has_section("options.extras_require"):
        for group in parser.options("options.extras_require"):
            add_value(
                parser.get("options.extras_require", group),
                f"options.extras_require.{group}",
            )

    project_name = None
    if parser.has_option("metadata", "name"):
        project_name = parser.get("metadata", "name").strip() or None
    return specs, project_name


def _split_cfg_value(value: str) -> list[str]:
    """Split a setup.cfg dangling or inline value into requirement strings.

    A single line with commas is split only when every chunk parses as a
    requirement on its own; compound constraints like `rich>=1,<2` stay one
    entry.
    """
    entries = [part for part in value.splitlines() if part.strip()]
    if len(entries) == 1 and ";" not in entries[0] and "," in entries[0]:
        chunks = [part.strip() for part in entries[0].split(",") if part.strip()]
        if all(_parses_as_requirement(chunk) for chunk in chunks):
            return chunks
    return [part.strip() for part in entries]


def _parses_as_requirement(text: str) -> bool:
    try:
        return parse_requirement_line(text) is not None
    except (MalformedRequirementError, EmptyNameError):
        return False


def dependency_list_nodes(
    tree: ast.Module,
) -> tuple[list[tuple[ast.expr, str]], bool, str | None]:
    """Locate the list/tuple literals that feed setup()'s dependency kwargs.

    Returns (list of (node, detail), dynamic, project_name).  dynamic=True
    whenever any dependency expression is not a plain literal: a name bound
    to something else, a call, a comprehension, a file read.  Shared by the
    static parser and the remover so both agree on what is editable.
    """
    # Module-level `NAME = <expr>` assignments, last one wins.
    assigned: dict[str, ast.expr] = {}
    for node in tree.body:
        if isinstance(node, ast.Assign):
            for target in node.targets:
                if isinstance(target, ast.Name):
                    assigned[target.id] = node.value
        elif isinstance(node, ast.AnnAssign) and isinstance(node.target, ast.Name):
            if node.value is not None:
                assigned[node.target.id] = node.value

    found: list[tuple[ast.expr, str]] = []
    seen_ids: set[int] = set()
    dynamic = False
    project_name: str | None = None

    def resolve(expr: ast.expr, detail: str):
        nonlocal dynamic
        target = expr
        if isinstance(target, ast.Name):
            target = assigned.get(target.id)
        if isinstance(target, (ast.List, ast.Tuple)):
            if id(target) not in seen_ids:
                seen_ids.add(id(target))
                found.append((target, detail))
            if any(
                not (isinstance(e, ast.Constant) and isinstance(e.value, str))
                for e in target.elts
            ):
                dynamic = True
        else:
            dynamic = True

    for node in ast.walk(tree):
        if not isinstance(node, ast.Call):
            continue
        func = node.func
        is_setup = (isinstance(func, ast.Name) and func.id == "setup") or (
            isinstance(func, ast.Attribute) and func.attr == "setup"
        )
        if not is_setup:
            continue
        for keyword in node.keywords:
            if keyword.arg == "name":
                value = keyword.value
                if isinstance(value, ast.Constant) and isinstance(value.value, str):
                    project_name = value.value
            elif keyword.arg == "install_requires":
                resolve(keyword.value, "install_requires")
            elif keyword.arg == "extras_require":
                value = keyword.value
                if isinstance(value, ast.Name):
                    value = assigned.get(value.id, value)
                if isinstance(value, ast.Dict):
                    for key_node, value_node in zip(value.keys, value.values):
                        group = (
                            key_node.value
                            if isinstance(key_node, ast.Constant)
                            and isinstance(key_node.value, str)
                            else "?"
                        )
                        resolve(value_node, f"extras_require[{group}]")
                else:
                    dynamic = True

    return found, dynamic, project_name


def parse_setup_py_static(
    content: str, rel_path: str
) -> tuple[list[RequirementSpec], bool, str | None]:
    """Walk setup.py's AST for literal dependency declarations.

    Returns (specs, dynamic, project_name); dynamic=True whenever any
    dependency expression is not a plain literal (so a dynamic resolver is
    needed for full coverage).  Syntax errors count as dynamic.
    """
    try:
        tree = ast.parse(content)
    except SyntaxError:
        return [], True, None

    nodes, dynamic, project_name = dependency_list_nodes(tree)
    specs: list[RequirementSpec] = []
    for list_node, detail in nodes:
        for element in list_node.elts:
            if isinstance(element, ast.Constant) and isinstance(element.value, str):
                parsed = _spec_from_string(
                    element.value, rel_path, FileKind.SETUP_PY, element.lineno, detail
                )
                if parsed is not None:
                    specs.append(parsed)
    return specs, dynamic, project_name


def parse_environment_yaml(content: str, rel_path: str) -> tuple[list[RequirementSpec], bool]:
    """Extract declarations from a conda-style environment file.

    Returns (specs, has_anchors).  `python` and `pip` entries are tooling,
    not project dependencies.  Raises yaml.YAMLError on malformed input.
    """
    has_anchors = False
    for event in yaml.parse(content):
        if isinstance(event, yaml.AliasEvent) or getattr(event, "anchor", None):
            has_anchors = True
            break

    root = yaml.compose(content)
    specs: list[RequirementSpec] = []
    if not isinstance(root, yaml.MappingNode):
        return specs, has_anchors

    for key_node, value_node in root.value:
        if not (isinstance(key_node, yaml.ScalarNode) and key_node.value == "dependencies"):
            continue
        if not isinstance(value_node, yaml.SequenceNode):
            continue
        for item in value_node.value:
            if isinstance(item, yaml.ScalarNode):
                entry = str(item.value).strip()
                spec = _conda_entry_to_spec(entry, rel_path, item.start_mark.line + 1)
                if spec is not None:
                    specs.append(spec)
            elif isinstance(item, yaml.MappingNode):
                for sub_key, sub_value in item.value:
                    if not (
                        isinstance(sub_key, yaml.ScalarNode)
                        and sub_key.value == "pip"
                        and isinstance(sub_value, yaml.SequenceNode)
                    ):
                        continue
                    for pip_item in sub_value.value:
                        if not isinstance(pip_item, yaml.ScalarNode):
                            continue
                        spec = _spec_from_string(
                            str(pip_item.value),
                            rel_path,
                            FileKind.YAML_ENV,
                            pip_item.start_mark.line + 1,
                            "dependencies.pip",
                        )
                        if spec is not None:
                            specs.append(spec)
    return specs, has_anchors


def _conda_entry_to_spec(entry: str, rel_path: str, line: int) -> RequirementSpec | None:
    match = _NAME_RUN_RE.match(entry)
    if not match:
        return None
    raw_name = match.group(0)
    try:
        name = normalize_name(raw_name)
    except (MalformedRequirementError, EmptyNameError):
        return None
    if name.normalized in ("python", "pip"):
        return None
    return RequirementSpec(
        name=name,
        version_constraint=entry[match.end():].strip(),
        location=SourceLocation(rel_path, line, FileKind.YAML_ENV, detail="dependencies"),
    )


def _is_excluded(rel_posix: str, name: str, extra_excludes: tuple[str, ...]) -> bool:
    for pattern in extra_excludes:
        if fnmatch.fnmatch(rel_posix, pattern) or fnmatch.fnmatch(name, pattern):
            return True
    return False


def _walk_files(project_root: Path, extra_excludes: tuple[str, ...]):
    for dirpath, dirnames, filenames in os.walk(project_root):
        rel_dir = Path(dirpath).relative_to(project_root).as_posix()
        dirnames[:] = sorted(
            d
            for d in dirnames
            if d not in EXCLUDED_DIR_NAMES
            and not d.endswith(".egg-info")
            and not _is_excluded(d if rel_dir == "." else f"{rel_dir}/{d}", d, extra_excludes)
        )
        for filename in sorted(filenames):
            rel = f"{rel_dir}/{filename}" if rel_dir != "." else filename
            if _is_excluded(rel, filename, extra_excludes):
                continue
            yield Path(dirpath) / filename, rel


def discover_config_files(
    project_root: Path, extra_excludes: tuple[str, ...] = ()
) -> DiscoveryResult:
    """Find dependency-declaring files, lock files, and mention-scan candidates.

    Output order is lexicographic by project-relative path, so two runs over
    the same tree always agree.
    """
    project_root = Path(project_root)
    if not project_root.is_dir():
        raise NotADirectoryError(f"not a directory: {project_root}")

    result = DiscoveryResult()
    requirement_files: dict[str, Path] = {}

    for path, rel in _walk_files(project_root, extra_excludes):
        name = path.name
        if name in LOCKFILE_NAMES:
            result.lockfiles.append(rel)
            continue
        if fnmatch.fnmatch(name, "requirements*.txt") or fnmatch.fnmatch(name, "*.in"):
            requirement_files[rel] = path
            continue
        if rel == "pyproject.toml":
            result.config_files.append(ConfigFile(path, rel, FileKind.PYPROJECT_TOML))
            continue
        if rel == "setup.py":
            result.config_files.append(ConfigFile(path, rel, FileKind.SETUP_PY))
            continue
        if rel == "setup.cfg":
            result.config_files.append(ConfigFile(path, rel, FileKind.SETUP_CFG))
            continue
        if fnmatch.fnmatch(name, "environment*.yml") or fnmatch.fnmatch(name, "environment*.yaml"):
            result.config_files.append(ConfigFile(path, rel, FileKind.YAML_ENV))
            continue
        if any(fnmatch.fnmatch(name, pattern) for pattern in _UNMODIFIABLE_PATTERNS):
            result.unmodifiable.append(rel)

    # Follow -r includes one level from globbed files; an include found this
    # way is edited in place later, never inlined.
    for rel, path in sorted(requirement_files.items()):
        try:
            content, _ = read_project_text(path)
        except OSError as exc:
            log.warning("cannot read %s: %s", rel, exc)
            continue
        for target in requirement_include_targets(content):
            target_path = (path.parent / target).resolve()
            try:
                target_rel = target_path.relative_to(project_root.resolve()).as_posix()
            except ValueError:
                log.warning("%s: -r target %s is outside the project; ignored", rel, target)
                continue
            if target_rel in requirement_files or not target_path.is_file():
                continue
            requirement_files[target_rel] = target_path

    for rel, path in requirement_files.items():
        result.config_files.append(ConfigFile(path, rel, FileKind.REQUIREMENTS))

    result.config_files.sort(key=lambda cfg: cfg.rel_path)
    result.lockfiles.sort()
    result.unmodifiable.sort()
    return result


def discover_source_files(
    project_root: Path, extra_excludes: tuple[str, ...] = ()
) -> list[Path]:
    """All .py files under the root, minus vendored dirs and excluded globs."""
    project_root = Path(project_root)
    return [
        path
        for path, rel in _walk_files(project_root, extra_excludes)
        if rel.endswith(".py")
    ]


def build_static_index(
    project_root: Path, extra_excludes: tuple[str, ...] = ()
) -> StaticIndex:
    """Discover and parse every config file; union declarations by name."""
    project_root = Path(project_root)
    discovery = discover_config_files(project_root, extra_excludes)
    index = StaticIndex(
        project_root=project_root,
        config_files=discovery.config_files,
        lockfiles=discovery.lockfiles,
        unmodifiable=discovery.unmodifiable,
    )

    for config in discovery.config_files:
        try:
            content, _ = read_project_text(config.path)
        except OSError as exc:
            config.parse_status = ParseStatus.FAILED
            index.warnings.append(f"cannot read {config.rel_path}: {exc}")
            continue
        specs: list[RequirementSpec] = []
        try:
            if config.file_kind == FileKind.REQUIREMENTS:
                specs = parse_requirements_file(content, config.rel_path)
            elif config.file_kind == FileKind.PYPROJECT_TOML:
                specs, name = parse_pyproject(content, config.rel_path)
                if name and index.project_name is None:
                    index.project_name = _safe_name(name)
            elif config.file_kind == FileKind.SETUP_CFG:
                specs, name = parse_setup_cfg(content, config.rel_path)
                if name and index.project_name is None:
                    index.project_name = _safe_name(name)
            elif config.file_kind == FileKind.SETUP_PY:
                specs, dynamic, name = parse_setup_py_static(content, config.rel_path)
                if name and index.project_name is None:
                    index.project_name = _safe_name(name)
                if dynamic:
                    config.parse_status = (
                        ParseStatus.PARTIALLY_PARSED if specs else ParseStatus.DYNAMIC
                    )
                    index.warnings.append(
                        f"{config.rel_path}: dependencies are built dynamically; "
                        "static extraction is incomplete"
                    )
            elif config.file_kind == FileKind.YAML_ENV:
                specs, _ = parse_environment_yaml(content, config.rel_path)
        except (tomllib.TOMLDecodeError, configparser.Error, yaml.YAMLError) as exc:
            config.parse_status = ParseStatus.FAILED
            index.warnings.append(f"{config.rel_path}: parse failed, skipping ({exc})")
            continue

        for spec in specs:
            key = spec.name.normalized
            index.declarations.setdefault(key, []).append(spec)
            index.names.setdefault(key, spec.name)

    return index


def _safe_name(raw: str) -> PackageName | None:
    try:
        return normalize_name(raw)
    except (MalformedRequirementError, EmptyNameError):
        return None
