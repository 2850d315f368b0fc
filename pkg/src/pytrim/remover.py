"""Minimal, format-preserving removal of dependency declarations and imports.

Every operation here obeys the same rules: lines that do not mention a
removed package come out byte-identical, results must still parse under the
format's own parser, and applying an operation twice equals applying it once.
Anything that cannot be edited safely is downgraded to a manual-review flag
rather than risked.
"""
from __future__ import annotations

import ast
import configparser
import difflib
import logging
import os
import re
import tempfile
from dataclasses import dataclass
from enum import Enum
from pathlib import Path, PurePosixPath

import tomlkit
import tomlkit.exceptions
import yaml

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .detector import map_package_to_imports
from .errors import (
    EmptyNameError,
    MalformedRequirementError,
    StaleFileError,
    UnsupportedEditError,
)
from .model import (
    DistributionRecord,
    EditPlan,
    FileEdit,
    FileKind,
    ImportBinding,
    ImportKind,
    ManualFlag,
    PackageName,
    SourceLocation,
    normalize_name,
    parse_requirement_line,
)
from .static_resolver import (
    decode_project_bytes,
    dependency_list_nodes,
    iter_logical_lines,
    parse_setup_py_static,
)

log = logging.getLogger(__name__)


class EditMode(Enum):
    DRY_RUN = "dry-run"
    WRITE = "write"


def _matches(requirement_text: str, pkg: PackageName) -> bool:
    try:
        parsed = parse_requirement_line(requirement_text)
    except (MalformedRequirementError, EmptyNameError):
        return False
    return parsed is not None and parsed.name.normalized == pkg.normalized


# ---------------------------------------------------------------------------
# requirements files


def remove_from_requirements(content: str, pkg: PackageName) -> str:
    """Delete every logical line declaring pkg, continuations and comment included."""
    lines = content.splitlines(keepends=True)
    drop: set[int] = set()
    for logical in iter_logical_lines(content):
        if _matches(logical.text, pkg):
            start = logical.start_line - 1
            drop.update(range(start, start + logical.physical_count))
    if not drop:
        return content
    return "".join(line for idx, line in enumerate(lines) if idx not in drop)


# ---------------------------------------------------------------------------
# pyproject.toml


def remove_from_toml(content: str, pkg: PackageName) -> str:
    """Remove pkg from PEP 621 arrays and poetry tables, preserving style.

    An emptied `project.dependencies` keeps its `[]`; an emptied optional
    group key is dropped.  Raises on unparseable input; the result is
    re-validated with an independent TOML parser before being returned.
    """
    doc = tomlkit.parse(content)
    changed = False

    project = _table_or_none(doc.get("project"))
    if project is not None:
        changed |= _scrub_toml_array(project, "dependencies", pkg, drop_empty_key=False)
        optional = _table_or_none(project.get("optional-dependencies"))
        if optional is not None:
            for group in list(optional.keys()):
                changed |= _scrub_toml_array(optional, group, pkg, drop_empty_key=True)

    tool = _table_or_none(doc.get("tool"))
    poetry = _table_or_none(tool.get("poetry")) if tool is not None else None
    if poetry is not None:
        changed |= _drop_poetry_key(poetry.get("dependencies"), pkg)
        groups = _table_or_none(poetry.get("group"))
        if groups is not None:
            for group in list(groups.keys()):
                table = _table_or_none(groups.get(group))
                if table is not None:
                    changed |= _drop_poetry_key(table.get("dependencies"), pkg)

    if not changed:
        return content
    new_content = tomlkit.dumps(doc)
    tomllib.loads(new_content)  # independent re-parse; a failure here is a bug
    return new_content


def _table_or_none(value):
    """Treat only mapping-like TOML values as tables; scalars are ignored."""
    return value if hasattr(value, "get") and hasattr(value, "keys") else None


def _scrub_toml_array(table, key: str, pkg: PackageName, drop_empty_key: bool) -> bool:
    array = table.get(key)
    if not isinstance(array, list):
        return False
    removed = False
    for idx in reversed(range(len(array))):
        item = array[idx]
        if isinstance(item, str) and _matches(str(item), pkg):
            del array[idx]
            removed = True
    if removed and drop_empty_key and len(array) == 0:
        del table[key]
    return removed


def _drop_poetry_key(table, pkg: PackageName) -> bool:
    if table is None or not hasattr(table, "keys"):
        return False
    removed = False
    for key in list(table.keys()):
        try:
            if normalize_name(key).normalized == pkg.normalized:
                del table[key]
                removed = True
        except (MalformedRequirementError, EmptyNameError):
            continue
    return removed


# ---------------------------------------------------------------------------
# setup.cfg


_CFG_SECTION_RE = re.compile(r"\[(.+?)\]")
_CFG_KEY_RE = re.compile(r"([^=:\s][^=:]*?)\s*[=:]\s*(.*)$")


def remove_from_setup_cfg(content: str, pkg: PackageName) -> str:
    """Delete pkg's value line under install_requires / extras groups.

    When the removal empties a key, the key line goes too.
    """
    lines = content.splitlines(keepends=True)
    regions = _cfg_dependency_regions(lines)

    drop: set[int] = set()
    rewrite: dict[int, str] = {}
    for key_idx, inline_value, value_lines in regions:
        removed_any = False
        survivors = 0
        for idx, text in value_lines:
            if _matches(text, pkg):
                drop.add(idx)
                removed_any = True
            else:
                survivors += 1
        inline_survives = False
        if inline_value:
            entries = _split_inline_cfg(inline_value)
            kept = [entry for entry in entries if not _matches(entry, pkg)]
            if len(kept) != len(entries):
                removed_any = True
                if kept:
                    line = lines[key_idx]
                    eol = _line_ending(line)
                    prefix_match = re.match(r"^([^=:]*[=:][ \t]*)", line)
                    rewrite[key_idx] = prefix_match.group(1) + ", ".join(kept) + eol
                    inline_survives = True
            else:
                inline_survives = True
        if removed_any and survivors == 0 and not inline_survives:
            drop.add(key_idx)
            rewrite.pop(key_idx, None)

    if not drop and not rewrite:
        return content
    out = []
    for idx, line in enumerate(lines):
        if idx in drop:
            continue
        out.append(rewrite.get(idx, line))
    return "".join(out)


def _cfg_dependency_regions(lines: list[str]):
    """(key_line_idx, inline_value, [(value_line_idx, text)]) per dependency key."""
    regions = []
    section = None
    key_idx = None
    inline = ""
    values: list[tuple[int, str]] = []

    def close():
        nonlocal key_idx, inline, values
        if key_idx is not None:
            regions.append((key_idx, inline, values))
        key_idx, inline, values = None, "", []

    for idx, raw in enumerate(lines):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        if line[0] in " \t":
            stripped = line.strip()
            if key_idx is not None and stripped and not stripped.startswith(("#", ";")):
                values.append((idx, stripped))
            continue
        close()
        section_match = _CFG_SECTION_RE.match(line)
        if section_match:
            section = section_match.group(1).strip().lower()
            continue
        if line.startswith(("#", ";")):
            continue
        kv = _CFG_KEY_RE.match(line)
        if kv:
            option = kv.group(1).strip().lower()
            if (section == "options" and option == "install_requires") or (
                section == "options.extras_require"
            ):
                key_idx, inline, values = idx, kv.group(2).strip(), []
    close()
    return regions


def _split_inline_cfg(value: str) -> list[str]:
    # comma-split only when every chunk is a requirement of its own, so
    # compound constraints like `rich>=1,<2` survive as one entry
    if ";" not in value and "," in value:
        chunks = [part.strip() for part in value.split(",") if part.strip()]
        if all(_parses_to_name(chunk) for chunk in chunks):
            return chunks
    return [value.strip()] if value.strip() else []


def _parses_to_name(text: str) -> bool:
    try:
        return parse_requirement_line(text) is not None
    except (MalformedRequirementError, EmptyNameError):
        return False


# ---------------------------------------------------------------------------
# setup.py


def remove_from_setup_py(content: str, pkg: PackageName) -> str:
    """Excise pkg's string literal from dependency lists found via the AST.

    Elements owning their line are deleted whole (trailing comment included);
    inline elements lose one adjacent comma.  Dynamic dependency construction
    is never edited: if pkg cannot be located among literals and the file
    builds dependencies dynamically, an UnsupportedEditError tells the planner
    to flag the file instead.
    """
    tree = ast.parse(content)
    list_nodes, dynamic, _ = dependency_list_nodes(tree)

    targets = []
    for list_node, _detail in list_nodes:
        for element in list_node.elts:
            if (
                isinstance(element, ast.Constant)
                and isinstance(element.value, str)
                and _matches(element.value, pkg)
            ):
                targets.append(element)

    if not targets:
        if dynamic:
            raise UnsupportedEditError(
                "dependencies are constructed dynamically; file left unedited"
            )
        return content

    lines = content.splitlines(keepends=True)
    targets.sort(key=lambda e: (e.lineno, e.col_offset), reverse=True)
    for element in targets:
        start_l, start_c = element.lineno - 1, element.col_offset
        end_l, end_c = element.end_lineno - 1, element.end_col_offset
        prefix = lines[start_l][:start_c]
        suffix = lines[end_l][end_c:]
        if not prefix.strip() and re.fullmatch(r"\s*,?\s*(#.*)?", suffix.rstrip("\r\n")):
            del lines[start_l : end_l + 1]
        elif start_l == end_l:
            line = lines[start_l]
            rest = line[end_c:]
            after_comma = re.match(r"\s*,\s*", rest)
            if after_comma:
                lines[start_l] = line[:start_c] + rest[after_comma.end():]
            else:
                before = line[:start_c]
                before_comma = re.search(r",\s*$", before)
                head = before[: before_comma.start()] if before_comma else before
                lines[start_l] = head + rest
        else:
            raise UnsupportedEditError(
                f"cannot excise multi-line element for {pkg.normalized}"
            )

    out = "".join(lines)
    ast.parse(out)  # a failure here is a bug, not a user error
    still_there, _, _ = parse_setup_py_static(out, "<edited>")
    if any(spec.name.normalized == pkg.normalized for spec in still_there):
        raise UnsupportedEditError(f"{pkg.normalized} survived the edit; refusing to write")
    return out


# ---------------------------------------------------------------------------
# environment.yml


def remove_from_environment_yaml(content: str, pkg: PackageName) -> str:
    """Drop matching items under `dependencies:` including nested `- pip:` lists.

    Anchors/aliases and flow-style sequences are refused (alias rewriting can
    change meaning); emptied `pip:`/`dependencies:` keys are removed with
    their key line.
    """
    for event in yaml.parse(content):
        if isinstance(event, yaml.AliasEvent) or getattr(event, "anchor", None):
            raise UnsupportedEditError("YAML anchors/aliases present; manual edit required")

    root = yaml.compose(content)
    if not isinstance(root, yaml.MappingNode):
        return content

    drop: set[int] = set()  # 0-based physical lines
    for key_node, value_node in root.value:
        if not (
            isinstance(key_node, yaml.ScalarNode)
            and key_node.value == "dependencies"
            and isinstance(value_node, yaml.SequenceNode)
        ):
            continue
        if value_node.flow_style:
            raise UnsupportedEditError("flow-style dependencies list; manual edit required")
        survivors = 0
        removed_any = False
        for item in value_node.value:
            if isinstance(item, yaml.ScalarNode):
                if _conda_entry_matches(str(item.value), pkg):
                    drop.update(range(item.start_mark.line, item.end_mark.line + 1))
                    removed_any = True
                else:
                    survivors += 1
            elif isinstance(item, yaml.MappingNode):
                kept_mapping = True
                for sub_key, sub_value in item.value:
                    if not (
                        isinstance(sub_key, yaml.ScalarNode)
                        and sub_key.value == "pip"
                        and isinstance(sub_value, yaml.SequenceNode)
                    ):
                        continue
                    if sub_value.flow_style:
                        raise UnsupportedEditError("flow-style pip list; manual edit required")
                    pip_survivors = 0
                    pip_removed = False
                    for pip_item in sub_value.value:
                        if isinstance(pip_item, yaml.ScalarNode) and _matches(
                            str(pip_item.value), pkg
                        ):
                            drop.update(
                                range(pip_item.start_mark.line, pip_item.end_mark.line + 1)
                            )
                            pip_removed = True
                        else:
                            pip_survivors += 1
                    if pip_removed and pip_survivors == 0 and len(item.value) == 1:
                        drop.add(item.start_mark.line)  # the `- pip:` line itself
                        kept_mapping = False
                        removed_any = True
                if kept_mapping:
                    survivors += 1
        if removed_any and survivors == 0:
            drop.add(key_node.start_mark.line)

    if not drop:
        return content
    lines = content.splitlines(keepends=True)
    out = "".join(line for idx, line in enumerate(lines) if idx not in drop)
    yaml.safe_load(out)  # a failure here is a bug
    return out


def _conda_entry_matches(entry: str, pkg: PackageName) -> bool:
    match = re.match(r"[A-Za-z0-9._-]+", entry.strip())
    if not match:
        return False
    try:
        return normalize_name(match.group(0)).normalized == pkg.normalized
    except (MalformedRequirementError, EmptyNameError):
        return False


# ---------------------------------------------------------------------------
# Python source imports


def remove_imports_from_source(content: str, import_names: set[str]) -> str:
    """Remove Plain/From import statements whose top-level module matches.

    Partial matches in `import a, b` are rewritten keeping survivors; a block
    emptied by the removal gets a `pass` placeholder; dynamic import calls are
    left alone (the planner flags them).  The result must still parse.
    """
    tree = ast.parse(content)
    lines = content.splitlines(keepends=True)

    # Every statement list in the module, with its owning (header) node.
    bodies: list[tuple[ast.AST | None, list[ast.stmt]]] = []
    for node in ast.walk(tree):
        for field_name in ("body", "orelse", "finalbody"):
            stmts = getattr(node, field_name, None)
            if isinstance(stmts, list) and stmts and isinstance(stmts[0], ast.stmt):
                owner = None if isinstance(node, ast.Module) else node
                bodies.append((owner, stmts))

    full_removals: list[ast.stmt] = []
    rewrites: list[tuple[ast.stmt, list[ast.alias]]] = []
    for _owner, stmts in bodies:
        for stmt in stmts:
            if isinstance(stmt, ast.Import):
                matched = [a for a in stmt.names if a.name.split(".", 1)[0] in import_names]
                if not matched:
                    continue
                if len(matched) == len(stmt.names):
                    full_removals.append(stmt)
                else:
                    survivors = [a for a in stmt.names if a not in matched]
                    rewrites.append((stmt, survivors))
            elif isinstance(stmt, ast.ImportFrom):
                if stmt.level or not stmt.module:
                    continue
                if stmt.module.split(".", 1)[0] in import_names:
                    full_removals.append(stmt)

    if not full_removals and not rewrites:
        return content

    removed_ids = {id(stmt) for stmt in full_removals}
    edits: list[tuple[int, int, int, list[str] | str]] = []
    # (line, col, end_line, replacement): replacement is a list of whole lines
    # for range edits, or a string for an in-line char splice.

    for owner, stmts in bodies:
        removed_here = [s for s in stmts if id(s) in removed_ids]
        if not removed_here:
            continue
        emptied = len(removed_here) == len(stmts)
        for position, stmt in enumerate(removed_here):
            start_l, end_l = stmt.lineno - 1, stmt.end_lineno - 1
            # non-whitespace before the statement means it shares its line with
            # a suite header (`else:`, `finally:`, `try:`) or another statement
            inline_suite = (
                owner is not None and stmt.lineno == owner.lineno
            ) or bool(lines[start_l][: stmt.col_offset].strip())
            shares_line = any(
                other is not stmt
                and other.lineno <= stmt.lineno <= other.end_lineno
                for other in stmts
            )
            if inline_suite or shares_line:
                # splice within the line; "pass" keeps the suite valid
                edits.append((start_l, stmt.col_offset, stmt.end_col_offset, "pass"))
            elif emptied and position == 0:
                indent = re.match(r"[ \t]*", lines[start_l]).group(0)
                eol = _line_ending(lines[end_l]) or "\n"
                edits.append((start_l, -1, end_l, [f"{indent}pass{eol}"]))
            else:
                edits.append((start_l, -1, end_l, []))

    for stmt, survivors in rewrites:
        start_l, end_l = stmt.lineno - 1, stmt.end_lineno - 1
        indent = re.match(r"[ \t]*", lines[start_l]).group(0)
        eol = _line_ending(lines[end_l]) or "\n"
        rendered = ", ".join(
            f"{a.name} as {a.asname}" if a.asname else a.name for a in survivors
        )
        edits.append((start_l, -1, end_l, [f"{indent}import {rendered}{eol}"]))

    # Apply bottom-up so earlier positions stay valid.
    edits.sort(key=lambda e: (e[0], e[1]), reverse=True)
    for start_l, col, end, replacement in edits:
        if isinstance(replacement, str):
            line = lines[start_l]
            lines[start_l] = line[:col] + replacement + line[end:]
        else:
            lines[start_l : end + 1] = replacement

    out = "".join(lines)
    try:
        ast.parse(out)
    except SyntaxError as exc:  # never expected; refuse rather than corrupt
        raise UnsupportedEditError(f"import removal produced invalid syntax: {exc}") from exc
    return out


def _line_ending(line: str) -> str:
    if line.endswith("\r\n"):
        return "\r\n"
    if line.endswith("\n"):
        return "\n"
    return ""


# ---------------------------------------------------------------------------
# planning


@dataclass
class RemovalContext:
    """Everything the planner needs to know about the analyzed project."""

    project_root: Path
    dist_records: list[DistributionRecord] | None = None
    lockfiles: tuple[str, ...] = ()
    unmodifiable: tuple[str, ...] = ()
    bindings: tuple[ImportBinding, ...] = ()


_DECL_REMOVERS = {
    FileKind.REQUIREMENTS: remove_from_requirements,
    FileKind.PYPROJECT_TOML: remove_from_toml,
    FileKind.SETUP_CFG: remove_from_setup_cfg,
    FileKind.SETUP_PY: remove_from_setup_py,
    FileKind.YAML_ENV: remove_from_environment_yaml,
}

_EDIT_FAILURES = (
    UnsupportedEditError,
    SyntaxError,
    configparser.Error,
    yaml.YAMLError,
    tomlkit.exceptions.ParseError,
    getattr(tomllib, "TOMLDecodeError", ValueError),
)


def plan_removal(ctx: RemovalContext, findings) -> EditPlan:
    """Aggregate per-file edits for all findings, plus flags and lock warnings."""
    actionable = [f for f in findings if not f.report_only]
    flags: list[ManualFlag] = []

    decl_by_file: dict[str, tuple[FileKind, dict[str, PackageName]]] = {}
    for finding in actionable:
        for loc in finding.declared_at:
            kind, pkgs = decl_by_file.setdefault(loc.file_path, (loc.file_kind, {}))
            pkgs.setdefault(finding.package.normalized, finding.package)

    # Which import names belong to which finding, and where they occur.
    import_owner: dict[str, PackageName] = {}
    for finding in actionable:
        for name in map_package_to_imports(finding.package, ctx.dist_records):
            import_owner.setdefault(name, finding.package)
    imports_by_file: dict[str, set[str]] = {}
    for binding in ctx.bindings:
        if binding.top_level not in import_owner:
            continue
        if binding.kind in (ImportKind.PLAIN, ImportKind.FROM_IMPORT):
            imports_by_file.setdefault(binding.location.file_path, set()).add(binding.top_level)
        else:
            flags.append(
                ManualFlag(
                    location=binding.location,
                    reason=f'dynamic import of "{binding.top_level}" left in place',
                    package=import_owner[binding.top_level],
                )
            )

    edits: list[FileEdit] = []
    for rel in sorted(set(decl_by_file) | set(imports_by_file)):
        path = ctx.project_root / rel
        try:
            raw = path.read_bytes()
        except OSError as exc:
            flags.append(
                ManualFlag(
                    SourceLocation(rel, 1, FileKind.UNMODIFIABLE),
                    reason=f"cannot read file: {exc}",
                )
            )
            continue
        text, codec = decode_project_bytes(raw, rel)
        current = text
        removed: set[PackageName] = set()
        kind = FileKind.PYTHON_SOURCE
        aborted = False

        if rel in decl_by_file:
            kind, pkgs = decl_by_file[rel]
            remover = _DECL_REMOVERS[kind]
            for key in sorted(pkgs):
                pkg = pkgs[key]
                try:
                    updated = remover(current, pkg)
                except _EDIT_FAILURES as exc:
                    flags.append(
                        ManualFlag(
                            SourceLocation(rel, 1, kind),
                            reason=f"could not edit: {exc}",
                            package=pkg,
                        )
                    )
                    aborted = True
                    break
                if updated != current:
                    removed.add(pkg)
                    current = updated
        if aborted:
            continue

        if rel in imports_by_file:
            names = imports_by_file[rel]
            try:
                updated = remove_imports_from_source(current, names)
            except _EDIT_FAILURES as exc:
                flags.append(
                    ManualFlag(
                        SourceLocation(rel, 1, FileKind.PYTHON_SOURCE),
                        reason=f"could not edit imports: {exc}",
                    )
                )
                updated = current
            if updated != current:
                removed.update(import_owner[name] for name in names)
                current = updated

        if current != text:
            edits.append(
                FileEdit(
                    file_path=rel,
                    file_kind=kind,
                    original_content=raw,
                    new_content=current.encode(codec),
                    removed_packages=frozenset(removed),
                    encoding=codec,
                )
            )

    for finding in actionable:
        flags.extend(
            flag_unmodifiable_mentions(ctx.project_root, ctx.unmodifiable, finding.package)
        )

    warnings = check_lockfile_sync(list(ctx.lockfiles), [e.file_path for e in edits])

    edits.sort(key=lambda e: e.file_path)
    flags.sort(key=lambda f: (f.location.file_path, f.location.line, f.reason))
    return EditPlan(
        file_edits=tuple(edits),
        manual_flags=tuple(flags),
        lockfile_warnings=tuple(sorted(warnings)),
    )


_LOCK_GOVERNS = {
    "poetry.lock": "pyproject.toml",
    "uv.lock": "pyproject.toml",
    "pdm.lock": "pyproject.toml",
    "Pipfile.lock": "Pipfile",
}


def check_lockfile_sync(lockfiles: list[str], edited_paths: list[str]) -> list[str]:
    """Warn when an edit touched a manifest governed by a present lock file."""
    edited = set(edited_paths)
    warnings = []
    for lock_rel in lockfiles:
        lock_path = PurePosixPath(lock_rel)
        manifest = _LOCK_GOVERNS.get(lock_path.name)
        if manifest is None:
            continue
        manifest_rel = str(lock_path.parent / manifest) if str(lock_path.parent) != "." else manifest
        if manifest_rel in edited:
            warnings.append(
                f"{lock_rel} may be out of sync after editing {manifest_rel}; "
                "regenerate it manually (never rewritten automatically)"
            )
    return warnings


def flag_unmodifiable_mentions(
    project_root: Path, unmodifiable: list[str] | tuple[str, ...], pkg: PackageName
) -> list[ManualFlag]:
    """Whole-word, case-insensitive scan for pkg in files the tool never edits."""
    variants = {pkg.raw.lower(), pkg.normalized}
    pattern = re.compile(
        "|".join(
            rf"(?<![A-Za-z0-9_]){re.escape(v)}(?![A-Za-z0-9_])" for v in sorted(variants)
        ),
        re.IGNORECASE,
    )
    flags: list[ManualFlag] = []
    for rel in unmodifiable:
        path = Path(project_root) / rel
        try:
            text, _ = decode_project_bytes(path.read_bytes(), rel)
        except OSError:
            continue
        for line_no, line in enumerate(text.splitlines(), start=1):
            if pattern.search(line):
                flags.append(
                    ManualFlag(
                        location=SourceLocation(rel, line_no, FileKind.UNMODIFIABLE),
                        reason=f'mentions "{pkg.raw}"; review manually',
                        package=pkg,
                    )
                )
    return flags


# ---------------------------------------------------------------------------
# applying


def apply_edits(project_root: Path, plan: EditPlan, mode: EditMode) -> list[str]:
    """Produce unified diffs; in WRITE mode also replace files atomically.

    All staleness checks run before the first write so a concurrent
    modification can never leave the tree half-edited.
    """
    project_root = Path(project_root)
    diffs = [_render_diff(edit) for edit in plan.file_edits]
    if mode == EditMode.DRY_RUN:
        return diffs

    for edit in plan.file_edits:
        target = project_root / edit.file_path
        try:
            on_disk = target.read_bytes()
        except OSError as exc:
            raise StaleFileError(f"{edit.file_path}: unreadable before write: {exc}") from exc
        if on_disk != edit.original_content:
            raise StaleFileError(f"{edit.file_path} changed since the plan was made")

    for edit in plan.file_edits:
        target = project_root / edit.file_path
        mode_bits = target.stat().st_mode
        fd, tmp_name = tempfile.mkstemp(dir=str(target.parent), prefix=".pytrim-")
        try:
            os.write(fd, edit.new_content)
        finally:
            os.close(fd)
        os.chmod(tmp_name, mode_bits & 0o7777)
        os.replace(tmp_name, target)
    return diffs


def _render_diff(edit: FileEdit) -> str:
    old_text = edit.original_content.decode(edit.encoding, errors="replace")
    new_text = edit.new_content.decode(edit.encoding, errors="replace")
    lines = difflib.unified_diff(
        old_text.splitlines(keepends=True),
        new_text.splitlines(keepends=True),
        fromfile=f"a/{edit.file_path}",
        tofile=f"b/{edit.file_path}",
    )
    out = []
    for line in lines:
        out.append(line if line.endswith("\n") else line + "\n")
    return "".join(out)
