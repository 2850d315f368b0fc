"""Infer true direct dependencies by installing the project in isolation.

A source install executes whatever logic the project's configuration runs at
build time, so dependencies constructed programmatically (file reads, function
calls) are observed rather than approximated.  The installed target directory
is then read back through its `*.dist-info` metadata and turned into a
dependency graph whose root is the project itself.
"""
from __future__ import annotations

import email
import logging
import os
import re
import shutil
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    EmptyNameError,
    InstallerNotFoundError,
    MalformedRequirementError,
    MissingRootError,
    MultipleRootsError,
)
from .model import (
    DependencyGraph,
    DistributionRecord,
    FileKind,
    PackageName,
    RequirementSpec,
    SourceLocation,
    normalize_name,
    parse_requirement_line,
)
from .static_resolver import StaticIndex

log = logging.getLogger(__name__)

DEFAULT_INSTALL_TIMEOUT = 600.0


def default_installer() -> str:
    return os.environ.get("PYTRIM_INSTALLER", "pip")


@dataclass
class InstallResult:
    target_dir: Path
    succeeded: bool
    installer_stdout: str = ""
    installer_stderr: str = ""
    duration: float = 0.0


def install_isolated(
    project_root: Path,
    target_dir: Path,
    timeout: float = DEFAULT_INSTALL_TIMEOUT,
    installer: str | None = None,
) -> InstallResult:
    """Run `<installer> install -t <target_dir> <project_root>` as a subprocess.

    A timeout or nonzero exit is a failure result, not an exception, so the
    pipeline can degrade to static-only resolution.
    """
    installer = installer or default_installer()
    target_dir = Path(target_dir)
    if target_dir.exists() and any(target_dir.iterdir()):
        raise ValueError(f"install target {target_dir} is not empty")
    target_dir.mkdir(parents=True, exist_ok=True)

    command = [installer, "install", "-t", str(target_dir), str(project_root)]
    started = time.monotonic()
    try:
        proc = subprocess.run(command, capture_output=True, text=True, timeout=timeout)
    except FileNotFoundError as exc:
        raise InstallerNotFoundError(f"installer not found: {installer}") from exc
    except subprocess.TimeoutExpired:
        return InstallResult(
            target_dir=target_dir,
            succeeded=False,
            installer_stderr=f"install timed out after {timeout:.0f}s",
            duration=time.monotonic() - started,
        )
    duration = time.monotonic() - started
    succeeded = proc.returncode == 0 and any(target_dir.glob("*.dist-info"))
    return InstallResult(
        target_dir=target_dir,
        succeeded=succeeded,
        installer_stdout=proc.stdout,
        installer_stderr=proc.stderr,
        duration=duration,
    )


def scan_dist_infos(target_dir: Path) -> list[DistributionRecord]:
    """Read every `*.dist-info` directory into a DistributionRecord.

    Import names come from top_level.txt, then RECORD's top-level entries,
    then the underscored package name as a last resort.  Distributions with
    unusable metadata are skipped with a warning.
    """
    records: list[DistributionRecord] = []
    for info_dir in sorted(Path(target_dir).glob("*.dist-info")):
        metadata_path = info_dir / "METADATA"
        try:
            message = email.message_from_string(metadata_path.read_text(encoding="utf-8", errors="replace"))
        except OSError as exc:
            log.warning("skipping %s: unreadable METADATA (%s)", info_dir.name, exc)
            continue
        raw_name = message.get("Name")
        if not raw_name:
            log.warning("skipping %s: METADATA has no Name header", info_dir.name)
            continue
        try:
            name = normalize_name(raw_name)
        except (MalformedRequirementError, EmptyNameError):
            log.warning("skipping %s: unparseable Name %r", info_dir.name, raw_name)
            continue
        version = (message.get("Version") or "").strip()

        requires = []
        for value in message.get_all("Requires-Dist") or []:
            try:
                parsed = parse_requirement_line(value)
            except (MalformedRequirementError, EmptyNameError):
                log.warning("%s: unparseable Requires-Dist %r", info_dir.name, value)
                continue
            if parsed is None:
                continue
            requires.append(
                RequirementSpec(
                    name=parsed.name,
                    extras=parsed.extras,
                    version_constraint=parsed.version_constraint,
                    marker=parsed.marker,
                    location=SourceLocation(
                        f"{info_dir.name}/METADATA", 1, FileKind.UNMODIFIABLE
                    ),
                )
            )

        import_names = _import_names(info_dir, name)
        records.append(
            DistributionRecord(
                name=name,
                version=version,
                requires=tuple(requires),
                import_names=frozenset(import_names),
            )
        )
    return records


def _import_names(info_dir: Path, name: PackageName) -> set[str]:
    top_level = info_dir / "top_level.txt"
    if top_level.is_file():
        names = {
            line.strip()
            for line in top_level.read_text(encoding="utf-8", errors="replace").splitlines()
            if line.strip()
        }
        if names:
            return names

    record = info_dir / "RECORD"
    if record.is_file():
        names = set()
        for line in record.read_text(encoding="utf-8", errors="replace").splitlines():
            path = line.split(",", 1)[0].strip()
            if not path or ".dist-info/" in path or path.startswith(".."):
                continue
            first, _, rest = path.partition("/")
            if first in ("bin", "__pycache__") or first.endswith(".data"):
                continue
            candidate = first.split(".", 1)[0] if not rest else first
            if candidate.isidentifier():
                names.add(candidate)
        if names:
            return names

    return {name.normalized.replace("-", "_")}


def _marker_selects_extra(marker: str | None) -> bool:
    return bool(marker and re.search(r"\bextra\s*==", marker))


def build_dependency_graph(
    records: list[DistributionRecord], project_name: PackageName | None = None
) -> DependencyGraph:
    """Edges follow Requires-Dist between installed records; root is the project.

    Requirements gated behind an `extra == ...` marker are not default-path
    dependencies and produce no edge.  The root is matched by name when known,
    otherwise it must be the unique vertex with no incoming edges.
    """
    if not records:
        raise MissingRootError("no installed distributions to build a graph from")
    by_name = {record.name.normalized: record for record in records}

    edges: set[tuple[PackageName, PackageName]] = set()
    for record in records:
        for req in record.requires:
            if _marker_selects_extra(req.marker):
                continue
            target = by_name.get(req.name.normalized)
            if target is None or target.name == record.name:
                continue
            edges.add((record.name, target.name))

    if project_name is not None and project_name.normalized in by_name:
        root = by_name[project_name.normalized].name
    else:
        incoming = {dst.normalized for _, dst in edges}
        candidates = [r.name for r in records if r.name.normalized not in incoming]
        if not candidates:
            raise MissingRootError("every vertex has incoming edges; no root found")
        if len(candidates) > 1:
            raise MultipleRootsError([c.normalized for c in candidates])
        root = candidates[0]

    return DependencyGraph(nodes=tuple(records), edges=frozenset(edges), root=root)


@dataclass
class ResolvedDependencies:
    """Union of static and dynamic direct dependencies with per-name provenance."""

    provenance: dict[str, str] = field(default_factory=dict)  # normalized -> static|dynamic|both
    names: dict[str, PackageName] = field(default_factory=dict)
    dist_records: list[DistributionRecord] | None = None
    graph: DependencyGraph | None = None
    install: InstallResult | None = None
    warnings: list[str] = field(default_factory=list)


def resolve_dependencies(
    index: StaticIndex,
    use_dynamic: bool = True,
    installer: str | None = None,
    timeout: float = DEFAULT_INSTALL_TIMEOUT,
    target_dir: Path | None = None,
) -> ResolvedDependencies:
    """Combine statically declared names with install-observed direct deps.

    Dynamic failures never abort the run: the result degrades to the static
    set with a warning, so the output can only grow when the install works.
    """
    resolved = ResolvedDependencies(
        provenance={name: "static" for name in index.declarations},
        names=dict(index.names),
    )
    if not use_dynamic:
        return resolved

    cleanup = target_dir is None
    target = Path(target_dir) if target_dir else Path(tempfile.mkdtemp(prefix="pytrim-install-"))
    try:
        try:
            result = install_isolated(
                index.project_root, target, timeout=timeout, installer=installer
            )
        except (InstallerNotFoundError, ValueError) as exc:
            resolved.warnings.append(f"dynamic resolution unavailable ({exc}); static-only result")
            return resolved
        resolved.install = result
        if not result.succeeded:
            tail = (result.installer_stderr or "").strip().splitlines()[-1:] or [""]
            resolved.warnings.append(
                f"isolated install failed; degrading to static-only resolution ({tail[0]})"
            )
            return resolved

        records = scan_dist_infos(target)
        resolved.dist_records = records
        try:
            graph = build_dependency_graph(records, index.project_name)
        except (MultipleRootsError, MissingRootError) as exc:
            resolved.warnings.append(f"dependency graph has no usable root: {exc}")
            return resolved
        resolved.graph = graph

        for dep in graph.direct_dependencies():
            key = dep.normalized
            resolved.provenance[key] = "both" if key in resolved.provenance else "dynamic"
            resolved.names.setdefault(key, dep)
    finally:
        if cleanup:
            shutil.rmtree(target, ignore_errors=True)
    return resolved
