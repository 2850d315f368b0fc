"""Decide which direct dependencies are unused.

The built-in detector is import-presence based: a dependency is flagged only
when none of its import names appears anywhere, including inside try/except
blocks and string-literal dynamic imports.  Richer analyses (call graphs)
plug in through the external-findings channel instead.
"""
from __future__ import annotations

import ast
import logging
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyNameError, MalformedRequirementError
from .model import (
    BloatFinding,
    DistributionRecord,
    FileKind,
    ImportBinding,
    ImportKind,
    PackageName,
    RequirementSpec,
    SourceLocation,
    normalize_name,
)
from .static_resolver import StaticIndex, read_project_text

log = logging.getLogger(__name__)


@dataclass
class DetectorInput:
    dependencies: dict[str, list[RequirementSpec]]  # normalized name -> declarations
    names: dict[str, PackageName]
    dist_records: list[DistributionRecord] | None
    source_files: list[Path]


def scan_imports(source_files: list[Path], project_root: Path) -> list[ImportBinding]:
    """Collect import bindings from Python sources; unparseable files are skipped."""
    project_root = Path(project_root)
    bindings: list[ImportBinding] = []
    for path in source_files:
        try:
            content, _ = read_project_text(path)
            tree = ast.parse(content)
        except (OSError, SyntaxError, ValueError) as exc:
            log.warning("skipping %s: %s", path, exc)
            continue
        try:
            rel = path.resolve().relative_to(project_root.resolve()).as_posix()
        except ValueError:
            rel = path.as_posix()
        bindings.extend(_scan_tree(tree, rel))
    return bindings


def _scan_tree(tree: ast.AST, rel: str) -> list[ImportBinding]:
    found: list[ImportBinding] = []
    for node in ast.walk(tree):
        if isinstance(node, ast.Import):
            for alias in node.names:
                found.append(
                    ImportBinding(
                        module_path=alias.name,
                        kind=ImportKind.PLAIN,
                        location=SourceLocation(rel, node.lineno, FileKind.PYTHON_SOURCE),
                        aliased_names=((alias.name, alias.asname),),
                    )
                )
        elif isinstance(node, ast.ImportFrom):
            if node.level or not node.module:
                continue  # relative import: internal to the project
            found.append(
                ImportBinding(
                    module_path=node.module,
                    kind=ImportKind.FROM_IMPORT,
                    location=SourceLocation(rel, node.lineno, FileKind.PYTHON_SOURCE),
                    aliased_names=tuple((a.name, a.asname) for a in node.names),
                )
            )
        elif isinstance(node, ast.Call):
            literal = _dynamic_import_literal(node)
            if literal is not None:
                kind, module = literal
                found.append(
                    ImportBinding(
                        module_path=module,
                        kind=kind,
                        location=SourceLocation(rel, node.lineno, FileKind.PYTHON_SOURCE),
                    )
                )
    return found


def _dynamic_import_literal(node: ast.Call) -> tuple[ImportKind, str] | None:
    """Match importlib.import_module("lit") / import_module("lit") / __import__("lit")."""
    func = node.func
    is_import_module = (
        isinstance(func, ast.Attribute)
        and func.attr == "import_module"
        and isinstance(func.value, ast.Name)
        and func.value.id == "importlib"
    ) or (isinstance(func, ast.Name) and func.id == "import_module")
    is_dunder = isinstance(func, ast.Name) and func.id == "__import__"
    if not (is_import_module or is_dunder):
        return None
    if not node.args:
        return None
    first = node.args[0]
    if not (isinstance(first, ast.Constant) and isinstance(first.value, str)):
        return None
    kind = ImportKind.DUNDER_IMPORT if is_dunder else ImportKind.DYNAMIC_LITERAL
    return kind, first.value


def map_package_to_imports(
    pkg: PackageName, dist_records: list[DistributionRecord] | None
) -> set[str]:
    """Importable module names a package provides.

    Falls back to the underscored normalized name when no installed record is
    available (no isolated install happened, or the package is not installed).
    """
    if dist_records:
        for record in dist_records:
            if record.name == pkg and record.import_names:
                return set(record.import_names)
    return {pkg.normalized.replace("-", "_")}


def detect_unused(inp: DetectorInput) -> list[BloatFinding]:
    """Flag every dependency none of whose import names is ever imported."""
    bindings = scan_imports(inp.source_files, _common_root(inp.source_files))
    imported = {b.top_level for b in bindings}
    findings: list[BloatFinding] = []
    for key in sorted(inp.dependencies):
        pkg = inp.names.get(key) or normalize_name(key)
        if map_package_to_imports(pkg, inp.dist_records) & imported:
            continue
        declared = tuple(
            spec.location for spec in inp.dependencies[key] if spec.location is not None
        )
        findings.append(
            BloatFinding(
                package=pkg,
                declared_at=declared,
                detector_id="builtin-imports",
                report_only=not declared,
            )
        )
    return findings


def _common_root(paths: list[Path]) -> Path:
    if not paths:
        return Path(".")
    import os

    return Path(os.path.commonpath([str(p.resolve().parent) for p in paths]))


def load_external_findings(
    packages: list[str],
    index: StaticIndex,
    bindings: list[ImportBinding] | None = None,
    dist_records: list[DistributionRecord] | None = None,
) -> list[BloatFinding]:
    """Turn an externally supplied unused-package list into findings.

    Names with no parsed declaration cannot be removed and come back as
    report-only warnings.  When import bindings are supplied, matching import
    sites are attached so the remover can also drop the import statements.
    """
    seen: dict[str, PackageName] = {}
    for raw in packages:
        try:
            name = normalize_name(raw)
        except (MalformedRequirementError, EmptyNameError) as exc:
            log.warning("ignoring external finding %r: %s", raw, exc)
            continue
        seen.setdefault(name.normalized, name)

    findings: list[BloatFinding] = []
    for key in sorted(seen):
        pkg = seen[key]
        specs = index.declarations.get(key, [])
        declared = tuple(spec.location for spec in specs if spec.location is not None)
        import_sites: tuple[ImportBinding, ...] = ()
        if bindings:
            import_names = map_package_to_imports(pkg, dist_records)
            import_sites = tuple(b for b in bindings if b.top_level in import_names)
        if not declared:
            log.warning("external finding %s has no declaration anywhere; report-only", key)
        findings.append(
            BloatFinding(
                package=pkg,
                declared_at=declared,
                import_sites=import_sites,
                detector_id="external",
                report_only=not declared,
            )
        )
    return findings
