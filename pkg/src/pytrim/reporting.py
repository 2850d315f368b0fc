"""Render run results as Markdown for humans or JSON for machines."""
from __future__ import annotations

import json

from .model import BloatFinding, EditPlan, ImportKind


def render_report(
    findings: list[BloatFinding],
    plan: EditPlan,
    fmt: str,
    project: str,
    provenance: dict[str, str] | None = None,
    warnings: list[str] | None = None,
) -> str:
    if fmt == "json":
        return _render_json(findings, plan, project, provenance, warnings or [])
    return _render_markdown(findings, plan, project, provenance, warnings or [])


def _provenance_of(finding: BloatFinding, provenance: dict[str, str] | None) -> str:
    if not provenance:
        return "static"
    return provenance.get(finding.package.normalized, "static")


def _render_markdown(findings, plan, project, provenance, warnings) -> str:
    lines: list[str] = [f"# Dependency trim report: {project}", ""]
    ordered = sorted(findings, key=lambda f: f.package.normalized)
    if not ordered:
        lines += ["No unused dependencies found.", ""]
    else:
        names = ", ".join(f"`{f.package.normalized}`" for f in ordered)
        plural = "dependency" if len(ordered) == 1 else "dependencies"
        lines += [f"Found {len(ordered)} unused {plural}: {names}.", ""]

    flags_by_pkg: dict[str, list] = {}
    unowned_flags = []
    for flag in plan.manual_flags:
        if flag.package is not None:
            flags_by_pkg.setdefault(flag.package.normalized, []).append(flag)
        else:
            unowned_flags.append(flag)

    edits_by_pkg: dict[str, list[str]] = {}
    for edit in plan.file_edits:
        for pkg in edit.removed_packages:
            edits_by_pkg.setdefault(pkg.normalized, []).append(edit.file_path)

    for finding in ordered:
        key = finding.package.normalized
        lines.append(f"## {key}")
        lines.append("")
        lines.append(f"- detector: `{finding.detector_id}`")
        lines.append(f"- resolver provenance: {_provenance_of(finding, provenance)}")
        if finding.report_only:
            lines.append("- report-only: no removable declaration was found")
        declared = sorted(finding.declared_at, key=lambda l: (l.file_path, l.line))
        if declared:
            lines.append("- declarations removed:")
            for loc in declared:
                suffix = f" ({loc.detail})" if loc.detail else ""
                lines.append(f"  - `{loc}`{suffix}")
        import_sites = sorted(
            (b for b in finding.import_sites if b.kind in (ImportKind.PLAIN, ImportKind.FROM_IMPORT)),
            key=lambda b: (b.location.file_path, b.location.line),
        )
        if import_sites:
            lines.append("- imports removed:")
            for binding in import_sites:
                lines.append(f"  - `{binding.location}` (`{binding.module_path}`)")
        for flag in sorted(
            flags_by_pkg.get(key, []), key=lambda f: (f.location.file_path, f.location.line)
        ):
            lines.append(f"- manual review: `{flag.location}`: {flag.reason}")
        lines.append("")

    if unowned_flags:
        lines.append("## Other manual-review flags")
        lines.append("")
        for flag in unowned_flags:
            lines.append(f"- `{flag.location}`: {flag.reason}")
        lines.append("")

    if plan.lockfile_warnings:
        lines.append("## Lock file warnings")
        lines.append("")
        for warning in plan.lockfile_warnings:
            lines.append(f"- {warning}")
        lines.append("")

    if warnings:
        lines.append("## Resolution warnings")
        lines.append("")
        for warning in warnings:
            lines.append(f"- {warning}")
        lines.append("")

    if plan.file_edits:
        lines.append("## Edited files")
        lines.append("")
        for edit in plan.file_edits:
            removed = ", ".join(sorted(p.normalized for p in edit.removed_packages))
            lines.append(f"- `{edit.file_path}` (removed: {removed})")
        lines.append("")

    return "\n".join(lines)


def _render_json(findings, plan, project, provenance, warnings) -> str:
    payload = {
        "version": 1,
        "project": project,
        "findings": [
            {
                "package": f.package.normalized,
                "detector": f.detector_id,
                "report_only": f.report_only,
                "provenance": _provenance_of(f, provenance),
                "declared_at": [
                    {"file": loc.file_path, "line": loc.line, "detail": loc.detail}
                    for loc in sorted(f.declared_at, key=lambda l: (l.file_path, l.line))
                ],
                "import_sites": [
                    {
                        "file": b.location.file_path,
                        "line": b.location.line,
                        "kind": b.kind.value,
                        "module": b.module_path,
                    }
                    for b in sorted(
                        f.import_sites, key=lambda b: (b.location.file_path, b.location.line)
                    )
                ],
            }
            for f in sorted(findings, key=lambda f: f.package.normalized)
        ],
        "edits": [
            {
                "file": edit.file_path,
                "kind": edit.file_kind.value,
                "removed_packages": sorted(p.normalized for p in edit.removed_packages),
            }
            for edit in plan.file_edits
        ],
        "flags": [
            {
                "file": flag.location.file_path,
                "line": flag.location.line,
                "reason": flag.reason,
                "package": flag.package.normalized if flag.package else None,
            }
            for flag in plan.manual_flags
        ],
        "warnings": list(plan.lockfile_warnings) + list(warnings),
    }
    return json.dumps(payload, indent=2) + "\n"
