"""End-to-end orchestration: resolve, detect, plan, apply/report."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .detector import DetectorInput, detect_unused, load_external_findings, scan_imports
from .dynamic_resolver import DEFAULT_INSTALL_TIMEOUT, ResolvedDependencies, resolve_dependencies
from .errors import UsageError
from .model import BloatFinding, EditPlan
from .remover import EditMode, RemovalContext, apply_edits, plan_removal
from .reporting import render_report
from .static_resolver import StaticIndex, build_static_index, discover_source_files
from .vcs import CommitRef, create_branch_commit

log = logging.getLogger(__name__)


@dataclass
class PipelineConfig:
    project_root: Path
    remove: list[str] | None = None  # removal-only mode when not None
    use_dynamic: bool = True
    installer: str | None = None
    timeout: float = DEFAULT_INSTALL_TIMEOUT
    excludes: tuple[str, ...] = ()
    write: bool = False
    branch: str | None = None  # None = no VCS step; "" = auto-named branch
    report_format: str | None = None


@dataclass
class PipelineResult:
    project_root: Path
    findings: list[BloatFinding]
    plan: EditPlan
    diffs: list[str]
    resolution: ResolvedDependencies
    static_index: StaticIndex
    report: str | None = None
    commit: CommitRef | None = None
    warnings: list[str] = field(default_factory=list)


def run_pipeline(config: PipelineConfig) -> PipelineResult:
    root = Path(config.project_root)
    if not root.is_dir():
        raise UsageError(f"project path is not a directory: {root}")

    index = build_static_index(root, config.excludes)

    # Removal-only mode needs declaration locations, not an install; skipping
    # the isolated install keeps it fast over large batches.
    use_dynamic = config.use_dynamic and config.remove is None
    resolution = resolve_dependencies(
        index,
        use_dynamic=use_dynamic,
        installer=config.installer,
        timeout=config.timeout,
    )

    source_files = discover_source_files(root, config.excludes)
    bindings = scan_imports(source_files, root)

    if config.remove is not None:
        findings = load_external_findings(
            config.remove, index, bindings=bindings, dist_records=resolution.dist_records
        )
    else:
        dependencies = {
            key: index.declarations.get(key, []) for key in resolution.provenance
        }
        findings = detect_unused(
            DetectorInput(
                dependencies=dependencies,
                names=resolution.names,
                dist_records=resolution.dist_records,
                source_files=source_files,
            )
        )

    ctx = RemovalContext(
        project_root=root,
        dist_records=resolution.dist_records,
        lockfiles=tuple(index.lockfiles),
        unmodifiable=tuple(index.unmodifiable),
        bindings=tuple(bindings),
    )
    plan = plan_removal(ctx, findings)
    warnings = list(index.warnings) + list(resolution.warnings)

    diffs = apply_edits(root, plan, EditMode.DRY_RUN)
    commit = None
    if config.branch is not None and plan.file_edits:
        body = render_report(
            findings, plan, "md", project=root.name,
            provenance=resolution.provenance, warnings=warnings,
        )
        commit = create_branch_commit(
            root, plan, branch=config.branch or None, report_markdown=body
        )
    elif config.write:
        apply_edits(root, plan, EditMode.WRITE)

    report = None
    if config.report_format:
        report = render_report(
            findings, plan, config.report_format, project=root.name,
            provenance=resolution.provenance, warnings=warnings,
        )

    return PipelineResult(
        project_root=root,
        findings=findings,
        plan=plan,
        diffs=diffs,
        resolution=resolution,
        static_index=index,
        report=report,
        commit=commit,
        warnings=warnings,
    )
