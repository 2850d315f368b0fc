"""Branch/commit automation and pull-request artifact generation.

Everything runs through the `git` CLI as a subprocess.  Pushing and opening
the pull request on a forge stay with the operator; this module produces the
branch, the commit, and a ready-to-paste title/body file.
"""
from __future__ import annotations

import logging
import subprocess
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from .errors import DirtyWorktreeError, NotARepoError, VcsCommandError
from .model import EditPlan
from .remover import EditMode, apply_edits

log = logging.getLogger(__name__)

PR_BODY_RELPATH = Path(".pytrim") / "pr_body.md"


@dataclass(frozen=True)
class CommitRef:
    branch: str
    commit_id: str
    pr_title: str
    pr_body_path: str


def _git(root: Path, *args: str) -> str:
    try:
        proc = subprocess.run(
            ["git", *args], cwd=root, capture_output=True, text=True
        )
    except FileNotFoundError as exc:
        raise VcsCommandError("git executable not found") from exc
    if proc.returncode != 0:
        raise VcsCommandError(
            f"git {' '.join(args)} failed: {proc.stderr.strip() or proc.stdout.strip()}"
        )
    return proc.stdout


def default_branch_name(plan: EditPlan) -> str:
    names = sorted({p.normalized for e in plan.file_edits for p in e.removed_packages})
    if len(names) > 3:
        joined = "-".join(names[:3]) + f"-and-{len(names) - 3}-more"
    else:
        joined = "-".join(names) or "none"
    return f"pytrim/remove-{joined}-{date.today():%Y%m%d}"


def create_branch_commit(
    project_root: Path,
    plan: EditPlan,
    branch: str | None = None,
    message: str | None = None,
    report_markdown: str | None = None,
) -> CommitRef | None:
    """Create a branch, apply the plan, stage exactly its files, and commit.

    Returns None for an empty plan.  On any failure the original branch and
    worktree are restored before the error propagates.
    """
    if not plan.file_edits:
        return None
    project_root = Path(project_root)

    try:
        inside = _git(project_root, "rev-parse", "--is-inside-work-tree").strip()
    except VcsCommandError as exc:
        raise NotARepoError(f"{project_root} is not a git working tree") from exc
    if inside != "true":
        raise NotARepoError(f"{project_root} is not a git working tree")

    affected = [edit.file_path for edit in plan.file_edits]
    status = _git(project_root, "status", "--porcelain", "--", *affected).strip()
    if status:
        raise DirtyWorktreeError(
            "affected files have uncommitted changes:\n" + status
        )

    original_branch = _git(project_root, "rev-parse", "--abbrev-ref", "HEAD").strip()
    names = sorted({p.raw for e in plan.file_edits for p in e.removed_packages})
    pr_title = f"Remove unused dependencies: {', '.join(names)}"
    branch = branch or default_branch_name(plan)
    message = message if message is not None else pr_title

    _git(project_root, "checkout", "-b", branch)
    try:
        apply_edits(project_root, plan, EditMode.WRITE)
        _git(project_root, "add", "--", *affected)
        _git(project_root, "commit", "-m", message)
        commit_id = _git(project_root, "rev-parse", "HEAD").strip()
    except Exception:
        # restore the pre-call state: branch switch + pristine worktree
        try:
            _git(project_root, "checkout", "-f", original_branch)
            _git(project_root, "branch", "-D", branch)
        except VcsCommandError as cleanup_exc:
            log.warning("cleanup after failed commit also failed: %s", cleanup_exc)
        raise

    body_path = project_root / PR_BODY_RELPATH
    body_path.parent.mkdir(parents=True, exist_ok=True)
    body = report_markdown if report_markdown is not None else f"# {pr_title}\n"
    body_path.write_text(body, encoding="utf-8")

    return CommitRef(
        branch=branch,
        commit_id=commit_id,
        pr_title=pr_title,
        pr_body_path=str(PR_BODY_RELPATH),
    )
