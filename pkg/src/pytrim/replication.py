"""Replication harness: measure how well removal-only runs reproduce human edits.

Each case is a directory with `pre/` (tree before the human change), `post/`
(tree after), and `case.json` naming the removed packages plus files excluded
from grading (documentation edits and similar).  The harness runs the
pipeline on a copy of `pre` and compares every ground-truth-changed file
against `post`, ignoring non-semantic differences such as whitespace and
comments.
"""
from __future__ import annotations

import argparse
import configparser
import difflib
import io
import json
import logging
import shutil
import sys
import tempfile
import tokenize
from dataclasses import dataclass, field
from pathlib import Path

import yaml

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .errors import CaseSetupError, EmptyNameError, MalformedRequirementError
from .model import parse_requirement_line
from .pipeline import PipelineConfig, run_pipeline
from .static_resolver import decode_project_bytes, iter_logical_lines

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReplicationCase:
    case_id: str
    pre_tree: Path
    post_tree: Path
    removed_packages: tuple[str, ...]
    excluded_files: tuple[str, ...] = ()


@dataclass
class ReplicationResult:
    case_id: str
    changed_files: int = 0  # ground-truth changed files, before exclusion
    excluded_count: int = 0
    relevant_files: int = 0
    matched: int = 0
    mismatched: list[tuple[str, str]] = field(default_factory=list)

    @property
    def accuracy(self) -> float | None:
        if self.relevant_files == 0:
            return None
        return self.matched / self.relevant_files


def load_case(case_dir: Path) -> ReplicationCase:
    case_dir = Path(case_dir)
    pre, post, meta = case_dir / "pre", case_dir / "post", case_dir / "case.json"
    if not pre.is_dir() or not post.is_dir():
        raise CaseSetupError(f"{case_dir.name}: needs pre/ and post/ directories")
    if not meta.is_file():
        raise CaseSetupError(f"{case_dir.name}: missing case.json")
    try:
        data = json.loads(meta.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CaseSetupError(f"{case_dir.name}: unreadable case.json: {exc}") from exc
    removed = tuple(data.get("removed", ()))
    if not removed:
        raise CaseSetupError(f"{case_dir.name}: case.json lists no removed packages")
    return ReplicationCase(
        case_id=case_dir.name,
        pre_tree=pre,
        post_tree=post,
        removed_packages=removed,
        excluded_files=tuple(data.get("excluded", ())),
    )


def discover_cases(cases_root: Path) -> list[ReplicationCase]:
    cases_root = Path(cases_root)
    if not cases_root.is_dir():
        raise CaseSetupError(f"not a directory: {cases_root}")
    cases = []
    for child in sorted(cases_root.iterdir()):
        if child.is_dir() and (child / "case.json").is_file():
            cases.append(load_case(child))
    return cases


def _tree_files(root: Path) -> dict[str, bytes]:
    return {
        path.relative_to(root).as_posix(): path.read_bytes()
        for path in sorted(root.rglob("*"))
        if path.is_file()
    }


def replicate(case: ReplicationCase, work_root: Path | None = None) -> ReplicationResult:
    """Run removal-only mode on a copy of pre/ and grade it against post/."""
    own_work = work_root is None
    work_parent = Path(tempfile.mkdtemp(prefix="pytrim-case-")) if own_work else Path(work_root)
    work = work_parent / case.case_id
    try:
        shutil.copytree(case.pre_tree, work)
        run_pipeline(
            PipelineConfig(
                project_root=work,
                remove=list(case.removed_packages),
                use_dynamic=False,
                write=True,
            )
        )

        pre_files = _tree_files(case.pre_tree)
        post_files = _tree_files(case.post_tree)
        work_files = _tree_files(work)

        changed = sorted(
            rel
            for rel in set(pre_files) | set(post_files)
            if pre_files.get(rel) != post_files.get(rel)
        )
        result = ReplicationResult(case_id=case.case_id, changed_files=len(changed))
        excluded = set(case.excluded_files)
        for rel in changed:
            if rel in excluded:
                result.excluded_count += 1
                continue
            result.relevant_files += 1
            ours, theirs = work_files.get(rel), post_files.get(rel)
            if _bytes_semantically_equal(ours, theirs, rel):
                result.matched += 1
            else:
                result.mismatched.append((rel, _mismatch_diff(ours, theirs, rel)))
        return result
    finally:
        if own_work:
            shutil.rmtree(work_parent, ignore_errors=True)


def _mismatch_diff(ours: bytes | None, theirs: bytes | None, rel: str) -> str:
    our_lines = decode_project_bytes(ours or b"", rel)[0].splitlines(keepends=True)
    their_lines = decode_project_bytes(theirs or b"", rel)[0].splitlines(keepends=True)
    return "".join(
        difflib.unified_diff(our_lines, their_lines, fromfile=f"ours/{rel}", tofile=f"theirs/{rel}")
    )


def _bytes_semantically_equal(a: bytes | None, b: bytes | None, rel: str) -> bool:
    if a is None or b is None:
        return a == b
    a_text = decode_project_bytes(a, rel)[0]
    b_text = decode_project_bytes(b, rel)[0]
    return semantic_equal(a_text, b_text, rel)


def semantic_equal(a_text: str, b_text: str, rel_path: str) -> bool:
    """Format-aware comparison ignoring whitespace and comments; symmetric."""
    name = rel_path.rsplit("/", 1)[-1].lower()
    if name.endswith(".toml"):
        return _try(_toml_view, a_text) == _try(_toml_view, b_text)
    if name.endswith(".cfg") or name.endswith(".ini"):
        return _try(_ini_view, a_text) == _try(_ini_view, b_text)
    if name.endswith(".py"):
        return _try(_token_view, a_text) == _try(_token_view, b_text)
    if name.endswith(".yml") or name.endswith(".yaml"):
        return _try(_yaml_view, a_text) == _try(_yaml_view, b_text)
    if name.endswith(".txt") or name.endswith(".in"):
        return _requirements_view(a_text) == _requirements_view(b_text)
    return _plain_view(a_text) == _plain_view(b_text)


def _try(view, text):
    try:
        return view(text)
    except Exception:
        return ("unparsed", _plain_view(text))


def _requirements_view(text: str):
    entries = []
    for logical in iter_logical_lines(text):
        stripped = logical.text.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("-"):
            entries.append(("option", " ".join(stripped.split())))
            continue
        try:
            spec = parse_requirement_line(logical.text)
        except (MalformedRequirementError, EmptyNameError):
            entries.append(("raw", " ".join(stripped.split())))
            continue
        if spec is None:
            continue
        entries.append(
            (
                spec.name.normalized,
                tuple(sorted(spec.extras)),
                "".join(spec.version_constraint.split()),
                "".join(spec.marker.split()) if spec.marker else "",
            )
        )
    return entries


def _toml_view(text: str):
    return tomllib.loads(text)


def _ini_view(text: str):
    parser = configparser.ConfigParser()
    parser.read_string(text)
    return {
        section: {
            key: tuple(line.strip() for line in value.splitlines() if line.strip())
            for key, value in parser.items(section)
        }
        for section in parser.sections()
    }


def _token_view(text: str):
    tokens = []
    for tok in tokenize.generate_tokens(io.StringIO(text).readline):
        if tok.type in (tokenize.COMMENT, tokenize.NL, tokenize.ENCODING):
            continue
        tokens.append((tok.type, tok.string))
    return tokens


def _yaml_view(text: str):
    return yaml.safe_load(text)


def _plain_view(text: str):
    return [" ".join(line.split()) for line in text.splitlines() if line.strip()]


def summarize(results: list[ReplicationResult], fmt: str = "md") -> str:
    """Aggregate results into the replication-accuracy summary table."""
    totals = {
        "cases": len(results),
        "changed": sum(r.changed_files for r in results),
        "excluded": sum(r.excluded_count for r in results),
        "relevant": sum(r.relevant_files for r in results),
        "matched": sum(r.matched for r in results),
    }
    totals["mismatched"] = totals["relevant"] - totals["matched"]
    accuracy = totals["matched"] / totals["relevant"] if totals["relevant"] else None
    accuracy_text = f"{accuracy * 100:.2f}%" if accuracy is not None else "N/A"

    if fmt == "json":
        payload = {
            "cases": [
                {
                    "case_id": r.case_id,
                    "changed_files": r.changed_files,
                    "excluded": r.excluded_count,
                    "relevant_files": r.relevant_files,
                    "matched": r.matched,
                    "mismatched": [rel for rel, _ in r.mismatched],
                    "accuracy": r.accuracy,
                }
                for r in results
            ],
            "totals": {**totals, "accuracy": accuracy},
        }
        return json.dumps(payload, indent=2) + "\n"

    rows = [
        ("Total Cases Analyzed", str(totals["cases"])),
        ("Total Files with Dependency Changes", str(totals["changed"])),
        ("Files Excluded (e.g., Documentation)", str(totals["excluded"])),
        ("Relevant Files for Comparison", str(totals["relevant"])),
        ("Files Correctly Replicated", str(totals["matched"])),
        ("Files with Mismatched Output", str(totals["mismatched"])),
        ("Replication Accuracy", accuracy_text),
    ]
    lines = ["| Metric | Value |", "| --- | --- |"]
    lines += [f"| {metric} | {value} |" for metric, value in rows]
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="pytrim-replicate",
        description="Grade removal-only runs against human-made ground truth.",
    )
    parser.add_argument("cases", help="directory of case subdirectories")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    args = parser.parse_args(argv)

    try:
        cases = discover_cases(Path(args.cases))
    except CaseSetupError as exc:
        print(f"pytrim-replicate: error: {exc}", file=sys.stderr)
        return 2
    if not cases:
        print("pytrim-replicate: no cases found", file=sys.stderr)
        return 2

    results = []
    for case in cases:
        try:
            results.append(replicate(case))
        except CaseSetupError as exc:
            print(f"pytrim-replicate: case {case.case_id} failed: {exc}", file=sys.stderr)
            return 2

    sys.stdout.write(summarize(results, fmt="json" if args.json else "md"))
    for result in results:
        for rel, diff in result.mismatched:
            print(f"\nmismatch in {result.case_id}: {rel}", file=sys.stderr)
            sys.stderr.write(diff)

    all_matched = all(r.matched == r.relevant_files for r in results)
    return 0 if all_matched else 1


if __name__ == "__main__":
    sys.exit(main())
