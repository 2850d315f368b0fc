"""Command-line entry point.

Exit codes: 0 = no unused dependencies, 1 = unused dependencies found (or
removed), 2 = usage/configuration error, 3 = internal error.  Dry run is the
default; nothing touches the tree without --write or --branch.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import PytrimError, UsageError
from .pipeline import PipelineConfig, PipelineResult, run_pipeline

log = logging.getLogger("pytrim")

EXIT_CLEAN = 0
EXIT_FOUND = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pytrim",
        description="Detect unused dependencies and trim their declarations and imports.",
    )
    parser.add_argument("project", help="path to the project to analyze")
    parser.add_argument(
        "--remove",
        action="append",
        metavar="NAMES",
        help="comma-separated packages to remove, bypassing detection (repeatable)",
    )
    parser.add_argument(
        "--remove-file",
        metavar="PATH",
        help="newline-delimited file of packages to remove, bypassing detection",
    )
    parser.add_argument("--write", action="store_true", help="apply edits to disk")
    parser.add_argument(
        "--report", choices=("md", "json"), help="print a report instead of raw diffs"
    )
    parser.add_argument(
        "--branch",
        nargs="?",
        const="",
        default=None,
        metavar="NAME",
        help="apply edits on a new VCS branch and commit (optional branch name)",
    )
    parser.add_argument(
        "--no-dynamic", action="store_true", help="skip the isolated-install resolver"
    )
    parser.add_argument(
        "--installer",
        default=None,
        metavar="NAME",
        help="installer executable (default: $PYTRIM_INSTALLER or pip)",
    )
    parser.add_argument(
        "--timeout", type=float, default=600.0, metavar="SECONDS",
        help="isolated-install timeout (default 600)",
    )
    parser.add_argument(
        "--exclude",
        action="append",
        default=[],
        metavar="GLOB",
        help="exclude paths matching this glob from discovery and scanning (repeatable)",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="verbose logs on stderr")
    return parser


def _collect_remove_list(args) -> list[str] | None:
    if args.remove is None and args.remove_file is None:
        return None
    names: list[str] = []
    for chunk in args.remove or []:
        names.extend(part.strip() for part in chunk.split(",") if part.strip())
    if args.remove_file is not None:
        path = Path(args.remove_file)
        if not path.is_file():
            raise UsageError(f"--remove-file does not exist: {path}")
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                names.append(line)
    if not names:
        raise UsageError("no package names supplied to --remove/--remove-file")
    return names


def _config_from_args(args) -> PipelineConfig:
    project = Path(args.project)
    if not project.is_dir():
        raise UsageError(f"project path is not a directory: {project}")
    return PipelineConfig(
        project_root=project,
        remove=_collect_remove_list(args),
        use_dynamic=not args.no_dynamic,
        installer=args.installer,
        timeout=args.timeout,
        excludes=tuple(args.exclude),
        write=args.write,
        branch=args.branch,
        report_format=args.report,
    )


def _emit(result: PipelineResult, args) -> None:
    if args.report:
        sys.stdout.write(result.report)
    else:
        for diff in result.diffs:
            sys.stdout.write(diff)

    for warning in result.warnings:
        log.warning("%s", warning)
    for flag in result.plan.manual_flags:
        log.warning("manual review: %s: %s", flag.location, flag.reason)
    for warning in result.plan.lockfile_warnings:
        log.warning("%s", warning)

    if result.commit is not None:
        log.warning(
            "created branch %s (commit %s); PR title: %s; body: %s",
            result.commit.branch,
            result.commit.commit_id[:12],
            result.commit.pr_title,
            result.commit.pr_body_path,
        )
    if not result.findings:
        print("pytrim: no unused dependencies found", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="pytrim: %(levelname)s: %(message)s",
    )
    try:
        config = _config_from_args(args)
        result = run_pipeline(config)
    except UsageError as exc:
        print(f"pytrim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PytrimError as exc:
        print(f"pytrim: failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - last-resort guard for exit code 3
        print(f"pytrim: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    _emit(result, args)
    return EXIT_FOUND if result.findings else EXIT_CLEAN


if __name__ == "__main__":
    sys.exit(main())
