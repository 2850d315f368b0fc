"""Tests for format-preserving removal of declarations and imports."""

import ast
import configparser
import textwrap

import pytest
import yaml

try:
    import tomllib
except ImportError:
    import tomli as tomllib

from pytrim.errors import StaleFileError, UnsupportedEditError
from pytrim.model import EditPlan, FileEdit, FileKind, normalize_name
from pytrim.remover import (
    EditMode,
    RemovalContext,
    apply_edits,
    check_lockfile_sync,
    flag_unmodifiable_mentions,
    plan_removal,
    remove_from_environment_yaml,
    remove_from_requirements,
    remove_from_setup_cfg,
    remove_from_setup_py,
    remove_from_toml,
    remove_imports_from_source,
)
from pytrim.detector import load_external_findings, scan_imports
from pytrim.static_resolver import (
    build_static_index,
    discover_source_files,
    parse_requirements_file,
    parse_setup_cfg,
    parse_setup_py_static,
)

PKG = normalize_name("prettytable")


def surviving_requirement_lines(content: str, pkg) -> list[str]:
    """Oracle: the logical lines whose parsed name differs from pkg."""
    keep = []
    for spec in parse_requirements_file(content, "x.txt"):
        if spec.name != pkg:
            keep.append(spec.name.normalized)
    return keep


class TestRemoveFromRequirements:
    CONTENT = "prettytable\nclick>=8.0.4\nrich==14.0.0\n"

    def test_other_lines_byte_identical(self):
        out = remove_from_requirements(self.CONTENT, PKG)
        assert out == "click>=8.0.4\nrich==14.0.0\n"
        assert surviving_requirement_lines(self.CONTENT, PKG) == ["click", "rich"]
        assert [s.name.normalized for s in parse_requirements_file(out, "x")] == ["click", "rich"]

    def test_absent_package_unchanged(self):
        assert remove_from_requirements(self.CONTENT, normalize_name("numpy")) == self.CONTENT

    def test_extras_and_trailing_comment_line_fully_removed(self):
        content = "pkg[extra]==1.0  # pinned\nother\n"
        out = remove_from_requirements(content, normalize_name("pkg"))
        assert out == "other\n"

    def test_continuation_lines_removed_together(self):
        content = "prettytable \\\n    ==3.9\nrich\n"
        out = remove_from_requirements(content, PKG)
        assert out == "rich\n"

    def test_comments_options_blanks_preserved(self):
        content = "# tools\n\n-r base.txt\nprettytable\nrich  # keep me\n"
        out = remove_from_requirements(content, PKG)
        assert out == "# tools\n\n-r base.txt\nrich  # keep me\n"

    def test_crlf_preserved(self):
        content = "prettytable\r\nrich\r\n"
        out = remove_from_requirements(content, PKG)
        assert out == "rich\r\n"

    def test_no_final_newline_preserved(self):
        content = "prettytable\nrich"
        assert remove_from_requirements(content, PKG) == "rich"

    def test_case_variant_matches(self):
        out = remove_from_requirements("PrettyTable==3.0\nrich\n", PKG)
        assert out == "rich\n"


class TestRemoveFromToml:
    CONTENT = textwrap.dedent(
        """\
        [project]
        name = "demo"
        dependencies = [
            "click>=8.0",
            "prettytable",  # tables
            "rich==14.0.0",
        ]

        [project.optional-dependencies]
        dev = ["pytest", "prettytable"]
        solo = [
            "prettytable",
        ]

        [tool.poetry.dependencies]
        prettytable = "^3.0"
        rich = "^14.0"
        """
    )

    def test_semantic_minus_oracle(self):
        out = remove_from_toml(self.CONTENT, PKG)
        original = tomllib.loads(self.CONTENT)
        edited = tomllib.loads(out)
        # oracle: parse(original) minus removed entries == parse(new)
        assert edited["project"]["dependencies"] == [
            d for d in original["project"]["dependencies"] if "prettytable" not in d
        ]
        assert edited["project"]["optional-dependencies"]["dev"] == ["pytest"]
        assert "solo" not in edited["project"]["optional-dependencies"]  # emptied group key dropped
        assert "prettytable" not in edited["tool"]["poetry"]["dependencies"]
        assert edited["tool"]["poetry"]["dependencies"]["rich"] == "^14.0"

    def test_untouched_lines_byte_identical(self):
        out = remove_from_toml(self.CONTENT, PKG)
        # lines owned by removed entries: the prettytable lines themselves plus
        # the emptied `solo` group whose key is dropped whole
        solo_block = {"solo = [", "]"}
        survivors = [
            line
            for line in self.CONTENT.splitlines()
            if "prettytable" not in line and line not in solo_block
        ]
        out_lines = out.splitlines()
        for line in survivors:
            assert line in out_lines

    def test_absent_package_unchanged(self):
        assert remove_from_toml(self.CONTENT, normalize_name("numpy")) == self.CONTENT

    def test_inline_array_keeps_style(self):
        content = 'deps = ["alpha", "beta", "gamma"]\n[project]\ndependencies = ["alpha", "beta", "gamma"]\n'
        out = remove_from_toml(content, normalize_name("beta"))
        assert 'dependencies = ["alpha", "gamma"]' in out
        assert 'deps = ["alpha", "beta", "gamma"]' in out  # unrelated arrays untouched

    def test_dependencies_key_keeps_empty_literal(self):
        content = '[project]\ndependencies = ["only"]\n'
        out = remove_from_toml(content, normalize_name("only"))
        assert tomllib.loads(out)["project"]["dependencies"] == []

    def test_result_parses(self):
        out = remove_from_toml(self.CONTENT, PKG)
        tomllib.loads(out)  # must not raise


class TestRemoveFromSetupCfg:
    CONTENT = textwrap.dedent(
        """\
        [metadata]
        name = demo

        [options]
        install_requires =
            click>=8.0
            prettytable
            rich==14.0.0

        [options.extras_require]
        dev =
            pytest
        solo =
            prettytable
        """
    )

    def test_one_line_deleted(self):
        out = remove_from_setup_cfg(self.CONTENT, PKG)
        specs, _ = parse_setup_cfg(out, "setup.cfg")
        names = {s.name.normalized for s in specs}
        assert "prettytable" not in names
        assert {"click", "rich", "pytest"} <= names
        # non-interference: all other lines intact
        for line in self.CONTENT.splitlines():
            if "prettytable" not in line and line != "solo =":
                assert line in out.splitlines()

    def test_absent_unchanged(self):
        assert remove_from_setup_cfg(self.CONTENT, normalize_name("numpy")) == self.CONTENT

    def test_sole_entry_removes_key_line(self):
        content = "[options]\ninstall_requires =\n    prettytable\n"
        out = remove_from_setup_cfg(content, PKG)
        parser = configparser.ConfigParser()
        parser.read_string(out)
        assert not parser.has_option("options", "install_requires")

    def test_emptied_extras_group_key_removed(self):
        out = remove_from_setup_cfg(self.CONTENT, PKG)
        parser = configparser.ConfigParser()
        parser.read_string(out)
        assert not parser.has_option("options.extras_require", "solo")
        assert parser.get("options.extras_require", "dev").strip() == "pytest"

    def test_inline_value(self):
        content = "[options]\ninstall_requires = prettytable\n"
        out = remove_from_setup_cfg(content, PKG)
        parser = configparser.ConfigParser()
        parser.read_string(out)
        assert not parser.has_option("options", "install_requires")

    def test_result_reparses(self):
        configparser.ConfigParser().read_string(remove_from_setup_cfg(self.CONTENT, PKG))


SETUP_PY = textwrap.dedent(
    """\
    from setuptools import setup

    install_requires = [
        'click>=8.0.4',
        'prettytable',
        'rich==14.0.0',
    ]

    setup(
        name='demo',
        version='1.0',
        install_requires=install_requires,
        extras_require={'cli': ['prettytable', 'typer']},
    )
    """
)


class TestRemoveFromSetupPy:
    def test_own_line_element_deleted_others_byte_identical(self):
        out = remove_from_setup_py(SETUP_PY, PKG)
        specs, dynamic, _ = parse_setup_py_static(out, "setup.py")
        assert not dynamic
        assert "prettytable" not in {s.name.normalized for s in specs}
        for line in SETUP_PY.splitlines():
            if "prettytable" not in line:
                assert line in out.splitlines()

    def test_absent_unchanged(self):
        assert remove_from_setup_py(SETUP_PY, normalize_name("numpy")) == SETUP_PY

    def test_inline_element_comma_spliced(self):
        out = remove_from_setup_py(SETUP_PY, PKG)
        assert "extras_require={'cli': ['typer']}," in out

    def test_result_parses(self):
        ast.parse(remove_from_setup_py(SETUP_PY, PKG))

    def test_dynamic_construct_not_edited(self):
        content = "from setuptools import setup\nREQS = open('r.txt').read().split()\nsetup(name='x', install_requires=REQS)\n"
        with pytest.raises(UnsupportedEditError):
            remove_from_setup_py(content, PKG)

    def test_emptied_list_keeps_literal(self):
        content = "from setuptools import D, setup\nsetup(name='x', install_requires=['prettytable'])\n"
        out = remove_from_setup_py(content, PKG)
        assert "install_requires=[]" in out
        ast.parse(out)


class TestRemoveImportsFromSource:
    def test_plain_import_removed(self):
        out = remove_imports_from_source("import prettytable\nimport os\n", {"prettytable"})
        assert out == "import os\n"
        assert all(b.top_level != "prettytable" for b in _bindings(out))

    def test_no_match_unchanged(self):
        content = "import os\n\nprint(os.name)\n"
        assert remove_imports_from_source(content, {"prettytable"}) == content

    def test_multi_target_rewritten(self):
        out = remove_imports_from_source("import prettytable, os\n", {"prettytable"})
        assert out == "import os\n"

    def test_multi_target_with_alias_preserved(self):
        out = remove_imports_from_source("import prettytable, numpy as np\n", {"prettytable"})
        assert out == "import numpy as np\n"

    def test_from_import_removed(self):
        out = remove_imports_from_source("from prettytable import PrettyTable\nx = 1\n", {"prettytable"})
        assert out == "x = 1\n"

    def test_emptied_try_body_gets_pass(self):
        content = "try:\n    import prettytable\nexcept ImportError:\n    prettytable = None\n"
        out = remove_imports_from_source(content, {"prettytable"})
        ast.parse(out)
        assert "pass" in out
        assert "import prettytable" not in out

    def test_indented_import_preserves_indent(self):
        content = "def load():\n    import prettytable, json\n    return json\n"
        out = remove_imports_from_source(content, {"prettytable"})
        assert "    import json\n" in out
        ast.parse(out)

    def test_dynamic_literal_not_edited(self):
        content = 'import importlib\nmod = importlib.import_module("prettytable")\n'
        assert remove_imports_from_source(content, {"prettytable"}) == content

    def test_relative_import_untouched(self):
        content = "from . import prettytable\n"
        assert remove_imports_from_source(content, {"prettytable"}) == content

    def test_dotted_submodule_import_removed(self):
        out = remove_imports_from_source("import prettytable.colortable\nimport os\n", {"prettytable"})
        assert out == "import os\n"

    def test_parenthesized_from_import_removed(self):
        content = "from prettytable import (\n    PrettyTable,\n    ALL,\n)\nx = 1\n"
        out = remove_imports_from_source(content, {"prettytable"})
        assert out == "x = 1\n"


def _bindings(content: str):
    import ast as _ast

    from pytrim.detector import _scan_tree

    return _scan_tree(_ast.parse(content), "mem.py")


class TestRemoveFromEnvironmentYaml:
    CONTENT = textwrap.dedent(
        """\
        name: demo
        channels:
          - conda-forge
        dependencies:
          - python=3.10
          - prettytable=3.9
          - numpy
          - pip:
            - prettytable==3.9.0
            - requests
        """
    )

    def test_items_removed_and_result_parses(self):
        out = remove_from_environment_yaml(self.CONTENT, PKG)
        data = yaml.safe_load(out)
        entries = [d for d in data["dependencies"] if isinstance(d, str)]
        assert all("prettytable" not in e for e in entries)
        pip_block = [d for d in data["dependencies"] if isinstance(d, dict)][0]
        assert pip_block["pip"] == ["requests"]

    def test_absent_unchanged(self):
        assert remove_from_environment_yaml(self.CONTENT, normalize_name("numpy2")) == self.CONTENT

    def test_emptied_pip_block_removed(self):
        content = "dependencies:\n  - numpy\n  - pip:\n    - prettytable\n"
        out = remove_from_environment_yaml(content, PKG)
        data = yaml.safe_load(out)
        assert data["dependencies"] == ["numpy"]

    def test_anchors_refused(self):
        content = "dependencies: &deps\n  - prettytable\n"
        with pytest.raises(UnsupportedEditError):
            remove_from_environment_yaml(content, PKG)


@pytest.fixture
def multi_file_project(tmp_path):
    (tmp_path / "setup.py").write_text(SETUP_PY)
    (tmp_path / "requirements.txt").write_text("prettytable\nrich==14.0.0\n")
    tools = tmp_path / "tools"
    tools.mkdir()
    (tools / "requirements.txt").write_text("prettytable\n")
    docs = tmp_path / "docs"
    docs.mkdir()
    (docs / "requirements.txt").write_text("prettytable\nsphinx\n")
    (tmp_path / "README.rst").write_text("Demo\n====\n\nUses prettytable for tables.\n")
    (tmp_path / "app.py").write_text("import rich\n\nprint(rich)\n")
    return tmp_path


def _plan_for(project, packages):
    index = build_static_index(project)
    sources = discover_source_files(project)
    bindings = scan_imports(sources, project)
    findings = load_external_findings(packages, index, bindings=bindings)
    ctx = RemovalContext(
        project_root=project,
        lockfiles=tuple(index.lockfiles),
        unmodifiable=tuple(index.unmodifiable),
        bindings=tuple(bindings),
    )
    return plan_removal(ctx, findings), findings


class TestPlanRemoval:
    def test_multi_file_plan(self, multi_file_project):
        plan, _ = _plan_for(multi_file_project, ["prettytable"])
        assert {e.file_path for e in plan.file_edits} == {
            "setup.py",
            "requirements.txt",
            "tools/requirements.txt",
            "docs/requirements.txt",
        }
        readme_flags = [f for f in plan.manual_flags if f.location.file_path == "README.rst"]
        assert len(readme_flags) == 1
        assert readme_flags[0].location.line == 4

    def test_empty_findings_empty_plan(self, multi_file_project):
        plan, _ = _plan_for(multi_file_project, [])
        assert plan.is_empty

    def test_two_packages_one_file_edit(self, tmp_path):
        (tmp_path / "requirements.txt").write_text("alpha\nbeta\ngamma\n")
        plan, _ = _plan_for(tmp_path, ["alpha", "beta"])
        assert len(plan.file_edits) == 1
        edit = plan.file_edits[0]
        assert {p.normalized for p in edit.removed_packages} == {"alpha", "beta"}
        assert edit.new_content == b"gamma\n"

    def test_import_statements_removed_too(self, tmp_path):
        (tmp_path / "requirements.txt").write_text("leftpad\n")
        (tmp_path / "app.py").write_text("import leftpad\nimport os\n\nprint(os)\n")
        plan, _ = _plan_for(tmp_path, ["leftpad"])
        edited = {e.file_path: e for e in plan.file_edits}
        assert set(edited) == {"requirements.txt", "app.py"}
        assert edited["app.py"].new_content == b"import os\n\nprint(os)\n"

    def test_dynamic_import_flagged_not_edited(self, tmp_path):
        (tmp_path / "requirements.txt").write_text("leftpad\n")
        (tmp_path / "app.py").write_text('import importlib\nimportlib.import_module("leftpad")\n')
        plan, _ = _plan_for(tmp_path, ["leftpad"])
        assert {e.file_path for e in plan.file_edits} == {"requirements.txt"}
        assert any("dynamic import" in f.reason for f in plan.manual_flags)

    def test_report_only_finding_produces_no_edit(self, tmp_path):
        (tmp_path / "requirements.txt").write_text("rich\n")
        plan, findings = _plan_for(tmp_path, ["ghost-package"])
        assert findings[0].report_only
        assert plan.file_edits == ()


class TestLockfileSync:
    def test_poetry_lock_warning(self, tmp_path):
        (tmp_path / "pyproject.toml").write_text('[project]\nname="x"\ndependencies=["prettytable"]\n')
        (tmp_path / "poetry.lock").write_text("")
        plan, _ = _plan_for(tmp_path, ["prettytable"])
        assert len(plan.lockfile_warnings) == 1
        assert "poetry.lock" in plan.lockfile_warnings[0]

    def test_no_lockfiles_no_warning(self, tmp_path):
        (tmp_path / "requirements.txt").write_text("prettytable\n")
        plan, _ = _plan_for(tmp_path, ["prettytable"])
        assert plan.lockfile_warnings == ()

    def test_unrelated_lockfile_no_warning(self, tmp_path):
        (tmp_path / "requirements.txt").write_text("prettytable\n")
        (tmp_path / "Pipfile.lock").write_text("{}")
        plan, _ = _plan_for(tmp_path, ["prettytable"])
        assert plan.lockfile_warnings == ()

    def test_direct_call(self):
        warnings = check_lockfile_sync(["poetry.lock"], ["pyproject.toml"])
        assert len(warnings) == 1
        assert check_lockfile_sync(["sub/poetry.lock"], ["pyproject.toml"]) == []


class TestFlagUnmodifiableMentions:
    def test_readme_mention(self, tmp_path):
        (tmp_path / "README.rst").write_text("Install prettytable first.\n")
        flags = flag_unmodifiable_mentions(tmp_path, ["README.rst"], PKG)
        assert len(flags) == 1
        assert flags[0].location.line == 1

    def test_no_mentions(self, tmp_path):
        (tmp_path / "README.rst").write_text("nothing here\n")
        assert flag_unmodifiable_mentions(tmp_path, ["README.rst"], PKG) == []

    def test_dockerfile_mention(self, tmp_path):
        (tmp_path / "Dockerfile").write_text("FROM python:3.11\nRUN pip install prettytable\n")
        flags = flag_unmodifiable_mentions(tmp_path, ["Dockerfile"], PKG)
        assert len(flags) == 1
        assert flags[0].location.line == 2

    def test_whole_word_only(self, tmp_path):
        (tmp_path / "README.md").write_text("prettytables is not the same word\n")
        assert flag_unmodifiable_mentions(tmp_path, ["README.md"], PKG) == []

    def test_case_insensitive_and_raw_variant(self, tmp_path):
        (tmp_path / "README.md").write_text("Use PrettyTable.\nAlso Flask_Login helps.\n")
        assert len(flag_unmodifiable_mentions(tmp_path, ["README.md"], PKG)) == 1
        flags = flag_unmodifiable_mentions(tmp_path, ["README.md"], normalize_name("Flask_Login"))
        assert len(flags) == 1
        assert flags[0].location.line == 2


class TestApplyEdits:
    def test_dry_run_leaves_tree_untouched(self, multi_file_project):
        before = {
            p: p.read_bytes() for p in multi_file_project.rglob("*") if p.is_file()
        }
        plan, _ = _plan_for(multi_file_project, ["prettytable"])
        diffs = apply_edits(multi_file_project, plan, EditMode.DRY_RUN)
        assert len(diffs) == 4
        after = {p: p.read_bytes() for p in multi_file_project.rglob("*") if p.is_file()}
        assert before == after
        assert all(d.startswith("--- a/") for d in diffs)
        assert any("@@" in d for d in diffs)

    def test_write_then_reread_matches_new_content(self, multi_file_project):
        plan, _ = _plan_for(multi_file_project, ["prettytable"])
        apply_edits(multi_file_project, plan, EditMode.WRITE)
        for edit in plan.file_edits:
            assert (multi_file_project / edit.file_path).read_bytes() == edit.new_content

    def test_stale_file_aborts_without_partial_writes(self, multi_file_project):
        plan, _ = _plan_for(multi_file_project, ["prettytable"])
        target = multi_file_project / "requirements.txt"
        original = {e.file_path: (multi_file_project / e.file_path).read_bytes() for e in plan.file_edits}
        target.write_text("mutated-behind-our-back\n")
        with pytest.raises(StaleFileError):
            apply_edits(multi_file_project, plan, EditMode.WRITE)
        for edit in plan.file_edits:
            if edit.file_path != "requirements.txt":
                assert (multi_file_project / edit.file_path).read_bytes() == original[edit.file_path]

    def test_permissions_preserved(self, tmp_path):
        reqs = tmp_path / "requirements.txt"
        reqs.write_text("prettytable\nrich\n")
        reqs.chmod(0o755)
        plan, _ = _plan_for(tmp_path, ["prettytable"])
        apply_edits(tmp_path, plan, EditMode.WRITE)
        assert (reqs.stat().st_mode & 0o777) == 0o755


@pytest.mark.parametrize(
    "remove_fn,content",
    [
        (remove_from_requirements, "prettytable\nrich\n"),
        (remove_from_toml, '[project]\ndependencies = ["prettytable", "rich"]\n'),
        (remove_from_setup_cfg, "[options]\ninstall_requires =\n    prettytable\n    rich\n"),
        (remove_from_setup_py, SETUP_PY),
        (remove_from_environment_yaml, "dependencies:\n  - prettytable\n  - numpy\n"),
    ],
)
def test_remover_idempotence_on_fixtures(remove_fn, content):
    once = remove_fn(content, PKG)
    twice = remove_fn(once, PKG)
    assert once == twice


def test_import_removal_idempotent():
    content = "import prettytable\nimport os\n"
    once = remove_imports_from_source(content, {"prettytable"})
    assert remove_imports_from_source(once, {"prettytable"}) == once


def test_bom_preserved_through_edit(tmp_path):
    path = tmp_path / "requirements.txt"
    path.write_bytes(b"\xef\xbb\xbfprettytable\nrich\n")
    plan, _ = _plan_for(tmp_path, ["prettytable"])
    apply_edits(tmp_path, plan, EditMode.WRITE)
    assert path.read_bytes() == b"\xef\xbb\xbfrich\n"


def test_latin1_file_round_trips(tmp_path):
    path = tmp_path / "requirements.txt"
    path.write_bytes(b"# caf\xe9\nprettytable\nrich\n")
    plan, _ = _plan_for(tmp_path, ["prettytable"])
    apply_edits(tmp_path, plan, EditMode.WRITE)
    assert path.read_bytes() == b"# caf\xe9\nrich\n"


class TestAdversarialInputs:
    def test_toml_scalar_project_key_with_poetry_table(self):
        content = 'project = 3\n[tool.poetry.dependencies]\nleft-pad = "^1.2"\n'
        out = remove_from_toml(content, normalize_name("left-pad"))
        assert "left-pad" not in out
        assert out.startswith("project = 3\n")

    def test_toml_out_of_order_tables(self):
        content = (
            '[project.optional-dependencies]\ndev = ["left-pad", "pytest"]\n'
            '[project]\nname = "x"\ndependencies = ["left-pad"]\n'
        )
        out = remove_from_toml(content, normalize_name("left-pad"))
        data = tomllib.loads(out)
        assert data["project"]["dependencies"] == []
        assert data["project"]["optional-dependencies"]["dev"] == ["pytest"]

    def test_cfg_compound_constraint_not_split(self):
        content = "[options]\ninstall_requires = rich>=1,<2\n"
        specs, _ = parse_setup_cfg(content, "setup.cfg")
        assert [(s.name.normalized, s.version_constraint) for s in specs] == [("rich", ">=1,<2")]
        assert remove_from_setup_cfg(content, normalize_name("rich")) == "[options]\n"
        assert remove_from_setup_cfg(content, normalize_name("numpy")) == content

    def test_cfg_inline_comma_list_splits(self):
        content = "[options]\ninstall_requires = rich, click\n"
        out = remove_from_setup_cfg(content, normalize_name("click"))
        assert out == "[options]\ninstall_requires = rich\n"

    def test_finally_inline_import_gets_pass(self):
        out = remove_imports_from_source(
            "try:\n    x = 1\nfinally: import left_pad\n", {"left_pad"}
        )
        assert out == "try:\n    x = 1\nfinally: pass\n"
        ast.parse(out)

    def test_else_inline_import_gets_pass(self):
        out = remove_imports_from_source(
            "if True:\n    y = 1\nelse: import left_pad\n", {"left_pad"}
        )
        assert out == "if True:\n    y = 1\nelse: pass\n"
        ast.parse(out)

    def test_semicolon_sharing_line(self):
        out = remove_imports_from_source("import left_pad; x = 1\n", {"left_pad"})
        ast.parse(out)
        assert "x = 1" in out
        assert "left_pad" not in out

    def test_class_body_emptied_gets_pass(self):
        out = remove_imports_from_source(
            "class Loader:\n    import left_pad\n", {"left_pad"}
        )
        ast.parse(out)
        assert "left_pad" not in out

    def test_underscore_variant_requirement_matches(self):
        out = remove_from_requirements("left_pad==1.0\nrich\n", normalize_name("left-pad"))
        assert out == "rich\n"

    def test_requirements_only_option_lines_unchanged(self):
        content = "-r base.txt\n-c constraints.txt\n--hash=sha256:x\n"
        assert remove_from_requirements(content, PKG) == content
