"""Shared fixtures: offline wheelhouse building and dist-info fabrication."""

import base64
import csv
import hashlib
import io
import os
import shutil
import subprocess
import zipfile
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
CASES_DIR = REPO_ROOT / "cases"


def make_dist_info(
    site_dir: Path,
    name: str,
    version: str,
    requires: tuple[str, ...] = (),
    top_level: str | None = None,
    record_paths: tuple[str, ...] | None = None,
    omit_name: bool = False,
) -> Path:
    """Fabricate a `*.dist-info` directory the way an installer would."""
    dist = name.replace("-", "_")
    info = site_dir / f"{dist}-{version}.dist-info"
    info.mkdir(parents=True)
    headers = ["Metadata-Version: 2.1"]
    if not omit_name:
        headers.append(f"Name: {name}")
    headers.append(f"Version: {version}")
    headers.extend(f"Requires-Dist: {req}" for req in requires)
    (info / "METADATA").write_text("\n".join(headers) + "\n")
    if top_level is not None:
        (info / "top_level.txt").write_text(top_level)
    if record_paths is not None:
        rows = [[p, "", ""] for p in record_paths]
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        (info / "RECORD").write_text(buf.getvalue())
    return info


def build_wheel(
    dest_dir: Path,
    name: str,
    version: str,
    requires: tuple[str, ...] = (),
    top_level: str | None = None,
) -> Path:
    """Build a minimal pure-Python wheel installable from a local wheelhouse."""
    module = top_level or name.replace("-", "_")
    dist = name.replace("-", "_")
    files = {
        f"{module}/__init__.py": f'"""Placeholder package {name}."""\n__version__ = "{version}"\n',
        f"{dist}-{version}.dist-info/METADATA": "".join(
            [f"Metadata-Version: 2.1\nName: {name}\nVersion: {version}\n"]
            + [f"Requires-Dist: {req}\n" for req in requires]
        ),
        f"{dist}-{version}.dist-info/WHEEL": (
            "Wheel-Version: 1.0\nGenerator: pytrim-tests\nRoot-Is-Purelib: true\nTag: py3-none-any\n"
        ),
        f"{dist}-{version}.dist-info/top_level.txt": module + "\n",
    }
    record_name = f"{dist}-{version}.dist-info/RECORD"
    rows = []
    for path, text in files.items():
        digest = base64.urlsafe_b64encode(hashlib.sha256(text.encode()).digest()).rstrip(b"=")
        rows.append([path, f"sha256={digest.decode()}", str(len(text.encode()))])
    rows.append([record_name, "", ""])
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    files[record_name] = buf.getvalue()

    dest_dir.mkdir(parents=True, exist_ok=True)
    wheel_path = dest_dir / f"{dist}-{version}-py3-none-any.whl"
    with zipfile.ZipFile(wheel_path, "w", zipfile.ZIP_DEFLATED) as archive:
        for path, text in files.items():
            archive.writestr(path, text)
    return wheel_path


@pytest.fixture(scope="session")
def wheelhouse(tmp_path_factory) -> Path:
    """Session wheelhouse with the placeholder distributions tests install."""
    house = tmp_path_factory.mktemp("wheelhouse")
    build_wheel(house, "persistq", "0.1.0")
    build_wheel(house, "tablekit", "2.0.0")
    return house


@pytest.fixture
def offline_pip_env(wheelhouse, monkeypatch):
    """Point pip at the local wheelhouse only; disable build isolation.

    PIP_NO_BUILD_ISOLATION uses inverted boolean semantics ("false" disables
    isolation); verified against pip 26.
    """
    monkeypatch.setenv("PIP_NO_INDEX", "1")
    monkeypatch.setenv("PIP_FIND_LINKS", str(wheelhouse))
    monkeypatch.setenv("PIP_NO_BUILD_ISOLATION", "false")
    monkeypatch.setenv("PIP_DISABLE_PIP_VERSION_CHECK", "1")
    monkeypatch.setenv("PIP_ROOT_USER_ACTION", "ignore")
    return wheelhouse


def make_dynamic_setup_project(root: Path, dependency: str = "persistq>=0.1") -> Path:
    """Project whose setup.py builds install_requires by reading a file."""
    root.mkdir(parents=True, exist_ok=True)
    (root / "reqs").mkdir()
    (root / "reqs" / "core.txt").write_text(dependency + "\n")
    (root / "app_mod.py").write_text("import persistq\n\n\ndef run():\n    return persistq\n")
    (root / "setup.py").write_text(
        "from setuptools import setup\n"
        "\n"
        "f = open('reqs/core.txt')\n"
        "REQS = f.read().splitlines()\n"
        "f.close()\n"
        "\n"
        "setup(\n"
        "    name='dynreq-app',\n"
        "    version='0.1.0',\n"
        "    py_modules=['app_mod'],\n"
        "    install_requires=REQS,\n"
        ")\n"
    )
    return root


def init_git_repo(root: Path) -> None:
    """Turn a tree into a committed git repo with a local identity."""
    run = lambda *args: subprocess.run(
        ["git", *args], cwd=root, check=True, capture_output=True, text=True
    )
    run("init", "-q", "-b", "main")
    run("config", "user.email", "dev@example.com")
    run("config", "user.name", "Dev")
    run("add", "-A")
    run("commit", "-q", "-m", "baseline")


def copy_tree(src: Path, dst: Path) -> Path:
    shutil.copytree(src, dst)
    return dst


def pip_available() -> bool:
    return shutil.which(os.environ.get("PYTRIM_INSTALLER", "pip")) is not None
