import time

import pytest

from bdblend import cli


def _run_cli(args, out_dir):
    rc = cli.main([*args, "--out", str(out_dir)])
    return rc, out_dir


@pytest.fixture(scope="session")
def moments_check_run(tmp_path_factory):
    """One full moments-check run shared by the CLI and acceptance tests."""
    out = tmp_path_factory.mktemp("moments_check")
    t0 = time.monotonic()
    rc, _ = _run_cli(["moments-check"], out)
    elapsed = time.monotonic() - t0
    return {"rc": rc, "dir": out, "elapsed": elapsed}


@pytest.fixture(scope="session")
def bounds_check_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("bounds_check")
    rc, _ = _run_cli(["bounds-check"], out)
    return {"rc": rc, "dir": out}


@pytest.fixture(scope="session")
def figure1_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("figure1")
    rc, _ = _run_cli(["figure1"], out)
    return {"rc": rc, "dir": out}


@pytest.fixture(scope="session")
def figure2_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("figure2")
    rc, _ = _run_cli(["figure2"], out)
    return {"rc": rc, "dir": out}
