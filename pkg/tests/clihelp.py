"""Run the CLI in-process, twice, and compare the artifacts byte for byte."""

import contextlib
import io
import os

from queuelay.cli import main

RUNS = []


def invoke(argv, workdir):
    """(exit code, stdout bytes, {file: bytes}) of one invocation.

    The command runs twice in fresh output directories; any difference in
    exit code or artifact bytes raises AssertionError.
    """
    results = []
    for rep in (0, 1):
        out_dir = os.path.join(workdir, f"run{rep}")
        os.makedirs(out_dir, exist_ok=True)
        args = [a.replace("{out}", out_dir) for a in argv]
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = main(args)
        files = {}
        for name in sorted(os.listdir(out_dir)):
            with open(os.path.join(out_dir, name), "rb") as fh:
                files[name] = fh.read()
            os.remove(os.path.join(out_dir, name))
        results.append((code, buf.getvalue().encode(), files))
    same = results[0] == results[1]
    RUNS.append((tuple(argv), same))
    assert same, f"non-deterministic output for {argv}"
    return results[0]
