"""Regenerate (or with --check, verify) the CLI golden files.

    python scripts/regen_golden.py [--check]
"""
import argparse
import contextlib
import io
import json
import sys
from pathlib import Path

from incidence_lie.cli import main

ROOT = Path(__file__).resolve().parent.parent / "tests"
MANIFEST = ROOT / "golden" / "manifest.json"


def run(args: list[str]) -> tuple[str, int]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main([a.replace("{fixtures}", str(ROOT / "fixtures")) for a in args])
    return buf.getvalue(), code


def cli() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", action="store_true")
    opts = parser.parse_args()
    entries = json.loads(MANIFEST.read_text())
    stale = 0
    for entry in entries:
        text, code = run(entry["args"])
        path = ROOT / "golden" / entry["golden"]
        if opts.check:
            if code != entry["exit"] or not path.exists() or path.read_text() != text:
                print(f"stale: {entry['golden']}")
                stale += 1
        else:
            path.write_text(text)
            entry["exit"] = code
    if not opts.check:
        MANIFEST.write_text(json.dumps(entries, indent=2) + "\n")
        print(f"wrote {len(entries)} golden files")
    return 1 if stale else 0


if __name__ == "__main__":
    sys.exit(cli())
