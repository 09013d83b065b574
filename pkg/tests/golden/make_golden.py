"""Regenerate the golden determinism fixtures.

Run from the repository root after an intentional output change:
    python tests/golden/make_golden.py
"""

import hashlib
import json
import subprocess
import sys
import tempfile
from pathlib import Path

HERE = Path(__file__).resolve().parent
METHODS = ("model", "extrapolate", "tree")


def produce(workdir: Path) -> dict:
    """Run generate + evaluate through the CLI; return name -> bytes."""
    ds = workdir / "ds"
    cli = [sys.executable, "-m", "socialvote.cli"]
    subprocess.run(cli + ["generate", "--spec", str(HERE / "spec.json"), "--out", str(ds)],
                   check=True, capture_output=True)
    out = {"manifest.json": (ds / "manifest.json").read_bytes()}
    digests = {p.name: hashlib.sha256(p.read_bytes()).hexdigest()
               for p in sorted(ds.glob("story_*.jsonl"))}
    out["streams.sha256.json"] = (json.dumps(digests, indent=2, sort_keys=True) + "\n").encode()
    for m in METHODS:
        rep = workdir / f"{m}.json"
        subprocess.run(cli + ["evaluate", "--dataset", str(ds), "--method", m, "--seed", "0",
                              "--out", str(rep)], check=True, capture_output=True)
        out[f"report_{m}.json"] = rep.read_bytes()
    return out


if __name__ == "__main__":
    with tempfile.TemporaryDirectory() as tmp:
        for name, data in produce(Path(tmp)).items():
            (HERE / name).write_bytes(data)
            print("wrote", name)
