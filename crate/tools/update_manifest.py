"""Rewrite crates/core/data/manifest.json with SHA-256 hashes of the bundled data files."""
import hashlib
import json
import pathlib

DATA = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "data"
FILES = ["corpus.json", "simple_fingerprints.json", "sporadic_orders.json", "sz8.gens.json"]

manifest = {f: hashlib.sha256((DATA / f).read_bytes()).hexdigest() for f in FILES}
(DATA / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
print(json.dumps(manifest, indent=2))
