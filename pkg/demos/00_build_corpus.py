"""
Rebuilding the bundled corpus
=============================

The datasets under data/ are generated, not collected: four curated city
files, district boundaries, OSM-style road extracts, and one annotated
audit sample, all derived from a fixed seed.  This script rebuilds them
into a scratch directory and runs the calibration gate that the shipped
copy must pass.
"""

import tempfile
from pathlib import Path

from streetscape import demo

scratch = Path(tempfile.mkdtemp(prefix="streetscape-corpus-"))
print(f"building corpus under {scratch}\n")

for note in demo.generate(scratch):
    print(f"  {note}")

# The gate recomputes every headline number from the files just written
# and fails loudly on any drift.
demo.certify(scratch)
print("\ncalibration gate: ok")

bundled = Path(__file__).resolve().parents[1] / "data"
fresh = sorted(p.relative_to(scratch) for p in scratch.rglob("*") if p.is_file())
same = all(
    (scratch / rel).read_bytes() == (bundled / rel).read_bytes() for rel in fresh
)
print(f"byte-identical to the bundled data/: {same}")
