"""Write the catalog fixtures to src/lch/fixtures in the text format.

Run from the repository root after changing a catalog builder:

    python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import sys
from pathlib import Path

from lch import catalog, textio
from lch.cli import fixture_filename

SUFFIX = {"dga": ".dga", "instance": ".inst", "twocopy": ".two"}


def render(fx: catalog.Fixture) -> str:
    if fx.kind == "dga":
        doc = textio.dga_document(fx.payload, fx.betti)
    elif fx.kind == "instance":
        doc = textio.instance_document(fx.payload)
    else:
        doc = textio.two_copy_document(fx.payload)
    header = f"# {fx.name}: {fx.note}\n" if fx.note else f"# {fx.name}\n"
    return header + textio.format_document(doc)


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for fx in catalog.default_fixtures():
        path = out / (fixture_filename(fx.name.partition(":")[0]) + SUFFIX[fx.kind])
        path.write_text(render(fx), encoding="utf-8")
        print(path)


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("src/lch/fixtures"))
