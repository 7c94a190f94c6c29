"""Regenerate the sample group and matroid files under fixtures/ from the catalog."""
from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from config import Config  # noqa: E402
from services.catalog import (CATALOG, cyclic_group, elementary_abelian,  # noqa: E402
                              symmetric_group_s3)
from services.constructors import subgroup_closure, trivial_pregeometry  # noqa: E402
from services.file_formats import write_group, write_matroid  # noqa: E402

GROUPS = {
    "z4": cyclic_group(4),
    "s3": symmetric_group_s3(),
    "z2-3": elementary_abelian(2, 3),
    "z3-2": elementary_abelian(3, 2),
}

CATALOG_MATROIDS = ("linear-2-3", "linear-3-2", "affine-2-3", "affine-3-2", "trivial-6-loop0", "fano")


def main() -> None:
    target = Config.FIXTURE_DIR
    target.mkdir(parents=True, exist_ok=True)
    written = []

    for name, group in GROUPS.items():
        write_group(group, target / f"{name}.group")
        written.append(f"{name}.group")

    for name in CATALOG_MATROIDS:
        write_matroid(CATALOG[name](), target / f"{name}.matroid")
        written.append(f"{name}.matroid")

    # pregeometries on Z4
    write_matroid(trivial_pregeometry(4, [0]), target / "trivial-4-loop0.matroid")
    write_matroid(subgroup_closure(GROUPS["z4"], source="z4.group"), target / "z4-subgroups.matroid")
    written.extend(["trivial-4-loop0.matroid", "z4-subgroups.matroid"])

    print(f"Wrote {len(written)} files to {target}:", ", ".join(written))


if __name__ == "__main__":
    main()
