#!/usr/bin/env python3
"""Regenerate the bundled octic unit datasets.

Computes a fundamental unit system for every triquadratic candidate field
(the P in {2, 4} evaluation set and all P = 8 elimination candidates) and
writes them to src/multiquad/data/units/.  Every file is reloaded through
the verifying loader before the script reports success.
"""

import os
import sys

from multiquad.classify import candidates_n3
from multiquad.radicands import members_to_primitive
from multiquad.units import (
    compute_unit_system,
    dataset_path,
    dump_unit_dataset,
    load_unit_dataset,
)

DATA_DIR = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "src", "multiquad", "data", "units",
)


def main() -> int:
    os.makedirs(DATA_DIR, exist_ok=True)
    cands = candidates_n3().candidates
    print(f"generating {len(cands)} octic unit datasets in {DATA_DIR}")
    for cand in cands:
        entries = members_to_primitive(cand.field.members)
        system = compute_unit_system(entries)
        path = dataset_path(DATA_DIR, cand.field)
        dump_unit_dataset(system, path)
        load_unit_dataset(entries, path)  # re-verify what was written
        print(f"  {cand.field}  ({cand.case})")
    print("all datasets written and re-verified")
    return 0


if __name__ == "__main__":
    sys.exit(main())
