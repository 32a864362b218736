#!/usr/bin/env python3
# Copyright 2026 The tendonsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Fits the guide-radius scale of a finger config to a target tip sag.

Keeps the radius profile and scales it by s; bisects s until the 3 kg (by
default) deflection from `tendonsim-cli stiffness` hits the target. Scale
grows -> tendons lever more -> sag drops, so the map is monotone on the
bracket.
"""

import argparse
import copy
import json
import subprocess
import sys
import tempfile


def deflection_mm(cli, doc, scale, base_radii, payload):
    trial = copy.deepcopy(doc)
    trial["geometry"]["guide_radii"] = [r * scale for r in base_radii]
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
        json.dump(trial, f)
        path = f.name
    out = subprocess.run(
        [cli, "--config", path, "--format", "json", "stiffness", "--payloads", str(payload)],
        capture_output=True, text=True)
    if out.returncode != 0:
        return None
    row = json.loads(out.stdout)["rows"][0]
    return row["deflection_mm"]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cli", default="build/tools/tendonsim-cli")
    p.add_argument("--config", default="fingers/default.json")
    p.add_argument("--base-radii", default="10,7.5,5",
                   help="radius profile in the config's length unit")
    p.add_argument("--target-mm", type=float, default=24.386)
    p.add_argument("--payload", type=float, default=3.0)
    p.add_argument("--lo", type=float, default=2.0)
    p.add_argument("--hi", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=30)
    args = p.parse_args()

    with open(args.config) as f:
        doc = json.load(f)
    base = [float(v) for v in args.base_radii.split(",")]
    lo, hi = args.lo, args.hi
    for _ in range(args.steps):
        mid = 0.5 * (lo + hi)
        d = deflection_mm(args.cli, doc, mid, base, args.payload)
        if d is None or d > args.target_mm:
            lo = mid  # too soft, or not solvable: needs larger radii
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    d = deflection_mm(args.cli, doc, s, base, args.payload)
    print(f"scale {s:.6f}: radii {[round(r * s, 6) for r in base]}, "
          f"deflection {d} mm at {args.payload} kg")
    return 0


if __name__ == "__main__":
    sys.exit(main())
