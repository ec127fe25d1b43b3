#!/usr/bin/env python3
"""Run the three experiments with reference settings and write their CSVs.

The beamtrain trial count is reduced by default so the full set finishes in
a couple of minutes; pass --trials 1000 for the full-scale run.
"""

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from xlwave.experiments import (  # noqa: E402
    TrainingBlock,
    cmd_beamtrain,
    cmd_jaccard_map,
    cmd_spectrum,
    default_config,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="results/golden")
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--threads", type=int, default=2)
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    exp = default_config()
    exp = replace(
        exp,
        training=TrainingBlock(
            snr_db=(0.0, 5.0, 10.0, 15.0, 20.0),
            trials=args.trials,
            seed=args.seed,
            distance=20.0,
        ),
    )

    for name, runner in (
        ("spectrum.csv", cmd_spectrum),
        ("jaccard_map.csv", cmd_jaccard_map),
        ("beamtrain.csv", cmd_beamtrain),
    ):
        t0 = time.time()
        runner(exp, str(outdir / name), threads=args.threads)
        print(f"wrote {outdir / name} in {time.time() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
