#!/usr/bin/env python3
"""Run the canonical pipeline into ./out/canonical and echo the headline numbers.

Equivalent to `nuclab all --out out/canonical`; kept as a script so the
canonical artifacts can be regenerated with no arguments at all.
"""

import sys
from pathlib import Path

from nuclab.config import RunConfig
from nuclab.report import run_pipeline


def main() -> int:
    out = Path("out") / "canonical"
    status = run_pipeline(RunConfig(out_dir=str(out)))
    if status == 0:
        print(f"canonical artifacts regenerated under {out}/")
    return status


if __name__ == "__main__":
    sys.exit(main())
