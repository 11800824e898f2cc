#!/usr/bin/env python3
"""How large does the faithful anchor construction get for a given baton?

Prints the intermediate quantities that drive the blowup: the gamma-set
gap delta, the ratio theta, the approximation threshold q0, the
denominator the scan actually lands on, and the final index range m.
Useful before committing to a faithful build, since m bounds both the
sequence length and the verification sweep.
"""

import argparse
import sys
import time
from fractions import Fraction

from maxram import Baton, build_anchor_sequence, verify_anchor_sequence


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "steps",
        help="comma-separated rational steps, e.g. 1,3/2",
    )
    parser.add_argument(
        "--verify",
        action="store_true",
        help="also run the clause verifier on the result",
    )
    args = parser.parse_args(argv)

    steps = tuple(Fraction(s) for s in args.steps.split(","))
    baton = Baton(steps)

    started = time.perf_counter()
    seq = build_anchor_sequence(baton, faithful=True)
    built = time.perf_counter() - started

    print(f"steps   {', '.join(str(s) for s in steps)}")
    print(f"delta   {seq.delta}")
    print(f"theta   {seq.theta}")
    print(f"q0      {seq.q0}")
    print(f"q       {seq.q}")
    print(f"m       {seq.m}")
    print(f"built in {built:.3f}s", file=sys.stderr)

    if args.verify:
        started = time.perf_counter()
        report = verify_anchor_sequence(seq, baton)
        print(f"verified in {time.perf_counter() - started:.3f}s", file=sys.stderr)
        print(f"clauses {'all ok' if report.ok else 'FAILED'}")
        return 0 if report.ok else 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
