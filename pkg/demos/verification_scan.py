"""Checking the closed forms against brute force.

Every edge vector in a small box is solved three ways: the closed forms,
cycle propagation and exhaustive search. The scan also confirms that
patches whose side count is not a multiple of four never have two layouts,
and that balanced octagons are always solvable.

Pass ``--jobs N`` to spread the work over N processes; the reports are
identical either way.
"""

import argparse
import time

from ccquad import Mode
from ccquad.io_formats import write_scan_report
from ccquad.scan import ScanRange, probe_equality_count, scan_range, verify_octa_feasibility

parser = argparse.ArgumentParser()
parser.add_argument("--jobs", type=int, default=1)
args = parser.parse_args()

for n, top in [(3, 6), (5, 4), (6, 4), (7, 3)]:
    t0 = time.perf_counter()
    rep = scan_range(ScanRange(n, 1, top, Mode.NONSTRICT), ["oracle", "uniqueness"], workers=args.jobs)
    dt = time.perf_counter() - t0
    print(f"n={n} e<={top}: {rep.total} instances, {rep.cc_able} CC-able, "
          f"multiplicities {dict(rep.multiplicity)}, ok={rep.ok} ({dt:.1f}s)")

t0 = time.perf_counter()
bad = verify_octa_feasibility(ScanRange(8, 2, 4), workers=args.jobs)
print(f"\nbalanced octagons in [2..4]^8 without a strict layout: {len(bad)} "
      f"({time.perf_counter() - t0:.1f}s)")

probe = probe_equality_count(ScanRange(8, 1, 2, Mode.NONSTRICT), workers=args.jobs)
print(f"\nzero-length spokes across non-strict octagon layouts: {probe.distribution}")
print(f"most at once: {probe.max_zero_count}, e.g. e={probe.extremal[0][0]} s={probe.extremal[0][1]}")

print("\nfull report for n=5:")
print(write_scan_report(scan_range(ScanRange(5, 1, 3), ["oracle", "conditions"]), "text").decode())
