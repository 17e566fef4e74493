"""
Lower and upper bounds for the smallest totally p-adic heights
==============================================================

Each row brackets u_p >= i_p >= n_p: the minimal height among units, among
algebraic integers, and among all nonzero non-roots of unity.
"""

from tpheights.bounds import bounds_row, multi_prime_bounds, rows_to_csv
from tpheights.cli import render_table, cmd_bounds, RunConfig

# one row, with all certificates behind it
row = bounds_row(3)
for name, cell in row.cells().items():
    print(f"{name:8s} {float(cell.value.mid):.9f}  {cell.formula:30s} {cell.status}")
print("sandwich:", row.sandwich())

# a small table as CSV
print(rows_to_csv([bounds_row(p) for p in (2, 3, 5, 7, 11, 13)], digits=8))

# the same table through the CLI layer
doc, _ = cmd_bounds([2, 3, 5, 7], RunConfig())
print(render_table(doc))

# several primes at once
bz, fp, up = multi_prime_bounds([2, 3, 5])
print("S = {2,3,5}:", float(bz.mid), float(fp.mid), float(up.mid))
