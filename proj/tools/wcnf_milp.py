#!/usr/bin/env python3
"""Exact MaxSAT via mixed-integer programming.

Bridges classic DIMACS WCNF instances to the HiGHS solver shipped with
scipy: one binary per variable, one relaxation binary per soft clause,
objective = weighted sum of relaxations, gap pinned to zero. Prints the
MaxSAT-competition dialect (`s` status line, `v` line of signed literals)
so it can be plugged in as `--solver "python3 wcnf_milp.py {}"`.
"""

import sys

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp


def parse_wcnf(path):
    nvars = 0
    top = None
    hard, soft = [], []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                fields = line.split()
                if len(fields) != 5 or fields[1] != "wcnf":
                    raise ValueError("expected a classic 'p wcnf' header")
                nvars, top = int(fields[2]), int(fields[4])
                continue
            tokens = line.split()
            weight = int(tokens[0])
            lits = [int(t) for t in tokens[1:]]
            if not lits or lits[-1] != 0:
                raise ValueError("clause line missing 0 terminator")
            lits = lits[:-1]
            if top is not None and weight >= top:
                hard.append(lits)
            else:
                soft.append((weight, lits))
    if top is None:
        raise ValueError("missing 'p wcnf' header")
    return nvars, hard, soft


def main():
    if len(sys.argv) != 2:
        print("usage: wcnf_milp.py <instance.wcnf>", file=sys.stderr)
        return 1
    nvars, hard, soft = parse_wcnf(sys.argv[1])

    if any(len(c) == 0 for c in hard):
        print("s UNSATISFIABLE")
        return 0

    ncols = nvars + len(soft)
    rows, cols, data, lower = [], [], [], []

    def add_clause(row, lits, relax_col=None):
        negatives = 0
        for lit in lits:
            rows.append(row)
            cols.append(abs(lit) - 1)
            data.append(1.0 if lit > 0 else -1.0)
            if lit < 0:
                negatives += 1
        if relax_col is not None:
            rows.append(row)
            cols.append(relax_col)
            data.append(1.0)
        lower.append(1 - negatives)

    row = 0
    for clause in hard:
        add_clause(row, clause)
        row += 1
    for k, (_, clause) in enumerate(soft):
        add_clause(row, clause, nvars + k)
        row += 1

    objective = np.zeros(ncols)
    for k, (weight, _) in enumerate(soft):
        objective[nvars + k] = weight

    matrix = sparse.csc_array(
        (data, (rows, cols)), shape=(row, ncols)
    )
    result = milp(
        c=objective,
        constraints=LinearConstraint(matrix, np.array(lower), np.full(row, np.inf)),
        integrality=np.ones(ncols),
        bounds=Bounds(0, 1),
        options={"mip_rel_gap": 0.0},
    )

    if result.status == 2:
        print("s UNSATISFIABLE")
        return 0
    if result.status != 0 or result.x is None:
        print("s UNKNOWN")
        return 0

    values = np.rint(result.x[:nvars]).astype(int)
    print("o", int(round(result.fun)))
    print("s OPTIMUM FOUND")
    lits = [str(i + 1) if values[i] else str(-(i + 1)) for i in range(nvars)]
    print("v", " ".join(lits))
    return 0


if __name__ == "__main__":
    sys.exit(main())
