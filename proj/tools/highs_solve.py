#!/usr/bin/env python3
"""Solve an LP-format model with HiGHS and write a solution file.

usage: highs_solve.py MODEL.lp SOLUTION.sol TIME_LIMIT

The solution file starts with "# Status: optimal" (or the HiGHS status in
lower case with underscores) and lists one "name value" pair per line.
"""
import sys

import highspy


def main() -> int:
    if len(sys.argv) != 4:
        print(__doc__, file=sys.stderr)
        return 2
    lp_path, sol_path, limit = sys.argv[1], sys.argv[2], float(sys.argv[3])
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("time_limit", limit)
    h.setOptionValue("threads", 1)
    if h.readModel(lp_path) != highspy.HighsStatus.kOk:
        print(f"cannot read {lp_path}", file=sys.stderr)
        return 1
    h.run()
    status = h.getModelStatus()
    if status == highspy.HighsModelStatus.kOptimal:
        word = "optimal"
    elif status == highspy.HighsModelStatus.kTimeLimit:
        word = "time_limit"
    else:
        word = h.modelStatusToString(status).lower().replace(" ", "_")
    with open(sol_path, "w") as out:
        out.write(f"# Status: {word}\n")
        if word == "optimal":
            out.write(f"# Objective value = {h.getInfo().objective_function_value:.0f}\n")
            names = h.getLp().col_names_
            for name, value in zip(names, h.getSolution().col_value):
                out.write(f"{name} {value:.0f}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
