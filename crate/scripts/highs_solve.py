#!/usr/bin/env python3
"""Solve an LP file with HiGHS and write a stardisc solution file.

Usage: highs_solve.py MODEL.lp SOLUTION.txt [TIME_LIMIT_SECONDS]
"""

import sys

import highspy


def main() -> int:
    if len(sys.argv) not in (3, 4):
        print(__doc__.strip(), file=sys.stderr)
        return 2
    model, out = sys.argv[1], sys.argv[2]
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if len(sys.argv) == 4:
        h.setOptionValue("time_limit", float(sys.argv[3]))
    if h.readModel(model) != highspy.HighsStatus.kOk:
        print(f"cannot read {model}", file=sys.stderr)
        return 3
    h.run()
    status = h.getModelStatus()
    info = h.getInfo()
    if status == highspy.HighsModelStatus.kOptimal:
        word = "optimal"
    elif info.primal_solution_status == 2:
        word = "feasible"
    else:
        print(f"no solution: {h.modelStatusToString(status)}", file=sys.stderr)
        return 1
    lp = h.getLp()
    values = h.getSolution().col_value
    with open(out, "w") as f:
        f.write(f"status {word}\n")
        f.write(f"objective {info.objective_function_value!r}\n")
        for name, v in zip(lp.col_names_, values):
            f.write(f"{name} {v!r}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
