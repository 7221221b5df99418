"""Time the compiled and pure-Python kernels on the workloads that dominate.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""

import argparse
import json
import sys
import timeit

from osx import kernels
from osx.casestudies import cross, nine_three_2
from osx.criteria import graph_component_check, is_p_independent_matroid
from osx.exterior import boundary_of_set
from osx.ideal import os_ideal
from osx.presentation import verify_relation_basis


def workloads():
    nine = nine_three_2()

    def wedge():
        for _ in range(50):
            acc = boundary_of_set(range(1, 5))
            for k in range(5, 10):
                acc = acc * boundary_of_set([k - 4, k - 3, k])

    def reduction():
        os_ideal(nine_three_2()).component(4)

    def partitions():
        is_p_independent_matroid(nine, 3)

    def components():
        graph_component_check(cross())

    def relations():
        verify_relation_basis(cross())

    return {"wedge": wedge, "row reduction": reduction, "partition search": partitions,
            "graph components": components, "relation basis": relations}


def bench(repeat: int) -> dict:
    out = {}
    for name in kernels.available_backends():
        kernels.use_backend(name)
        out[name] = {label: min(timeit.repeat(fn, number=1, repeat=repeat))
                     for label, fn in workloads().items()}
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    res = bench(args.repeat)
    if args.json:
        json.dump(res, sys.stdout, indent=2, sort_keys=True)
        print()
        return
    names = list(res)
    print(f"{'workload':<20}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label in res[names[0]]:
        row = f"{label:<20}" + "".join(f"{res[n][label] * 1e3:>10.2f}ms" for n in names)
        if len(names) == 2:
            row += f"{res['python'][label] / res['cython'][label]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
