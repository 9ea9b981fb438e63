#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernel backends.

Two views:
  * microbenchmarks of the four hot kernels (closure, normalizer scan,
    fixed-point count, coset representatives) on every subgroup class of
    a few mid-size groups, calling each implementation directly;
  * an end-to-end subgroup-enumeration + marks-table timing per backend,
    selected through PERMREL_BACKEND exactly as a user would.

Run:  python3 benchmarks/benchmark_backends.py [--repeat N]
"""

import argparse
import os
import statistics
import time

import numpy as np

from permrel import _kernels
from permrel.burnside import marks_table
from permrel.constructions import (
    alternating_group,
    dihedral_group,
    symmetric_group,
)
from permrel.subgroups import enumerate_classes

GROUPS = (
    ("D16", lambda: dihedral_group(16)),
    ("S4", lambda: symmetric_group(4)),
    ("A5", lambda: alternating_group(5)),
    ("S5", lambda: symmetric_group(5)),
)


def _subgroup_inputs(group):
    """One call's worth of arguments per subgroup class, per kernel."""
    table = enumerate_classes(group)
    mult, inv = group.mult, group.inv
    closure_args = []
    normalizer_args = []
    fixed_args = []
    coset_args = []
    for cls in table.classes:
        h = cls.representative
        gens = h.generator_indices
        closure_args.append((mult, np.asarray(gens, dtype=np.int32)))
        normalizer_args.append((mult, inv, h.indices))
        coset_args.append((mult, h.indices))
        transversal = _kernels.coset_reps_numpy(mult, h.indices)
        for other in table.classes:
            if other.order > h.order:
                continue
            kgens = np.asarray(
                other.representative.generator_indices, dtype=np.int32
            )
            fixed_args.append((mult, inv, h.mask, transversal, kgens))
    return {
        "closure": closure_args,
        "normalizer": normalizer_args,
        "count_fixed": fixed_args,
        "coset_reps": coset_args,
    }


def _time_sweep(fn, calls, repeat):
    fn(*calls[0])  # warm up (numba compilation, caches)
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        for args in calls:
            fn(*args)
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def run_micro(repeat):
    pairs = [
        ("closure", _kernels.closure_numpy,
         getattr(_kernels, "closure_numba", None)),
        ("normalizer", _kernels.normalizer_members_numpy,
         getattr(_kernels, "normalizer_members_numba", None)),
        ("count_fixed", _kernels.count_fixed_numpy,
         getattr(_kernels, "count_fixed_numba", None)),
        ("coset_reps", _kernels.coset_reps_numpy,
         getattr(_kernels, "coset_reps_numba", None)),
    ]
    print("microbenchmarks (median of %d sweeps over all subgroup classes)" % repeat)
    header = "%-6s %-12s %10s %10s %9s" % (
        "group", "kernel", "numpy", "numba", "speedup")
    print(header)
    print("-" * len(header))
    for name, build in GROUPS:
        group = build()
        inputs = _subgroup_inputs(group)
        for kernel_name, numpy_fn, numba_fn in pairs:
            calls = inputs[kernel_name]
            t_numpy = _time_sweep(numpy_fn, calls, repeat)
            if numba_fn is None:
                print("%-6s %-12s %9.3fms %10s %9s"
                      % (name, kernel_name, t_numpy * 1e3, "n/a", "n/a"))
                continue
            t_numba = _time_sweep(numba_fn, calls, repeat)
            print("%-6s %-12s %9.3fms %9.3fms %8.1fx"
                  % (name, kernel_name, t_numpy * 1e3, t_numba * 1e3,
                     t_numpy / t_numba if t_numba > 0 else float("inf")))


def run_end_to_end(repeat):
    print()
    print("end-to-end: subgroup classes + marks table (fresh group each run)")
    backends = ["numpy"] + (["numba"] if _kernels._HAVE_NUMBA else [])
    header = "%-6s %12s" % ("group", backends[0])
    if len(backends) > 1:
        header += " %12s %9s" % (backends[1], "speedup")
    print(header)
    print("-" * len(header))
    for name, build in GROUPS:
        medians = []
        for backend in backends:
            os.environ["PERMREL_BACKEND"] = backend
            _kernels._reset_backend_cache()
            build()  # warm any one-time construction costs
            samples = []
            for _ in range(repeat):
                group = build()
                group._memo.clear()
                start = time.perf_counter()
                table = enumerate_classes(group)
                marks_table(group, table)
                samples.append(time.perf_counter() - start)
            medians.append(statistics.median(samples))
        line = "%-6s %10.3fms" % (name, medians[0] * 1e3)
        if len(medians) > 1:
            line += " %10.3fms %8.1fx" % (
                medians[1] * 1e3,
                medians[0] / medians[1] if medians[1] > 0 else float("inf"),
            )
        print(line)
    os.environ.pop("PERMREL_BACKEND", None)
    _kernels._reset_backend_cache()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not _kernels._HAVE_NUMBA:
        print("numba is not importable; showing numpy timings only")
    run_micro(args.repeat)
    run_end_to_end(args.repeat)


if __name__ == "__main__":
    main()
