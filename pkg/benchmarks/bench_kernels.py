"""Compare the compiled row-reduction kernel against the pure-Python one.

Workloads are the matrices the library actually produces: coboundary
matrices of the bundled algebras and a dense change-of-basis conjugate.
Run from the repository root:

    PYTHONPATH=src python benchmarks/bench_kernels.py
"""

import time
from fractions import Fraction

from nliecoh import _rref_py
from nliecoh.algebra import NLieAlgebra
from nliecoh.cochains import coboundary_matrix_self
from nliecoh.corpus import algebra
from nliecoh.linalg import Matrix, solve

try:
    from nliecoh import _rref_c
except ImportError:
    _rref_c = None


def dense_conjugate(base: NLieAlgebra, name: str) -> NLieAlgebra:
    p = Matrix.from_rows([[1, 1, 0, 2], [0, 1, 1, 0], [3, 0, 1, 1], [1, 0, 0, 1]])
    cols = []
    for j in range(4):
        unit = tuple(Fraction(1 if i == j else 0) for i in range(4))
        cols.append(solve(p, unit))
    p_inv = Matrix.from_columns(cols)
    brackets = {
        key: p_inv.mul_vector(base.bracket(*(p.column(i) for i in key)))
        for key in base.bracket_keys()
    }
    return NLieAlgebra.from_brackets(name, base.arity, base.dim, brackets)


def workloads():
    b3 = algebra("b3")
    dense = dense_conjugate(b3, "dense")
    yield "sparse delta out of degree 2 (576x96)", coboundary_matrix_self(b3, 2)
    yield "dense delta out of degree 2 (576x96)", coboundary_matrix_self(dense, 2)
    yield "dense delta out of degree 1 (96x16)", coboundary_matrix_self(dense, 1)


def time_kernel(kernel, rows, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        copies = [row[:] for row in rows]
        start = time.perf_counter()
        result = kernel.rref(copies)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    print(f"{'workload':45s} {'python':>10s} {'c':>10s} {'speedup':>9s}")
    for label, matrix in workloads():
        rows = [list(r) for r in matrix.data]
        t_py, out_py = time_kernel(_rref_py, rows)
        if _rref_c is None:
            print(f"{label:45s} {t_py:9.3f}s {'-':>10s} {'-':>9s}")
            continue
        t_c, out_c = time_kernel(_rref_c, rows)
        assert out_py == out_c, "backends disagree"
        print(f"{label:45s} {t_py:9.3f}s {t_c:9.3f}s {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    main()
