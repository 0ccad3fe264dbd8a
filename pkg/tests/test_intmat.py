import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from noetherpg import intmat


def mats(rows, cols, lo=-6, hi=6):
    return st.lists(st.lists(st.integers(lo, hi), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


shape = st.tuples(st.integers(1, 4), st.integers(1, 4))


@settings(max_examples=150, deadline=None)
@given(shape.flatmap(lambda s: mats(*s)))
def test_smith_form_matches_sympy(A):
    U, D, V = intmat.smith_normal_form(A)
    assert intmat.matmul(intmat.matmul(U, A), V) == D
    assert abs(intmat.det(U)) == 1 and abs(intmat.det(V)) == 1
    r = min(len(A), len(A[0]))
    diag = [D[i][i] for i in range(r)]
    ref = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
    assert diag == [abs(int(ref[i, i])) for i in range(r)]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: mats(n, n)))
def test_det_matches_sympy(A):
    assert intmat.det(A) == sympy.Matrix(A).det()
    assert intmat.rank(A) == sympy.Matrix(A).rank()


@settings(max_examples=150, deadline=None)
@given(shape.flatmap(lambda s: mats(*s)))
def test_kernel_is_saturated_nullspace(A):
    n = len(A[0])
    K = intmat.kernel(A, n)
    assert len(K) == n - sympy.Matrix(A).rank()
    for v in K:
        assert intmat.matvec(A, v) == [0] * len(A)
    if K:
        # saturated: the kernel lattice has trivial elementary divisors
        assert all(d == 1 for d in intmat.smith_diagonal(K))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda k: st.tuples(mats(k, 4), mats(k, k, -2, 2))))
def test_hnf_invariant_under_unimodular_change(args):
    vecs, U = args
    H = intmat.hnf_rows(vecs, 4)
    assert intmat.hnf_rows(H, 4) == H
    assert len(H) == sympy.Matrix(vecs).rank()
    if abs(sympy.Matrix(U).det()) == 1:
        assert intmat.hnf_rows(intmat.matmul(U, vecs), 4) == H


@settings(max_examples=100, deadline=None)
@given(mats(3, 3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solve_round_trip(A, x):
    b = intmat.matvec(A, x)
    sol = intmat.solve(A, b)
    assert sol is not None and intmat.matvec(A, sol) == b


def test_index_in():
    big = [[1, 0], [0, 1]]
    assert intmat.index_in(big, [[2, 0], [0, 3]]) == 6
    assert intmat.index_in(big, [[1, 1]]) == 0
    assert intmat.inverse_unimodular([[2, 1], [1, 1]]) == [[1, -1], [-1, 2]]
