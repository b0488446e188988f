from fractions import Fraction
from itertools import combinations
from random import Random

import pytest

from tdpverify.errors import CtxMismatch, DimensionMismatch
from tdpverify.exactfield import FieldCtx
from tdpverify.linalg import SparseMatrix, in_span, rank, sum_is_direct

Q = FieldCtx.rational()
FP = FieldCtx.prime(1000003)


def mat(nrows, cols, ctx=Q):
    return SparseMatrix.from_columns(nrows, [dict(c) for c in cols], ctx)


def identity(n, ctx=Q):
    return mat(n, [{i: ctx.one()} for i in range(n)], ctx)


def minor_rank(matrix: SparseMatrix) -> int:
    """Independent oracle: largest k with a nonsingular k x k minor,
    determinants by Laplace expansion over Fractions."""
    rows = range(matrix.nrows)
    cols = range(matrix.ncols)
    dense = [[Fraction(matrix.entry(i, j).value) for j in cols] for i in rows]

    def det(rs, cs):
        if len(rs) == 1:
            return dense[rs[0]][cs[0]]
        total = Fraction(0)
        sign = 1
        for t, r in enumerate(rs):
            a = dense[r][cs[0]]
            if a:
                total += sign * a * det(rs[:t] + rs[t + 1 :], cs[1:])
            sign = -sign
        return total

    for k in range(min(matrix.nrows, matrix.ncols), 0, -1):
        for rs in combinations(rows, k):
            for cs in combinations(cols, k):
                if det(list(rs), list(cs)) != 0:
                    return k
    return 0


def random_sparse(rng, nrows, ncols, ctx, density=0.3, span=5):
    cols = []
    for _ in range(ncols):
        col = {}
        for i in range(nrows):
            if rng.random() < density:
                v = rng.randint(-span, span)
                if v:
                    col[i] = ctx.from_integer(v)
        cols.append(col)
    return mat(nrows, cols, ctx)


class TestRank:
    def test_zero_matrix(self):
        assert rank(mat(3, [{}, {}])) == 0

    def test_identity(self):
        assert rank(identity(4)) == 4
        assert rank(identity(4, FP)) == 4

    def test_prime_rank_at_most_rational(self):
        # 100 random sparse 20x20 integer matrices, both ranks computed
        # by their own elimination path
        rng = Random(2024)
        for _ in range(100):
            cols = []
            for _ in range(20):
                col = {}
                for i in range(20):
                    if rng.random() < 0.2:
                        v = rng.randint(-9, 9)
                        if v:
                            col[i] = v
                cols.append(col)
            rq = mat(20, [{i: Q.from_integer(v) for i, v in c.items()} for c in cols], Q).rank()
            rp = mat(20, [{i: FP.from_integer(v) for i, v in c.items()} for c in cols], FP).rank()
            assert rp <= rq

    def test_matches_minor_oracle(self):
        rng = Random(7)
        for ctx in (Q, FP):
            for _ in range(25):
                m = random_sparse(rng, 4, 4, ctx, density=0.5)
                assert m.rank() == minor_rank(m)

    def test_rank_equals_transpose_rank(self):
        rng = Random(99)
        for ctx in (Q, FP):
            for _ in range(20):
                m = random_sparse(rng, 8, 11, ctx)
                assert m.rank() == m.transpose().rank()

    def test_rational_entries(self):
        m = mat(2, [{0: Q.parse("1/2"), 1: Q.parse("1/3")}, {0: Q.parse("3/2"), 1: Q.parse("5")}])
        assert m.rank() == 2
        # third column is 3x the first, so the rank stays 2
        dep = mat(2, [{0: Q.parse("1/2"), 1: Q.parse("1/3")}, {0: Q.parse("3/2"), 1: Q.parse("5")},
                      {0: Q.parse("3/2"), 1: Q.one()}])
        assert dep.rank() == 2


class TestInSpan:
    def test_zero_vector(self):
        m = mat(3, [{0: Q.one(), 1: Q.one()}, {2: Q.one()}])
        ok, coeffs = in_span(m, {})
        assert ok and all(c.is_zero for c in coeffs)

    def test_not_in_span(self):
        m = mat(2, [{0: Q.one()}])
        ok, coeffs = in_span(m, {1: Q.one()})
        assert not ok and coeffs is None

    def test_example_coefficients(self):
        # columns e1+e2 and e2; e1 = 1*(e1+e2) - 1*e2
        m = mat(2, [{0: Q.one(), 1: Q.one()}, {1: Q.one()}])
        ok, coeffs = in_span(m, {0: Q.one()})
        assert ok
        assert [str(c) for c in coeffs] == ["1", "-1"]

    def test_coefficients_reproduce_vector(self):
        rng = Random(5)
        for ctx in (Q, FP):
            hits = 0
            for _ in range(40):
                m = random_sparse(rng, 6, 4, ctx, density=0.5)
                target = {}
                weights = [ctx.from_integer(rng.randint(-3, 3)) for _ in range(4)]
                for j, w in enumerate(weights):
                    for i, v in m.column(j).items():
                        target[i] = target.get(i, ctx.zero()) + w * v
                target = {i: v for i, v in target.items() if not v.is_zero}
                ok, coeffs = in_span(m, target)
                assert ok
                recon = {}
                for j, c in enumerate(coeffs):
                    for i, v in m.column(j).items():
                        recon[i] = recon.get(i, ctx.zero()) + c * v
                recon = {i: v for i, v in recon.items() if not v.is_zero}
                assert recon == target
                hits += 1
            assert hits == 40

    def test_ctx_mismatch(self):
        m = mat(2, [{0: Q.one()}])
        with pytest.raises(CtxMismatch):
            in_span(m, {0: FP.one()})


class TestSumIsDirect:
    def test_disjoint_axes(self):
        a = mat(2, [{0: Q.one()}])
        b = mat(2, [{1: Q.one()}])
        assert sum_is_direct(a, b)

    def test_same_line(self):
        a = mat(2, [{0: Q.one()}])
        assert not sum_is_direct(a, a)

    def test_overlapping_spans(self):
        # span{e1+e2} meets span{e2, e1-e2}: ranks 1 + 2 but stacked rank 2
        a = mat(2, [{0: Q.one(), 1: Q.one()}])
        b = mat(2, [{1: Q.one()}, {0: Q.one(), 1: Q.from_integer(-1)}])
        assert a.hstack(b).rank() == 2
        assert not sum_is_direct(a, b)

    def test_subadditive_rank(self):
        rng = Random(31)
        for _ in range(20):
            a = random_sparse(rng, 6, 3, Q)
            b = random_sparse(rng, 6, 3, Q)
            stacked = a.hstack(b).rank()
            assert stacked <= a.rank() + b.rank()
            assert sum_is_direct(a, b) == (stacked == a.rank() + b.rank())

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            sum_is_direct(mat(2, [{0: Q.one()}]), mat(3, [{0: Q.one()}]))


class TestFormats:
    def test_dump(self):
        m = SparseMatrix.from_entries(
            3, 2, [(2, 0, Q.parse("1/2")), (0, 0, Q.one()), (1, 1, Q.from_integer(-4))], Q
        )
        assert m.dump() == "3 2 rational\n0 0 1\n2 0 1/2\n1 1 -4\n"

    def test_zero_entries_dropped(self):
        m = mat(2, [{0: Q.zero(), 1: Q.one()}])
        assert m.nnz() == 1

    def test_bad_row_rejected(self):
        with pytest.raises(DimensionMismatch):
            mat(2, [{5: Q.one()}])
