import itertools

import pytest

from pabraid import (
    BraidTuple,
    IntPoly,
    NNMatrix,
    TreeMapSpec,
    block_boundaries,
    braid_char_poly,
    dominant_chain,
    dominant_matrix,
    dual_recessive_poly,
    poly_matrix_det,
    recessive_poly,
    transition_matrix,
    validate_structure,
)
from pabraid.treebuilder import StructureCheck, StructureReport

from helpers import GOLDEN_8x8


class TestBraidTuple:
    def test_parse_and_str(self):
        bt = BraidTuple.parse("4,2")
        assert bt.values == (4, 2) and str(bt) == "4,2"

    def test_derived_quantities(self):
        bt = BraidTuple((2, 2, 3))
        assert bt.k == 2
        assert bt.boundaries == (3, 6, 10)
        assert bt.size == 10
        assert bt.sign == -1
        assert bt.prefix == (2, 2)
        assert BraidTuple((4, 2)).sign == 1

    def test_rejects_short_tuple(self):
        with pytest.raises(ValueError, match="at least two"):
            BraidTuple((4,))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            BraidTuple((1, 0))
        with pytest.raises(ValueError):
            BraidTuple.parse("1,x")

    def test_block_boundaries(self):
        assert block_boundaries((4,)) == (5,)
        assert block_boundaries((4, 2)) == (5, 8)


class TestTransitionMatrix:
    def test_golden_example(self):
        assert transition_matrix((4, 2)).to_rows() == GOLDEN_8x8

    def test_smallest_tuple(self):
        assert transition_matrix((1, 1)).to_rows() == [
            [0, 1, 1, 0],
            [1, 0, 1, 0],
            [1, 0, 1, 1],
            [1, 0, 2, 0],
        ]

    @pytest.mark.parametrize("m1,m2", [(1, 2), (2, 1), (3, 3), (4, 2), (5, 1)])
    def test_last_row_of_two_star_tuples(self, m1, m2):
        mat = transition_matrix((m1, m2))
        n1, n2 = block_boundaries((m1, m2))
        last = {j: mat.entry(n2, j) for j in range(1, n2 + 1) if mat.entry(n2, j)}
        assert last == {1: 1, n1 + 1: 2}

    def test_rejects_single_parameter(self):
        with pytest.raises(ValueError):
            transition_matrix((4,))

    def test_size_matches_boundaries(self):
        for tv in ((1, 1), (4, 2), (2, 2, 3), (1, 2, 3, 4)):
            assert transition_matrix(tv).size == block_boundaries(tv)[-1]


class TestDominantMatrix:
    def test_golden_block(self):
        expected = [row[:6] for row in GOLDEN_8x8[:6]]
        assert dominant_matrix((4,)).to_rows() == expected

    def test_smallest_prefix(self):
        assert dominant_matrix((1,)).to_rows() == [[0, 1, 1], [1, 0, 1], [1, 0, 1]]

    def test_char_poly_examples(self):
        assert dominant_matrix((4,)).char_poly() == IntPoly.parse("t^6 - t^5 - 2*t")
        assert dominant_matrix((1,)).char_poly() == IntPoly.parse("t^3 - t^2 - 2*t")

    def test_matches_chain_polynomials(self):
        for prefix in ((1,), (3,), (1, 1), (2, 2), (4, 1), (2, 1, 2)):
            assert dominant_matrix(prefix).char_poly() == dominant_chain(prefix)[-1]


def _recipe_oracle(prefix, appended, reciprocal):
    # recompute the bordered determinant directly on a chosen extension
    mat = transition_matrix(tuple(prefix) + (appended,))
    cut = block_boundaries(prefix)[-1] + 1
    t = IntPoly.monomial(1)
    rows = []
    for i in range(1, cut + 1):
        src = mat.size if i == cut else i
        row = []
        for j in range(1, cut + 1):
            a = mat.entry(src, j)
            if reciprocal:
                row.append(IntPoly((1,)) - t * a if src == j else IntPoly((0, -a)))
            else:
                row.append(t - a if src == j else IntPoly((-a,)))
        rows.append(row)
    return poly_matrix_det(rows)


class TestRecessivePolynomials:
    def test_worked_example(self):
        assert recessive_poly((4,)) == IntPoly.parse("-2*t^5 - t + 1")

    def test_smallest_prefix(self):
        assert recessive_poly((1,)) == IntPoly.parse("-2*t^2 - t + 1")

    def test_dual_examples(self):
        assert dual_recessive_poly((4,)) == IntPoly.parse("t^6 - t^5 - 2*t")
        assert dual_recessive_poly((1,)) == IntPoly.parse("t^3 - t^2 - 2*t")

    @pytest.mark.parametrize("prefix", [(1,), (4,), (1, 1), (2, 3), (2, 2, 1)])
    def test_independent_of_appended_parameter(self, prefix):
        for reciprocal in (False, True):
            one = _recipe_oracle(prefix, 1, reciprocal)
            two = _recipe_oracle(prefix, 2, reciprocal)
            three = _recipe_oracle(prefix, 3, reciprocal)
            assert one == two == three

    @pytest.mark.parametrize("prefix", [(1,), (4,), (1, 1), (3, 2), (1, 2, 1)])
    def test_mirror_identities(self, prefix):
        sign = 1 if len(prefix) % 2 == 1 else -1
        dom = dominant_chain(prefix)[-1]
        assert recessive_poly(prefix) == dom.reciprocal(dom.degree) * sign
        assert dual_recessive_poly(prefix) == dom * sign


class TestValidateStructure:
    @pytest.mark.parametrize("tv", [(4, 2), (1, 1), (2, 2, 3), (1, 2, 3, 1)])
    def test_family_matrices_pass(self, tv):
        report = validate_structure(tv)
        assert report.ok
        assert len(report.checks) == 5
        assert report.failures == ()

    def test_failure_reporting(self):
        bad = StructureCheck("example", False, "entry (2,3) = 0")
        report = StructureReport((1, 1), (bad,))
        assert not report.ok
        assert report.failures == (bad,)
        assert "FAIL" in str(report)


class TestGridIdentities:
    TUPLES = [
        tv
        for length in (2, 3)
        for tv in itertools.product(range(1, 4), repeat=length)
    ]

    def test_char_poly_equals_formula(self):
        for tv in self.TUPLES:
            assert transition_matrix(tv).char_poly() == braid_char_poly(tv)

    def test_anti_reciprocity(self):
        for tv in self.TUPLES:
            bt = BraidTuple(tv)
            poly = braid_char_poly(bt)
            mirrored = poly.reciprocal(bt.size)
            assert poly == (mirrored if bt.sign > 0 else -mirrored)
            assert abs(poly.coeffs[0]) == 1

    def test_everything_primitive(self):
        for tv in self.TUPLES:
            assert transition_matrix(tv).is_primitive()
        for prefix in sorted({tv[:-1] for tv in self.TUPLES}):
            assert dominant_matrix(prefix).is_primitive()


class TestTreeMapSpec:
    def test_counts_reproduce_golden_matrix(self):
        golden = NNMatrix.from_rows(GOLDEN_8x8)
        images = {}
        for j in range(1, 9):
            path = []
            for i in range(1, 9):
                path.extend([i] * golden.entry(i, j))
            images[j] = tuple(path)
        spec = TreeMapSpec(8, images)
        assert spec.matches(golden)
        assert spec.transition_matrix() == golden

    def test_orientation_sign_is_ignored_in_counts(self):
        spec = TreeMapSpec(2, {1: (2, -2), 2: (1,)})
        assert spec.transition_matrix() == NNMatrix.from_rows([[0, 1], [2, 0]])

    def test_validation(self):
        with pytest.raises(ValueError):
            TreeMapSpec(2, {3: (1,)})
        with pytest.raises(ValueError):
            TreeMapSpec(2, {1: (5,)})
