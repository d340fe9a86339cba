import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from manytoone.data import DataError, Dataset, parse_dataset, summarize

CK_DOSE0 = [202, 205, 188, 155, 160, 229, 107, 101, 277, 343]


def test_example_dataset_layout(ck_data):
    assert len(ck_data.records) == 60
    assert ck_data.groups == ("0", "62.5", "125", "250", "500", "1000")
    assert ck_data.control == "0"
    assert [len(a) for a in ck_data.arrays()] == [10] * 6


def test_dose0_summary_matches_exact_arithmetic(ck_summaries):
    # exact rational values of the 10 listed responses: mean 1967/10, var 164527/30
    s = ck_summaries[0]
    assert s.n == 10
    assert s.mean == pytest.approx(196.7, abs=1e-12)
    assert s.var == pytest.approx(164527 / 30, rel=1e-13)


def test_degenerate_minimum():
    ds = parse_dataset("g,y\na,0\na,0\nb,0\nb,0\n", "g", "y")
    sums = summarize(ds)
    assert [s.var for s in sums] == [0.0, 0.0]
    assert [s.n for s in sums] == [2, 2]


@pytest.mark.parametrize("values,mean,var", [([1, 1, 1], 1.0, 0.0), ([0, 2], 1.0, 2.0)])
def test_small_summaries(values, mean, var):
    ds = Dataset.from_groups([values, [5, 6]])
    s = summarize(ds)[0]
    assert (s.n, s.mean, s.var) == (len(values), mean, var)


def test_group_too_small():
    with pytest.raises(DataError, match="group too small"):
        parse_dataset("g,y\na,1\na,2\nb,3\n", "g", "y")


def test_missing_column_named():
    with pytest.raises(DataError, match="'resp'"):
        parse_dataset("g,y\na,1\na,2\n", "g", "resp")


def test_non_numeric_response():
    with pytest.raises(DataError, match="non-numeric"):
        parse_dataset("g,y\na,1\na,x\nb,1\nb,2\n", "g", "y")


def test_control_absent():
    with pytest.raises(DataError, match="control"):
        parse_dataset("g,y\na,1\na,2\nb,1\nb,2\n", "g", "y", control="c")


def test_single_group_rejected():
    with pytest.raises(DataError, match="2 distinct groups"):
        parse_dataset("g,y\na,1\na,2\n", "g", "y")


def test_control_override_and_order():
    ds = parse_dataset("g,y\n\nb,1\na,2\nc,3\na,4\nb,5\nc,6\n\n", "g", "y", control="a")
    assert ds.groups == ("a", "b", "c")
    assert [r[0] for r in ds.records] == ["b", "a", "c", "a", "b", "c"]


def test_whitespace_in_header_and_fields():
    ds = parse_dataset(" g , y \n a , 1.5\na,2\nb, 3\nb,4\n", "g", "y")
    assert ds.groups == ("a", "b")
    assert summarize(ds)[0].mean == 1.75


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=12),
       st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=12),
       st.randoms())
def test_summarize_permutation_invariant(a, b, rnd):
    ds = Dataset.from_groups([a, b])
    recs = list(ds.records)
    rnd.shuffle(recs)
    shuffled = Dataset(tuple(recs), ds.control)
    for s1, s2 in zip(summarize(ds), summarize(shuffled)):
        assert s1.n == s2.n
        assert s1.mean == pytest.approx(s2.mean, rel=1e-12, abs=1e-9)
        assert s1.var == pytest.approx(s2.var, rel=1e-9, abs=1e-7)


def test_within_ss_identity():
    rng = random.Random(3)
    groups = [[rng.gauss(0, 1 + g) for _ in range(rng.randint(2, 15))] for g in range(5)]
    ds = Dataset.from_groups(groups)
    lhs = sum((s.n - 1) * s.var for s in summarize(ds))
    rhs = sum(sum((v - sum(grp) / len(grp)) ** 2 for v in grp) for grp in groups)
    assert lhs == pytest.approx(rhs, rel=1e-9)
