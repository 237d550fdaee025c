import pytest

from coxfold.coxeter import (
    CoxeterMatrix,
    ParseError,
    classify_finite,
    components,
    coxeter_order,
    parse_input,
    type_string,
    validate,
)
from coxfold.cyclo import INF

from conftest import MATRICES, a_matrix


def test_validate_ok():
    assert validate(MATRICES["a3"]) == []
    assert validate(MATRICES["dinf"]) == []


def test_validate_asymmetric():
    bad = CoxeterMatrix(((1, 3, 2), (4, 1, 3), (2, 3, 1)))
    errs = validate(bad)
    assert any("asymmetric at (1,2)" in e for e in errs)


def test_validate_diagonal():
    bad = CoxeterMatrix(((2, 3), (3, 1)))
    assert any("diagonal must be 1" in e for e in validate(bad))


def test_validate_offdiagonal_too_small():
    bad = CoxeterMatrix(((1, 1), (1, 1)))
    assert any(">= 2" in e for e in validate(bad))


def test_validate_rank_range():
    assert any("rank" in e for e in validate(a_matrix(17)))
    assert validate(a_matrix(17), rank_cap=20) == []


def test_components():
    a3 = MATRICES["a3"]
    assert components(a3, [1, 2, 3]) == ((1, 2, 3),)
    assert components(a3, [1, 3]) == ((1,), (3,))
    d4 = MATRICES["d4"]
    assert components(d4, [1, 3, 4]) == ((1,), (3,), (4,))
    with pytest.raises(IndexError):
        components(a3, [0, 1])


def test_components_partition_property():
    d4 = MATRICES["d4"]
    comps = components(d4, [1, 2, 3, 4])
    flat = sorted(s for c in comps for s in c)
    assert flat == [1, 2, 3, 4]
    # no edge with label >= 3 may cross two parts
    for i, ci in enumerate(comps):
        for cj in comps[i + 1:]:
            for s in ci:
                for t in cj:
                    assert d4.m(s, t) == 2


def labels_of(matrix, subset):
    labs = classify_finite(matrix, subset)
    return None if labs is None else sorted(str(lab) for lab in labs)


def test_classify_type_a():
    assert labels_of(MATRICES["a3"], [1, 2, 3]) == ["A3"]
    assert labels_of(MATRICES["a3"], [1, 3]) == ["A1", "A1"]
    assert labels_of(MATRICES["a5"], [1, 2, 3, 4, 5]) == ["A5"]


def test_classify_cycle_is_infinite():
    assert classify_finite(MATRICES["triangle"], [1, 2, 3]) is None


def test_classify_dihedral():
    assert labels_of(MATRICES["b2"], [1, 2]) == ["B2"]
    assert labels_of(MATRICES["a2"], [1, 2]) == ["A2"]
    assert labels_of(MATRICES["i25"], [1, 2]) == ["I2(5)"]
    assert labels_of(MATRICES["i26"], [1, 2]) == ["I2(6)"]
    assert classify_finite(MATRICES["dinf"], [1, 2]) is None


def test_classify_b_h_f():
    assert labels_of(MATRICES["b3"], [1, 2, 3]) == ["B3"]
    h3 = CoxeterMatrix.from_labels(3, {(1, 2): 5, (2, 3): 3})
    assert labels_of(h3, [1, 2, 3]) == ["H3"]
    h4 = CoxeterMatrix.from_labels(4, {(1, 2): 5, (2, 3): 3, (3, 4): 3})
    assert labels_of(h4, [1, 2, 3, 4]) == ["H4"]
    f4 = CoxeterMatrix.from_labels(4, {(1, 2): 3, (2, 3): 4, (3, 4): 3})
    assert labels_of(f4, [1, 2, 3, 4]) == ["F4"]
    # the 4 must sit on the middle edge of a 4-chain and nowhere else
    f5ish = CoxeterMatrix.from_labels(
        5, {(1, 2): 3, (2, 3): 4, (3, 4): 3, (4, 5): 3}
    )
    assert classify_finite(f5ish, [1, 2, 3, 4, 5]) is None
    b4 = CoxeterMatrix.from_labels(4, {(1, 2): 4, (2, 3): 3, (3, 4): 3})
    assert labels_of(b4, [1, 2, 3, 4]) == ["B4"]


def test_classify_d_e():
    assert labels_of(MATRICES["d4"], [1, 2, 3, 4]) == ["D4"]
    d5 = CoxeterMatrix.from_labels(
        5, {(1, 2): 3, (2, 3): 3, (3, 4): 3, (3, 5): 3}
    )
    assert labels_of(d5, [1, 2, 3, 4, 5]) == ["D5"]
    e6 = CoxeterMatrix.from_labels(
        6, {(1, 3): 3, (3, 4): 3, (4, 5): 3, (5, 6): 3, (2, 4): 3}
    )
    assert labels_of(e6, [1, 2, 3, 4, 5, 6]) == ["E6"]
    e7 = CoxeterMatrix.from_labels(
        7, {(1, 3): 3, (3, 4): 3, (4, 5): 3, (5, 6): 3, (6, 7): 3, (2, 4): 3}
    )
    assert labels_of(e7, list(range(1, 8))) == ["E7"]
    e8 = CoxeterMatrix.from_labels(
        8, {(1, 3): 3, (3, 4): 3, (4, 5): 3, (5, 6): 3, (6, 7): 3, (7, 8): 3,
            (2, 4): 3}
    )
    assert labels_of(e8, list(range(1, 9))) == ["E8"]
    # affine-style branched shapes are infinite
    e6tilde = CoxeterMatrix.from_labels(
        7, {(1, 3): 3, (3, 4): 3, (4, 5): 3, (5, 6): 3, (2, 4): 3, (2, 7): 3}
    )
    assert classify_finite(e6tilde, list(range(1, 8))) is None
    star = CoxeterMatrix.from_labels(
        5, {(1, 5): 3, (2, 5): 3, (3, 5): 3, (4, 5): 3}
    )
    assert classify_finite(star, [1, 2, 3, 4, 5]) is None


def test_classify_two_heavy_edges_infinite():
    c2tilde = CoxeterMatrix.from_labels(3, {(1, 2): 4, (2, 3): 4})
    assert classify_finite(c2tilde, [1, 2, 3]) is None
    g2tilde = CoxeterMatrix.from_labels(3, {(1, 2): 6, (2, 3): 3})
    assert classify_finite(g2tilde, [1, 2, 3]) is None


def test_orders():
    assert coxeter_order(MATRICES["a3"], [1, 2, 3]) == 24
    assert coxeter_order(MATRICES["b3"], [1, 2, 3]) == 48
    assert coxeter_order(MATRICES["d4"], [1, 2, 3, 4]) == 192
    assert coxeter_order(MATRICES["i26"], [1, 2]) == 12
    assert coxeter_order(MATRICES["a3"], [1, 3]) == 4
    assert coxeter_order(MATRICES["triangle"], [1, 2, 3]) is None
    h3 = CoxeterMatrix.from_labels(3, {(1, 2): 5, (2, 3): 3})
    assert coxeter_order(h3, [1, 2, 3]) == 120
    f4 = CoxeterMatrix.from_labels(4, {(1, 2): 3, (2, 3): 4, (3, 4): 3})
    assert coxeter_order(f4, [1, 2, 3, 4]) == 1152


def test_type_string():
    assert type_string(MATRICES["a3"]) == "A3"
    assert type_string(MATRICES["a3"], [1, 3]) == "A1 x A1"
    assert type_string(MATRICES["triangle"]) == "infinite"
    assert type_string(MATRICES["dinf"]) == "I2(inf)"
    assert type_string(MATRICES["a3"], []) == "trivial"


# ---------------------------------------------------------------------------
# input files


GOOD = """\
# a comment line
rank 3
m 1 2 3   # trailing comment
m 2 3 inf

auto flip 1>3 3>1
auto id
"""


def test_parse_good():
    parsed = parse_input(GOOD)
    m = parsed.matrix
    assert m.rank == 3
    assert m.m(1, 2) == 3
    assert m.m(2, 3) == INF
    assert m.m(1, 3) == 2  # unlisted pairs default to 2
    assert parsed.autos == (("flip", (3, 2, 1)), ("id", (1, 2, 3)))


def problems_of(text):
    with pytest.raises(ParseError) as exc:
        parse_input(text)
    return exc.value.problems


def test_parse_requires_rank_first():
    probs = problems_of("m 1 2 3\nrank 2\n")
    assert probs[0][0] == 1
    assert "rank" in probs[0][1]


def test_parse_duplicate_pair():
    probs = problems_of("rank 2\nm 1 2 3\nm 2 1 4\n")
    assert any(ln == 3 and "duplicate m line" in msg for ln, msg in probs)


def test_parse_bad_indices_and_labels():
    probs = problems_of("rank 2\nm 1 3 3\nm 1 1 3\nm 1 2 1\n")
    assert any(ln == 2 and "out of range" in msg for ln, msg in probs)
    assert any(ln == 3 and "diagonal" in msg for ln, msg in probs)
    assert any(ln == 4 and ">= 2" in msg for ln, msg in probs)


def test_parse_bad_auto():
    probs = problems_of("rank 3\nauto bad 1>2\n")
    assert any("not a permutation" in msg for _, msg in probs)
    probs = problems_of("rank 3\nauto dup 1>2 1>3\n")
    assert any("duplicate source" in msg for _, msg in probs)
    probs = problems_of("rank 3\nauto oob 1>9\n")
    assert any("out of range" in msg for _, msg in probs)


def test_parse_unknown_directive():
    probs = problems_of("rank 2\nfrobnicate 1\n")
    assert any("unknown directive" in msg for _, msg in probs)


def test_parse_empty():
    probs = problems_of("# nothing\n")
    assert any("no rank" in msg for _, msg in probs)
