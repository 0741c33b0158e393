import time

import numpy as np

from hyperpr.properties import COLUMNS, EXPECTED, check_level, format_matrix, property_matrix

import oracles

# [PAPER] structural table: commutative, associative, alternative, division,
# zero divisors, norm multiplicative
PRINTED = {
    1: "yyyyny",
    2: "yyyyny",
    4: "nyyyny",
    8: "nnyyny",
    16: "nnnnyn",
}


def test_expected_rows_match_printed_table():
    for dim, row in PRINTED.items():
        assert EXPECTED[dim] == tuple(c == "y" for c in row)


def test_property_matrix_reproduces_table_quickly():
    t0 = time.perf_counter()
    reports = property_matrix(samples=10_000)
    assert time.perf_counter() - t0 < 10.0
    assert [r.dim for r in reports] == [1, 2, 4, 8, 16]
    for r in reports:
        assert r.matches, format_matrix(reports)
    text = format_matrix(reports)
    assert "MISMATCH" not in text and "zero_divisors witness" in text


def test_sedenion_witnesses_check_out_with_oracle():
    rep = check_level(16, samples=100)
    assert set(rep.witnesses) >= {"commutative", "associative", "alternative", "zero_divisors"}
    e = np.eye(16)
    x, y = e[1] + e[10], e[4]
    left = oracles.mul(oracles.mul(y, x), x)
    right = oracles.mul(y, oracles.mul(x, x))
    assert np.linalg.norm(left - right) > 0.5


def test_octonion_non_associative_witness_with_oracle():
    rep = check_level(8, samples=100)
    assert "associative" in rep.witnesses and "alternative" not in rep.witnesses
    e = np.eye(8)
    assert np.linalg.norm(oracles.mul(oracles.mul(e[1], e[2]), e[4]) - oracles.mul(e[1], oracles.mul(e[2], e[4]))) > 1


def test_columns_order():
    assert COLUMNS == ("commutative", "associative", "alternative", "division", "zero_divisors", "norm_multiplicative")
