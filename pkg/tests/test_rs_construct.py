import itertools
import math
from fractions import Fraction

import pytest

from insdel.combinat import binomial
from insdel.core import BoundKind, ResourceCapError
from insdel.rs_construct import (
    Code,
    CodeFileError,
    construct_insdel_code_rs,
    count_lambda_repeating,
    gamma_degree_bound,
    neighborhood_edge_bound,
    read_code_file,
    rs_generate,
    rs_spec,
    verify_code_distance,
    write_code_file,
)
from insdel.words import Word, edit_distance, is_lambda_nonrepeating, word


def test_rs_spec_validation():
    with pytest.raises(ValueError):
        rs_spec(6, 4, 2)  # not prime
    with pytest.raises(ValueError):
        rs_spec(5, 6, 2)  # n > q
    with pytest.raises(ValueError):
        rs_spec(5, 3, 2, (0, 0, 1))  # repeated evaluation point


def test_rs_generate_constants():
    ws = rs_generate(rs_spec(5, 4, 1, (0, 1, 2, 3)))
    assert [w.symbols for w in ws] == [(c, c, c, c) for c in range(5)]


def test_rs_generate_mds_distance():
    ws = rs_generate(rs_spec(3, 3, 2, (0, 1, 2)))
    assert len(ws) == 9
    min_hamming = min(
        sum(a != b for a, b in zip(x.symbols, y.symbols))
        for x, y in itertools.combinations(ws, 2)
    )
    assert min_hamming == 2  # n - k + 1


def test_rs_codeword_count():
    for q, n, k in [(2, 2, 2), (5, 5, 2), (7, 4, 3)]:
        assert len(rs_generate(rs_spec(q, n, k))) == q**k


def test_rs_generate_cap():
    with pytest.raises(ResourceCapError):
        rs_generate(rs_spec(13, 13, 5), cap=1000)


def test_rs_interpolation_property():
    # an [4,2] RS codeword is determined by its values on any 2 coordinates
    ws = rs_generate(rs_spec(5, 4, 2))
    for positions in itertools.combinations(range(4), 2):
        for target in itertools.product(range(5), repeat=2):
            hits = [
                w for w in ws if tuple(w.symbols[i] for i in positions) == target
            ]
            assert len(hits) == 1


def test_count_lambda_repeating_matches_per_word_check():
    spec = rs_spec(5, 5, 3)
    count = count_lambda_repeating(spec, 1)
    direct = sum(
        1 for w in rs_generate(spec) if not is_lambda_nonrepeating(w, 1)
    )
    assert count == direct
    assert count <= binomial(5, 2) * 5**2  # <= C(n,2) q^{k-lambda}


def test_count_lambda_repeating_bounds():
    assert count_lambda_repeating(rs_spec(5, 5, 3), 5) == 0  # single window
    assert count_lambda_repeating(rs_spec(7, 5, 3), 1) <= binomial(5, 2) * 7**2


def test_gamma_degree_bound_values():
    assert gamma_degree_bound(4, 6) == 36
    assert gamma_degree_bound(5, 4) == 25


def test_gamma_degree_bound_dominates_brute_force():
    # conflict degree inside small RS codes, over all enumerable specs
    for q, n, d in [(5, 4, 6), (5, 4, 4), (7, 4, 6), (5, 5, 6), (7, 5, 8)]:
        k = n - d // 2 + 1
        ws = rs_generate(rs_spec(q, n, k))
        max_deg = max(
            sum(1 for y in ws if y != x and edit_distance(x, y) <= d - 2) for x in ws
        )
        assert max_deg < gamma_degree_bound(n, d)


def test_neighborhood_edge_bound():
    bv = neighborhood_edge_bound(90, 6)
    expect = Fraction(2) ** 20 * 6 * Fraction(math.e) ** 6 * Fraction(90, 4) ** 6
    assert bv.value == expect and bv.kind is BoundKind.ESTIMATE
    assert "within stated domain" in bv.note
    assert "report-only" in neighborhood_edge_bound(10, 6).note
    assert neighborhood_edge_bound(91, 6).value > bv.value  # monotone in n


def test_construct_insdel_code_rs():
    code = construct_insdel_code_rs(rs_spec(5, 4, 2), 6, lam=1)
    assert len(code) >= 1
    assert verify_code_distance(code, 6).ok
    code = construct_insdel_code_rs(rs_spec(7, 5, 4), 4, lam=1)
    assert verify_code_distance(code, 4).ok
    assert code.verified_min_edit_distance == 4


def test_construct_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        construct_insdel_code_rs(rs_spec(5, 4, 3), 6)  # needs k = 2


def test_verify_code_distance_examples():
    rep = Code(words=tuple(Word((c,) * 4, 5) for c in range(5)), n=4, q=5)
    res = verify_code_distance(rep, 8)
    assert res.ok and res.min_distance == 8  # 2n: disjoint symbols, LCS 0
    vt = Code(
        words=tuple(
            Word(t, 2) for t in [(0, 0, 0, 0), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 1, 1)]
        ),
        n=4,
        q=2,
    )
    res = verify_code_distance(vt, 4)
    assert res.ok and res.min_distance == 4
    single = Code(words=(Word((0, 1), 2),), n=2, q=2)
    res = verify_code_distance(single, 4)
    assert res.ok and res.min_distance == 2 * 2 + 1  # "infinite" sentinel


def test_verify_code_distance_failure_witness():
    bad = Code(words=(Word((0, 1, 0), 2), Word((0, 1, 1), 2)), n=3, q=2)
    res = verify_code_distance(bad, 4)
    assert not res.ok and res.min_distance == 2 and res.witness is not None


def test_code_file_round_trip(tmp_path):
    code = construct_insdel_code_rs(rs_spec(5, 4, 2), 6, lam=1)
    path = tmp_path / "code.txt"
    write_code_file(path, code, d=6)
    text = path.read_text(encoding="utf-8")
    assert text.startswith("5 4 6\n") and text.endswith("\n")
    loaded, d = read_code_file(path)
    assert d == 6
    assert tuple(w.symbols for w in loaded.words) == tuple(w.symbols for w in code.words)
    # byte-exact rewrite
    write_code_file(tmp_path / "again.txt", loaded, d=6)
    assert (tmp_path / "again.txt").read_text(encoding="utf-8") == text


def test_code_file_parse_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 3\n0 1 2\n0 1 3\n", encoding="utf-8")
    with pytest.raises(CodeFileError) as err:
        read_code_file(bad)
    assert err.value.line == 3
    bad.write_text("3 3\n0 1\n", encoding="utf-8")
    with pytest.raises(CodeFileError) as err:
        read_code_file(bad)
    assert err.value.line == 2
    bad.write_text("", encoding="utf-8")
    with pytest.raises(CodeFileError):
        read_code_file(bad)


def test_word_length_validation_in_code():
    with pytest.raises(ValueError):
        Code(words=(word((0, 1), 2), word((0, 1, 1), 2)), n=2, q=2)
