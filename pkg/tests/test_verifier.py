"""Verifier semantics: checks, searches, scans, alternation, and reports."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from algid.algebra_core import Msc, Vec
from algid.canon_catalog import REGIME_CHAR2, family
from algid.errors import AlgidError, SearchSpaceTooLarge, UnsupportedPrime
from algid.exactnum import F2, F3, F5, QQ, field_make
from algid.expander import coordinate_env, eval_node
from algid.identity_lang import get_identity, is_multilinear, parse_identity
from algid.multipoly import parse_poly
from algid.verifier import (
    PASS,
    FAIL,
    SKIP,
    REPORT_SCHEMA,
    SCAN_PRIMES,
    TARGETS,
    alternating_base_vector,
    alternating_determinant_law,
    alternating_sum,
    alternating_vanishes,
    check_formal,
    check_functional,
    check_iso,
    holds_on_basis_tuples,
    msc_from_scan_index,
    scan_algebras,
    scan_field,
    search_iso,
    verify_theorem,
    word_shapes,
)


def _brute_force_holds(A, ident):
    """Evaluate the identity at every tuple of elements of F_p^2."""
    f = A.field
    names = []
    seen = set()
    from algid.identity_lang import identity_variables

    names = identity_variables(ident)
    points = [Vec(f, [a, b]) for a in f.elements() for b in f.elements()]
    for combo in itertools.product(points, repeat=len(names)):
        env = dict(zip(names, combo))
        if eval_node(A, ident.lhs, env) != eval_node(A, ident.rhs, env):
            return False
    return True


class TestChecks:
    def test_formal_witness_on_known_failure(self):
        A12 = family("A12").instantiate(QQ, ())
        res = check_formal(A12, get_identity("I2"))
        assert not res.ok
        assert res.witness_text() == "e2 coefficient of x1 y1 = 2"
        assert check_formal(A12, get_identity("I4")).ok

    def test_functional_requires_finite_field(self):
        A = family("A12").instantiate(QQ, ())
        with pytest.raises(AlgidError):
            check_functional(A, get_identity("I1"))

    def test_functional_matches_brute_force_f2(self):
        idents = [get_identity(n) for n in ("I1", "I5", "I18", "I19", "I25")]
        for index in (0, 3, 37, 129, 255, 1000, 4095):
            A = msc_from_scan_index(2, index)
            for ident in idents:
                assert check_functional(A, ident).ok == _brute_force_holds(A, ident)

    def test_functional_matches_brute_force_f3(self):
        idents = [get_identity(n) for n in ("I2", "I19")]
        for index in (0, 1, 40, 2186, 6560):
            A = msc_from_scan_index(3, index)
            for ident in idents:
                assert check_functional(A, ident).ok == _brute_force_holds(A, ident)

    def test_formal_implies_functional(self):
        for index in (5, 64, 77, 200):
            A = msc_from_scan_index(2, index)
            for name in ("I1", "I19", "I23"):
                ident = get_identity(name)
                if check_formal(A, ident).ok:
                    assert check_functional(A, ident).ok

    def test_functional_weaker_than_formal_example(self):
        # x^p = x makes some non-multilinear identities hold pointwise only
        ident = get_identity("I19")
        formal = scan_algebras(2, ident, "formal")
        functional = scan_algebras(2, ident, "functional")
        assert (formal & ~functional).sum() == 0
        gap = (~formal & functional).nonzero()[0]
        assert len(gap) > 0
        A = msc_from_scan_index(2, int(gap[0]))
        assert not check_formal(A, ident).ok
        assert check_functional(A, ident).ok
        assert _brute_force_holds(A, ident)

    def test_multilinear_equals_basis_tuples(self):
        ident = get_identity("I18")
        assert is_multilinear(ident)
        for index in (0, 17, 100, 731, 2049):
            A = msc_from_scan_index(2, index)
            assert holds_on_basis_tuples(A, ident) == check_formal(A, ident).ok

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=255))
    def test_multilinear_triple_equivalence_f2(self, index):
        A = msc_from_scan_index(2, index)
        for name in ("I1", "I16", "I18"):
            ident = get_identity(name)
            assert is_multilinear(ident)
            formal = check_formal(A, ident).ok
            assert check_functional(A, ident).ok == formal
            assert holds_on_basis_tuples(A, ident) == formal


class TestIsoSearch:
    def test_known_equality_returns_identity_matrix(self):
        A5 = family("A5_2").instantiate(F2, (F2.scalar(1),))
        A9 = family("A9_2").instantiate(F2, ())
        g = search_iso(A5.opposite(), A9)
        assert g is not None
        assert g[0][0].value == 1 and g[1][1].value == 1
        assert g[0][1].value == 0 and g[1][0].value == 0
        assert check_iso(A5.opposite(), A9, g)

    def test_search_finds_printed_witness_class(self):
        A3 = family("A3_2").instantiate(F2, (F2.scalar(0), F2.scalar(1)))
        g = search_iso(A3.opposite(), A3)
        if g is not None:
            assert check_iso(A3.opposite(), A3, g)

    def test_search_returns_none_for_non_isomorphic(self):
        A10 = family("A10_2").instantiate(F2, ())
        A12 = family("A12_2").instantiate(F2, ())
        assert search_iso(A10, A12) is None

    def test_search_rejects_rationals(self):
        A = family("A12").instantiate(QQ, ())
        with pytest.raises(AlgidError):
            search_iso(A, A)

    def test_search_space_guard(self):
        f13 = field_make(13)
        A = Msc.from_scalars(f13, [[0, 0, 0, 0], [1, 0, 0, 0]])
        with pytest.raises(SearchSpaceTooLarge):
            search_iso(A, A)


class TestAlternating:
    def test_twelve_shapes(self):
        shapes = word_shapes(3)
        assert len(shapes) == 12
        assert len({label for label, _ in shapes}) == 12

    def test_three_variable_alternation_vanishes_generic(self):
        for fld in (QQ, F2, F3):
            A = Msc.generic(fld)
            for _, shape in word_shapes(3):
                assert alternating_vanishes(A, shape, 3)

    def test_two_variable_law_generic(self):
        A = Msc.generic(QQ)
        for _, shape in word_shapes(2):
            assert alternating_determinant_law(A, shape)

    def test_base_vector_of_plain_product(self):
        # alternation of v1 v2 at (e1, e2) is e1 e2 - e2 e1 = column2 - column3
        A = Msc.generic(QQ)
        label, shape = word_shapes(2)[0]
        assert label == "v1 v2"
        u0 = alternating_base_vector(A, shape)
        assert u0.lift().entries[0] == parse_poly("a2 - a3", QQ)
        assert u0.lift().entries[1] == parse_poly("b2 - b3", QQ)

    def test_alternating_sum_signs(self):
        node = alternating_sum(word_shapes(2)[0][1], 2)
        assert sorted(c for c, _ in node.terms) == [-1, 1]

    def test_shapes_guard(self):
        with pytest.raises(AlgidError):
            word_shapes(4)


class TestScan:
    def test_supported_primes_guard(self):
        assert SCAN_PRIMES == (2, 3, 5)
        with pytest.raises(UnsupportedPrime):
            scan_field(7, get_identity("I1"))

    def test_commutativity_counts_are_p_to_the_sixth(self):
        # uv = vu forces column2 = column3, leaving six free entries
        assert scan_field(2, get_identity("I1")) == 64
        assert scan_field(3, get_identity("I1")) == 729

    def test_anticommutativity_counts(self):
        # char 2: same as commutativity; char 3: columns 1 and 4 vanish
        assert scan_field(2, get_identity("I2")) == 64
        assert scan_field(3, get_identity("I2")) == 9

    def test_scan_index_roundtrip(self):
        ok = scan_algebras(2, get_identity("I2"))
        hits = ok.nonzero()[0]
        assert len(hits) == 64
        for index in hits[:5]:
            A = msc_from_scan_index(2, int(index))
            assert check_formal(A, get_identity("I2")).ok
        misses = (~ok).nonzero()[0]
        A = msc_from_scan_index(2, int(misses[0]))
        assert not check_formal(A, get_identity("I2")).ok

    def test_functional_count_dominates_formal(self):
        for name in ("I19", "I25"):
            ident = get_identity(name)
            assert scan_field(2, ident, "functional") >= scan_field(2, ident)


class TestReports:
    def test_unknown_target(self):
        with pytest.raises(AlgidError):
            verify_theorem("NoSuchTarget")

    def test_targets_tuple(self):
        assert "Opp41" in TARGETS and "Section3Computations" in TARGETS
        assert len(TARGETS) == 8

    def test_opp41_all_pass(self):
        rep = verify_theorem("Opp41")
        assert rep.ok
        assert rep.counts == {PASS: 17, FAIL: 0, SKIP: 0}
        assert rep.rows[0].section == "involution"

    def test_opp43_and_opp45_all_pass(self):
        for target in ("Opp43", "Opp45"):
            rep = verify_theorem(target)
            assert rep.ok, [r for r in rep.rows if r.status == FAIL]
            assert rep.counts[FAIL] == 0 and rep.counts[SKIP] == 0

    def test_section3_all_pass(self):
        rep = verify_theorem("Section3Computations")
        assert rep.ok
        assert rep.counts[FAIL] == 0 and rep.counts[SKIP] == 0
        corrected = [r for r in rep.rows if "sign corrected" in r.detail]
        assert len(corrected) == 1 and corrected[0].section == "A10"

    def test_a10_printed_sign_variant_fails(self):
        A10 = family("A10").instantiate(QQ, ())
        res = check_formal(A10, get_identity("assoc-cycle-minus"))
        assert not res.ok
        assert res.witness_text() == "e1 coefficient of x2 y1 z2 = 4"
        assert check_formal(A10, get_identity("assoc-cycle-plus")).ok

    def test_self_opposite_single_documented_skip(self):
        rep = verify_theorem("SelfOppositeCorollaries")
        assert rep.ok
        skips = [r for r in rep.rows if r.status == SKIP]
        assert len(skips) == 1
        assert skips[0].label == "A2_3(0, 0, 2)"
        assert "square root of -1" in skips[0].detail
        assert "exhaustive" in skips[0].detail

    def test_char0_report_pins_known_erratum(self):
        rep = verify_theorem("Char0Identities")
        fails = [r for r in rep.rows if r.status == FAIL]
        assert [(r.section, r.label) for r in fails] == [("I2", "A12")]
        assert "known discrepancy" in fails[0].detail
        skips = [(r.section, r.label) for r in rep.rows if r.status == SKIP]
        assert skips == [
            ("I19", "A5((5 - sqrt(5))/10)"),
            ("I19", "A5((5 + sqrt(5))/10)"),
            ("I19", "A8((1 - sqrt(-1))/2)"),
            ("I19", "A8((1 + sqrt(-1))/2)"),
            ("I29", "A8((3 - sqrt(-7))/8)"),
            ("I29", "A8((3 + sqrt(-7))/8)"),
        ]

    def test_char2_report_pins_known_erratum(self):
        rep = verify_theorem("Char2Identities")
        fails = [r for r in rep.rows if r.status == FAIL]
        assert [(r.section, r.label) for r in fails] == [("I18", "A5_2(0)")]
        assert "known discrepancy" in fails[0].detail
        coincidence = [r for r in rep.rows if r.section == "coincidence"]
        assert len(coincidence) == 14
        assert all(r.status == PASS for r in coincidence)

    def test_char3_report_pins_known_erratum(self):
        rep = verify_theorem("Char3Identities")
        fails = [r for r in rep.rows if r.status == FAIL]
        assert [(r.section, r.label) for r in fails] == [
            ("I1", "A5_3(0)"), ("I1", "A5_3(1)"), ("I1", "A5_3(2)")]
        assert all("known discrepancy" in r.detail for r in fails)

    def test_char5_jordan_rows(self):
        rep_rows = verify_theorem("Char0Identities", field=F5).rows
        i19 = [r for r in rep_rows if r.section == "I19"
               and not r.label.startswith("negative")]
        by_status = {}
        for r in i19:
            by_status.setdefault(r.status, []).append(r.label)
        assert by_status[SKIP] == [
            "A4(a1, sqrt(a1 - a1^2)) @ a1=2",
            "A4(a1, sqrt(a1 - a1^2)) @ a1=4",
            "A4(a1, -sqrt(a1 - a1^2)) @ a1=2",
            "A4(a1, -sqrt(a1 - a1^2)) @ a1=4",
            "A5((5 - sqrt(5))/10)",
            "A5((5 + sqrt(5))/10)",
        ]
        division_skips = [r for r in i19 if r.status == SKIP
                          and "division by zero" in r.detail]
        assert [r.label for r in division_skips] == [
            "A5((5 - sqrt(5))/10)", "A5((5 + sqrt(5))/10)"]
        for label in ("A8(2)", "A8(4)", "A9", "A2(3, 0, 3)", "A2(3, 0, 2)",
                      "A4(3, 2)", "A4(3, 3)", "A12"):
            assert label in by_status[PASS]
        assert FAIL not in by_status

    def test_negative_rows_present_and_passing(self):
        rep = verify_theorem("Char3Identities")
        negatives = [r for r in rep.rows if r.label.startswith("negative:")]
        assert len(negatives) == 3 * 30
        assert all(r.status == PASS for r in negatives)
        i1_negatives = [r.label for r in negatives if r.section == "I1"]
        assert i1_negatives == [
            "negative: A1_3(2, 2, 2, 2)",
            "negative: A3_3(2, 2)",
            "negative: A6_3(2, 2)",
        ]

    def test_report_json_shape(self):
        rep = verify_theorem("Opp41")
        doc = rep.to_json()
        assert doc["schema"] == REPORT_SCHEMA
        assert doc["target"] == "Opp41"
        assert doc["field"] == {"kind": "Q"}
        assert doc["summary"]["ok"] is True
        assert doc["summary"]["pass"] == len(doc["rows"])
        assert set(doc["rows"][0]) == {"section", "label", "status", "detail"}

    def test_report_text_has_summary_line(self):
        rep = verify_theorem("Opp45")
        text = rep.render_text()
        assert text.splitlines()[0].startswith("target: Opp45")
        assert text.splitlines()[-1].startswith("summary:")
        assert text.endswith("-> OK")

    def test_thread_count_does_not_change_output(self):
        for target in ("Opp43", "Section3Computations"):
            one = verify_theorem(target, threads=1).to_json()
            many = verify_theorem(target, threads=8).to_json()
            assert one == many

    def test_env_thread_override(self, monkeypatch):
        monkeypatch.setenv("ALGID_THREADS", "2")
        rep = verify_theorem("Opp45")
        assert rep.ok
