from fractions import Fraction

import pytest

from PLocalChi import config
from PLocalChi.eulercat import (CategoryKind, centralizer_sum_work,
                                centric_p_prime_part, chi, chi_closed,
                                chi_F_abelian_sylow, chi_F_normal_sylow,
                                chi_F_via_centralizers, chi_full_category,
                                chi_orbit_cyclic, chi_report,
                                chi_sylow_restricted_F,
                                element_poset_weighting, element_zeta_matrix,
                                frobenius_centralizer_weighting,
                                local_weighting, morphism_count,
                                report_document, solve_coweighting,
                                solve_weighting, zeta_matrix)
from PLocalChi.exceptions import (InputError, InvariantError,
                                  ResourceLimitError)
from PLocalChi.groups.catalog import build
from PLocalChi.groups.groupcore import centre, conjugates, sylow
from PLocalChi.psub import enumerate_classes

A4_VALUES = {"S": 1, "T": Fraction(1, 12), "L": Fraction(1, 12),
             "F": Fraction(1, 3), "O": Fraction(1, 3),
             "Ftilde": Fraction(1, 3)}
S3_VALUES = {"S": 3, "T": Fraction(1, 2), "L": Fraction(1, 2), "F": 1,
             "O": 1, "Ftilde": 1}


def test_category_kind_validation():
    assert CategoryKind("F").scope == "nonidentity"
    with pytest.raises(InputError):
        CategoryKind("X")
    with pytest.raises(InputError):
        CategoryKind("F", "abelian")


@pytest.mark.parametrize("kind", sorted(A4_VALUES))
def test_a4_values(a4_table, kind):
    assert chi(a4_table, kind) == A4_VALUES[kind]
    assert chi_closed(a4_table, kind) == A4_VALUES[kind]


@pytest.mark.parametrize("kind", sorted(S3_VALUES))
def test_s3_values(s3_table, kind):
    assert chi(s3_table, kind) == S3_VALUES[kind]


def test_a4_zeta_matrices(a4_table):
    assert zeta_matrix(a4_table, "T").entries.tolist() == [[4, 12], [0, 12]]
    assert zeta_matrix(a4_table, "F").entries.tolist() == [[1, 3], [0, 3]]
    assert zeta_matrix(a4_table, "Ftilde").entries.tolist() == \
        [[1, 3], [0, 3]]
    assert zeta_matrix(a4_table, "S").entries.tolist() == \
        [[Fraction(1, 3), 1], [0, 1]]


def test_a4_weighting_and_coweighting(a4_table):
    zm = zeta_matrix(a4_table, "T")
    weighting = solve_weighting(zm)
    coweighting = solve_coweighting(zm)
    assert weighting.values == [0, Fraction(1, 12)]
    assert coweighting.values == [Fraction(1, 4), Fraction(-1, 6)]
    assert weighting.total() == coweighting.total() == Fraction(1, 12)
    assert [c.order for c in weighting.support()] == [4]
    assert coweighting.element_values() == [Fraction(1, 12),
                                            Fraction(-1, 6)]


def test_zeta_matrix_needs_classes():
    empty = enumerate_classes(build("C7"), 2)
    with pytest.raises(InputError):
        zeta_matrix(empty, "F")
    assert chi(empty, "F") == 0


def test_morphism_counts(a4):
    P = sylow(a4, 2)
    C2 = a4.generate([int(P.indices[1])])
    expected = {"S": 1, "T": 12, "L": 12, "F": 3, "O": 3, "Ftilde": 3}
    for kind, count in expected.items():
        assert morphism_count(kind, C2, P, 2) == count
    assert morphism_count("T", P, C2, 2) == 0


@pytest.mark.parametrize("text", ["S3", "A4"])
def test_scope_all(text):
    group = build(text)
    table = enumerate_classes(group, 2, "all")
    for kind in ("S", "T", "L", "F", "O", "Ftilde"):
        assert chi(table, kind) == chi_full_category(group, 2, kind)


def test_full_category_values(s3, a4):
    assert chi_full_category(s3, 2, "O") == Fraction(2, 3)
    assert chi_full_category(s3, 2, "T") == Fraction(1, 6)
    assert chi_full_category(s3, 2, "L") == Fraction(1, 2)
    assert chi_full_category(s3, 2, "S") == 1
    assert chi_full_category(a4, 2, "L") == 1
    assert chi_full_category(a4, 2, "O") == Fraction(1, 3)


def test_centric_a4(a4):
    table = enumerate_classes(a4, 2, "centric")
    assert [c.order for c in table] == [4]
    assert centric_p_prime_part(table[0]) == 1
    expected = {"T": Fraction(1, 12), "L": Fraction(1, 12),
                "O": Fraction(1, 3), "F": Fraction(1, 3),
                "Ftilde": Fraction(1, 3)}
    for kind, value in expected.items():
        assert chi(table, kind) == value
        assert chi_closed(table, kind) == value


def test_radical_scope_has_no_closed_linking(a4):
    table = enumerate_classes(a4, 2, "radical")
    assert chi_closed(table, "L") is None
    assert chi_closed(table, "S") == 1
    assert local_weighting(table, "L") is None


def test_orbit_by_cyclic_classes(a4_table):
    assert chi_orbit_cyclic(a4_table) == Fraction(1, 3)
    with pytest.raises(InputError):
        chi_orbit_cyclic(a4_table.restrict("centric"))


def test_local_weighting_matches_matrix(a4_table, s3_table):
    for table in (a4_table, s3_table):
        for kind in ("S", "T", "L", "F", "O"):
            local = local_weighting(table, kind)
            assert local.values == \
                solve_weighting(zeta_matrix(table, kind)).values
    assert local_weighting(a4_table, "Ftilde") is None


@pytest.mark.parametrize("text, p", [("S3", 2), ("A4", 2), ("S4", 2),
                                     ("C2cubeByC3", 2), ("A5", 2)])
def test_chi_F_alternatives(text, p):
    group = build(text)
    value = chi(enumerate_classes(group, p), "F")
    assert chi_F_via_centralizers(group, p) == value
    assert chi_sylow_restricted_F(group, p) == value


def test_chi_F_normal_sylow(c2cube, s3):
    value, weights = chi_F_normal_sylow(c2cube, 2)
    assert value == 1
    Z = centre(c2cube.whole)
    P = sylow(c2cube, 2)
    assert weights == {Z: Fraction(2, 3), P: Fraction(1, 3)}
    assert chi_F_normal_sylow(s3, 3)[0] == Fraction(1, 2)
    with pytest.raises(InputError):
        chi_F_normal_sylow(s3, 2)


def test_c2cube_frobenius_weighting(c2cube):
    table = enumerate_classes(c2cube, 2)
    weighting = solve_weighting(zeta_matrix(table, "F"))
    assert weighting.total() == 1
    support = {c.representative: v for c, v in
               zip(table, weighting.values) if v != 0}
    assert support == {centre(c2cube.whole): Fraction(2, 3),
                       sylow(c2cube, 2): Fraction(1, 3)}


def test_chi_F_abelian_sylow(a4, a5):
    assert chi_F_abelian_sylow(a5, 5) == Fraction(1, 2)
    assert chi_F_abelian_sylow(a4, 2) == Fraction(1, 3)
    assert chi_F_abelian_sylow(a4, 5) == 0
    with pytest.raises(InputError):
        chi_F_abelian_sylow(build("S4"), 2)


@pytest.mark.parametrize("text", ["S3", "A4", "S4"])
def test_element_weighting_spreads_class_weighting(text):
    group = build(text)
    table = enumerate_classes(group, 2)
    class_values = solve_weighting(zeta_matrix(table, "S")).element_values()
    subgroups, positions, _ = element_zeta_matrix(group, 2, "S")
    _, values = element_poset_weighting(group, 2)
    assert len(subgroups) == sum(c.class_size for c in table)
    assert values == [class_values[i] for i in positions]


def test_element_matrix_cap():
    with pytest.raises(ResourceLimitError):
        element_zeta_matrix(build("A7"), 2, "F")


def test_chi_report(a4):
    report = chi_report(a4, 2)
    assert {k: r.chi for k, r in report.results.items()} == A4_VALUES
    assert all(v == 0 for v in report.residuals.values())
    assert "O:cyclic" in report.residuals
    assert report.results["F"].chi_local == Fraction(1, 3)
    assert report.results["Ftilde"].chi_local is None


@pytest.mark.parametrize("scope", ["all", "centric", "elementary-abelian",
                                   "radical"])
def test_chi_report_scopes(scope):
    for text in ("S3", "A4", "S4", "C2cubeByC3"):
        report = chi_report(build(text), 2, scope)
        assert all(v == 0 for v in report.residuals.values())


def test_chi_report_without_p_subgroups():
    report = chi_report(build("C7"), 2)
    assert all(r.chi == 0 for r in report.results.values())
    assert report.notes == ["no nonidentity 2-subgroups"]


def test_chi_report_subset_of_kinds(s3):
    report = chi_report(s3, 3, kinds=["F"])
    assert list(report.results) == ["F"]
    assert report.results["F"].chi == Fraction(1, 2)
    with pytest.raises(InputError):
        chi_report(s3, 2, kinds=["Q"])
    with pytest.raises(InputError):
        chi_report(s3, 4)


@pytest.mark.parametrize("text, p, expected", [
    ("A5", 2, {"S": 5, "L": Fraction(1, 12), "F": Fraction(1, 3),
               "O": Fraction(1, 3)}),
    ("A5", 5, {"S": 6}),
    ("SL2:3", 3, {"S": 4}),
    ("Dih:3", 3, {"F": Fraction(1, 2)}),
])
def test_known_values(text, p, expected):
    report = chi_report(build(text), p, kinds=list(expected))
    assert {k: r.chi for k, r in report.results.items()} == expected


@pytest.mark.slow
@pytest.mark.parametrize("text, scope, expected", [
    ("A6", "nonidentity", {"S": -15, "L": Fraction(-1, 24),
                           "F": Fraction(1, 3), "O": Fraction(1, 3)}),
    ("A6", "centric", {"T": Fraction(-1, 24), "O": Fraction(1, 3)}),
    ("A7", "nonidentity", {"S": -175, "L": Fraction(-1, 24),
                           "F": Fraction(1, 3), "O": Fraction(2, 9)}),
    ("A7", "centric", {"T": Fraction(-5, 72), "O": Fraction(2, 9),
                       "F": Fraction(1, 3), "Ftilde": Fraction(1, 3)}),
])
def test_alternating_groups(text, scope, expected):
    report = chi_report(build(text), 2, scope, kinds=list(expected))
    assert {k: r.chi for k, r in report.results.items()} == expected


@pytest.mark.slow
def test_wreath_product_frobenius():
    report = chi_report(build("G288"), 2, kinds=["F"])
    assert report.results["F"].chi == Fraction(10, 9)


@pytest.mark.slow
def test_sl2_5_frobenius():
    group = build("SL2:5")
    assert chi(enumerate_classes(group, 5), "F") == Fraction(1, 2)
    assert chi_F_abelian_sylow(group, 5) == Fraction(1, 2)


@pytest.mark.parametrize("text, p", [("S3", 2), ("A4", 2), ("S4", 2),
                                     ("C2cubeByC3", 2), ("S3xS3", 3)])
def test_frobenius_weighting_forms_agree(text, p):
    table = enumerate_classes(build(text), p)
    matrix = solve_weighting(zeta_matrix(table, "F")).values
    assert local_weighting(table, "F").values == matrix
    assert frobenius_centralizer_weighting(table).values == matrix


def test_frobenius_centralizer_weighting_a4(a4_table):
    assert centralizer_sum_work(a4_table) == 8
    weighting = frobenius_centralizer_weighting(a4_table)
    assert weighting.values == [0, Fraction(1, 3)]
    centric = frobenius_centralizer_weighting(a4_table.restrict("centric"))
    assert centric.values == [Fraction(1, 3)]
    with pytest.raises(InputError):
        frobenius_centralizer_weighting(a4_table.restrict("radical"))


def test_chi_report_centralizer_sum_cap(a4, monkeypatch):
    assert chi_report(a4, 2).residuals["F:centralizer-sum"] == 0
    assert "F:centralizer-sum" not in \
        chi_report(a4, 2, cross_check=False).residuals
    monkeypatch.setattr(config, "CENTRALIZER_SUM_MAX_WORK", 7)
    assert "F:centralizer-sum" not in chi_report(a4, 2).residuals


def test_chi_report_strict(s3, monkeypatch):
    monkeypatch.setattr("PLocalChi.eulercat.chi_closed",
                        lambda table, kind: Fraction(7))
    with pytest.raises(InvariantError) as info:
        chi_report(s3, 2, kinds=["F"])
    assert info.value.residuals == {"F:closed": -6}
    report = chi_report(s3, 2, kinds=["F"], strict=False)
    assert report.residuals["F:closed"] == -6
    assert report.results["F"].chi == 1


def test_report_document(a4):
    document = report_document(chi_report(a4, 2, kinds=["T", "F"]))
    assert list(document) == ["group", "order", "prime", "scope",
                              "categories", "classes", "residuals", "notes"]
    assert document["group"] == "A4"
    assert document["categories"] == {"T": "1/12", "F": "1/3"}
    assert document["classes"][1]["representative"].startswith("<")
    assert document["classes"][1]["weighting"] == {"T": "1/12", "F": "1/3"}
    timed = report_document(chi_report(a4, 2, kinds=["F"]), "A4",
                            {"build": 1, "compute": 2})
    assert timed["timing"] == {"build": 1, "compute": 2}


def test_morphism_counts_do_not_depend_on_representatives():
    group = build("S4")
    table = enumerate_classes(group, 2)
    for kind in ("T", "L", "F", "O", "Ftilde"):
        entries = zeta_matrix(table, kind).entries
        for i, H in enumerate(table):
            H_other = conjugates(group, H.representative)[-1]
            for j in range(i, len(table)):
                K_other = conjugates(group, table[j].representative)[-1]
                assert morphism_count(kind, H_other, K_other, 2) == \
                    entries[i, j]
