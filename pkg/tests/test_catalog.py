import pytest

from PLocalChi.exceptions import InputError, ResourceLimitError
from PLocalChi.groups.catalog import (FiniteField, GroupSpec, build,
                                      catalog_specs, direct_product,
                                      parse_spec, spec_order)
from PLocalChi.groups.groupcore import centre


@pytest.mark.parametrize("text, order", [
    ("S4", 24),
    ("A5", 60),
    ("C7", 7),
    ("Dih:5", 10),
    ("Dih:2", 4),
    ("EA:2:3", 8),
    ("EA:3:2", 9),
    ("Q8", 8),
    ("SL2:3", 24),
    ("SL2:4", 60),
    ("SL2:5", 120),
    ("C2cubeByC3", 24),
    ("G288", 288),
    ("S3xS3", 36),
    ("A4xC2", 24),
    ("perm:[(0 1 2),(0 1)]", 6),
])
def test_build_orders(text, order):
    spec = parse_spec(text)
    group = build(spec)
    assert group.order == order
    assert spec_order(spec) == order
    assert group.name == str(spec)


def test_canonical_text():
    assert str(parse_spec("S3xS3")) == "S3xS3"
    assert str(parse_spec(" Dih:4 ")) == "Dih:4"
    assert str(parse_spec("perm:[(0 1 2),(3 4)]")) == "perm:[(0 1 2),(3 4)]"
    assert parse_spec("S3xC2") == GroupSpec(
        "Product", children=(GroupSpec("Sym", (3,)), GroupSpec("Cyc", (2,))))


@pytest.mark.parametrize("text", ["X9", "S", "SL2:6", "EA:4:2", "",
                                  "perm:[(0 1)(]", "S3xFoo"])
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse_spec(text)


def test_parse_error_reports_position():
    with pytest.raises(InputError, match="position 3"):
        parse_spec("S3xFoo")


def test_element_cap(monkeypatch):
    monkeypatch.setenv("CHI_MAX_ELEMENTS", "100")
    with pytest.raises(ResourceLimitError):
        build("S5")


def test_finite_field_four():
    field = FiniteField(4)
    assert field.modulus == [1, 1, 1]
    # x * x = x + 1 in F_4
    assert field.mul(2, 2) == 3
    assert all(field.add(a, a) == 0 for a in range(4))
    units = range(1, 4)
    assert all(any(field.mul(a, b) == 1 for b in units) for a in units)


def test_c2cube_centre():
    group = build("C2cubeByC3")
    assert centre(group.whole).order == 2


def test_direct_product(a4):
    c2 = build("C2")
    product = direct_product(a4, c2)
    assert product.order == 24
    assert product.degree == 6
    assert centre(product.whole).order == 2


def test_catalog_specs():
    specs = catalog_specs(24)
    texts = [str(s) for s in specs]
    assert "A4" in texts and "S4" in texts and "SL2:3" in texts
    assert "C2xC2" in texts
    assert all(spec_order(s) <= 24 for s in specs)
    assert len(texts) == len(set(texts))
    assert catalog_specs(24) == specs
