from fractions import Fraction

import pandas as pd
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from PLocalChi.exceptions import InputError
from PLocalChi.utils import (check_prime, elementary_mu, format_rational,
                             is_p_power, p_log, p_part, p_prime_part,
                             parse_rational, prime_power, write_report)


def test_check_prime():
    assert check_prime(7) == 7
    with pytest.raises(InputError):
        check_prime(9)
    with pytest.raises(InputError):
        check_prime(1)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(InputError):
        prime_power(6)
    with pytest.raises(InputError):
        prime_power(1)


def test_p_parts():
    assert p_part(360, 2) == 8
    assert p_prime_part(360, 2) == 45
    assert p_part(45, 2) == 1
    assert is_p_power(27, 3)
    assert not is_p_power(12, 2)
    assert p_log(16, 2) == 4
    with pytest.raises(InputError):
        p_log(12, 2)


def test_elementary_mu():
    assert elementary_mu(0, 2) == 1
    assert elementary_mu(1, 3) == -1
    assert elementary_mu(2, 2) == 2
    assert elementary_mu(3, 2) == -8


def test_format_rational():
    assert format_rational(Fraction(1, 12)) == "1/12"
    assert format_rational(Fraction(-15)) == "-15"
    assert format_rational(Fraction(10, 9)) == "10/9"
    assert format_rational(0) == "0"


@given(st.fractions())
@settings(max_examples=200)
def test_parse_inverts_format(value):
    assert parse_rational(format_rational(value)) == value


def test_parse_rational_rejects_garbage():
    with pytest.raises(InputError):
        parse_rational("one third")
    with pytest.raises(InputError):
        parse_rational("1/0")


def test_write_report_csv(tmp_path):
    data = pd.DataFrame([{"group": "A4", "chi": "1/3"}])
    out = tmp_path / "report.csv"
    text = write_report(data, out, "csv")
    assert text == "group,chi\nA4,1/3\n"
    assert out.read_text() == text


def test_write_report_rejects_unknown_format():
    with pytest.raises(InputError):
        write_report(pd.DataFrame(), None, "xml")
