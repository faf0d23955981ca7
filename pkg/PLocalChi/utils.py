"""
Utility functions shared by the PLocalChi modules: integer p-parts, exact
rational formatting and the report writer.
"""
import sys
from fractions import Fraction
from pathlib import Path

import pandas as pd
from sympy import factorint, isprime

from .exceptions import InputError


def check_prime(p: int) -> int:
    """
    Validates a prime argument.

    Parameters
    ----------
    p : int
        Candidate prime.

    Returns
    -------
    int
        The prime itself.

    Raises
    ------
    InputError
        If p is not a prime number.
    """
    if not isinstance(p, int) or not isprime(p):
        raise InputError(f"{p!r} is not a prime")
    return p


def prime_power(q: int) -> tuple[int, int]:
    """
    Splits a prime power into its prime and exponent.

    Parameters
    ----------
    q : int
        Candidate prime power.

    Returns
    -------
    tuple[int, int]
        (p, e) with q = p**e.

    Raises
    ------
    InputError
        If q is not a prime power.
    """
    factors = factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise InputError(f"{q} is not a prime power")
    (p, e), = factors.items()
    return int(p), int(e)


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing the positive integer n."""
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def p_prime_part(n: int, p: int) -> int:
    """The p'-part n / n_p of the positive integer n."""
    return n // p_part(n, p)


def is_p_power(n: int, p: int) -> bool:
    return n >= 1 and p_part(n, p) == n


def p_log(n: int, p: int) -> int:
    """The exponent e with n = p**e.

    Raises
    ------
    InputError
        If n is not a power of p.
    """
    if not is_p_power(n, p):
        raise InputError(f"{n} is not a power of {p}")
    exponent = 0
    while n > 1:
        n //= p
        exponent += 1
    return exponent


def elementary_mu(rank: int, p: int) -> int:
    """(-1)^rank p^(rank choose 2), the Moebius value of an elementary
    abelian section of the given rank."""
    return (-1) ** rank * p ** (rank * (rank - 1) // 2)


def format_rational(value: Fraction | int) -> str:
    """
    Renders a rational exactly as "num/den", the denominator omitted when
    it is 1.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """
    Parses the output of `format_rational`.

    Raises
    ------
    InputError
        If the text is not an exact rational.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"not an exact rational: {text!r}") from e


def write_report(data: pd.DataFrame,
                 output_file: Path | None = None,
                 output_format: str = "csv") -> str:
    """
    Writes a tabular report to a file, or to stdout when no file is given.

    Parameters
    ----------
    data : pd.DataFrame
        Report rows; rational columns must already be formatted strings.
    output_file : Path | None
        Destination file. None writes to stdout.
    output_format : str
        One of "table", "csv", "json".

    Returns
    -------
    str
        The serialized report.

    Raises
    ------
    InputError
        If the output format is not supported.
    """
    if output_format == "csv":
        text = data.to_csv(index=False, lineterminator="\n")
    elif output_format == "json":
        text = data.to_json(orient="records", indent=2) + "\n"
    elif output_format == "table":
        text = data.to_string(index=False) + "\n"
    else:
        raise InputError("Unsupported output format.")

    if output_file is None:
        sys.stdout.write(text)
    else:
        Path(output_file).write_text(text)
    return text
