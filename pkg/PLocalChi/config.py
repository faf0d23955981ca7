"""
Map of the constants used across the package: resource caps, the names of
the categories and scopes, and the catalog families scanned by default.
"""
import os

from .exceptions import InputError

# element cap for materialized groups, overridden by CHI_MAX_ELEMENTS
DEFAULT_MAX_ELEMENTS = 10 ** 6
MAX_ELEMENTS_ENV = "CHI_MAX_ELEMENTS"

# element-level oracles (exhaustive subgroup lists, element zeta matrices)
ORACLE_MAX_ORDER = 2000

# subgroups of the Sylow subgroup
MAX_SUBGROUPS = 500_000

# subgroup cap while scanning the catalog; larger groups are skipped
SCAN_MAX_SUBGROUPS = 4096

# sum of |C_G(H)| over the classes up to which the element-sum form of the
# F weighting is evaluated as a cross-check
CENTRALIZER_SUM_MAX_WORK = 512

# points of a catalog construction
MAX_DEGREE = 5000

KINDS = [
    "S",
    "T",
    "L",
    "F",
    "O",
    "Ftilde",
]

SCOPES = [
    "nonidentity",
    "all",
    "centric",
    "elementary-abelian",
    "radical",
]

OUTPUT_FORMATS = [
    "table",
    "json",
    "csv",
]

CSV_COLUMNS = ["group", "order", "prime", "scope", "kind", "chi"]

# families for `table`; {n} is replaced by the row index
TABLE_FAMILIES = {
    "A": "A{n}",
    "S": "S{n}",
}

# base groups offered to the conjecture scans
SCAN_FAMILIES = {
    "symmetric": [f"S{n}" for n in range(2, 8)],
    "alternating": [f"A{n}" for n in range(4, 8)],
    "cyclic": [f"C{n}" for n in range(2, 17)],
    "dihedral": [f"Dih:{m}" for m in range(3, 31)],
    "elementary": [f"EA:{p}:{k}" for p in (2, 3, 5, 7) for k in (2, 3, 4, 5)],
    "special_linear": [f"SL2:{q}" for q in (2, 3, 4, 5, 7, 8, 9)],
    "sporadic": ["Q8", "G288", "C2cubeByC3"],
}

# factors allowed in two-factor products of a scan
SCAN_PRODUCT_MAX_FACTOR = 24

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"
LOG_FILE = "./plocalchi.log"


def max_elements() -> int:
    """
    Returns the element cap, honouring the CHI_MAX_ELEMENTS override.

    Returns
    -------
    int
        Largest group order that may be materialized.

    Raises
    ------
    InputError
        If the environment variable is not a positive integer.
    """
    raw = os.environ.get(MAX_ELEMENTS_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_ELEMENTS
    try:
        value = int(raw)
    except ValueError as e:
        raise InputError(f"{MAX_ELEMENTS_ENV} must be an integer, got "
                         f"{raw!r}") from e
    if value <= 0:
        raise InputError(f"{MAX_ELEMENTS_ENV} must be positive, got {value}")
    return value

# progress bars on stderr; switched off by the --quiet flag
SHOW_PROGRESS = True
