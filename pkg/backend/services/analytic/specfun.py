"""
Special Functions
Real-valued gamma, beta, binomial, Stirling and Gauss hypergeometric helpers
used by the closed-form network formulas
"""
from functools import lru_cache
from typing import List, Tuple
import logging
import math

import mpmath
from scipy.special import gammaln

from services.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

# Series controls for gauss_2f1
HYP_TOLERANCE = 1e-10
HYP_MAX_TERMS = 10_000
PFAFF_THRESHOLD = -0.5
# Below this argument the Pfaff series in w = z/(z-1) decays too slowly
EXTENDED_THRESHOLD = -9.0
EXTENDED_DPS = 30


def log_gamma(x: float) -> float:
    """
    Natural logarithm of the gamma function for positive arguments

    Args:
        x: Positive real argument

    Returns:
        float: ln Γ(x)

    Raises:
        DomainError: If x <= 0
    """
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return float(gammaln(x))


def beta(a: float, b: float) -> float:
    """Euler beta function B(a, b) for positive a, b"""
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def gamma_ratio(x: float, y: float) -> float:
    """Γ(x)/Γ(y) for positive x, y"""
    return math.exp(log_gamma(x) - log_gamma(y))


def falling_factorial(x: float, n: int) -> float:
    """x(x-1)...(x-n+1); equals 1 for n = 0"""
    result = 1.0
    for i in range(n):
        result *= (x - i)
    return result


def real_binomial(a: float, k: int) -> float:
    """
    Generalized binomial coefficient C(a, k) with real upper argument

    Evaluated as the product a(a-1)...(a-k+1)/k! so that zero and negative
    factors are carried exactly.

    Args:
        a: Real upper argument
        k: Non-negative integer lower argument

    Returns:
        float: C(a, k)
    """
    if k < 0:
        raise DomainError(f"real_binomial requires k >= 0, got {k}")
    result = 1.0
    for i in range(k):
        result *= (a - i) / (i + 1)
    return result


class StirlingTable:
    """
    Signed Stirling numbers of the first kind s(n, k) for 0 <= k <= n <= max_n

    Entries are exact Python integers and the table is immutable after
    construction.
    """

    def __init__(self, max_n: int):
        if max_n < 0:
            raise DomainError(f"StirlingTable requires max_n >= 0, got {max_n}")
        self.max_n = max_n
        rows: List[Tuple[int, ...]] = [(1,)]
        for n in range(max_n):
            prev = rows[-1]
            row = [0] * (n + 2)
            for k in range(1, n + 2):
                upper = prev[k - 1]
                same = prev[k] if k <= n else 0
                # s(n+1,k) = s(n,k-1) - n s(n,k)
                row[k] = upper - n * same
            rows.append(tuple(row))
        self._rows = tuple(rows)

    @property
    def entries(self) -> Tuple[Tuple[int, ...], ...]:
        return self._rows

    def row(self, n: int) -> Tuple[int, ...]:
        if not 0 <= n <= self.max_n:
            raise DomainError(f"Stirling row {n} outside table (max_n={self.max_n})")
        return self._rows[n]

    def get(self, n: int, k: int) -> int:
        if not 0 <= k <= n <= self.max_n:
            raise DomainError(f"Stirling index ({n}, {k}) outside 0 <= k <= n <= {self.max_n}")
        return self._rows[n][k]


@lru_cache(maxsize=8)
def stirling_table(max_n: int) -> StirlingTable:
    """Cached StirlingTable of the requested size"""
    return StirlingTable(max_n)


def stirling_first(n: int, k: int) -> int:
    """
    Signed Stirling number of the first kind s(n, k)

    Raises:
        DomainError: Unless 0 <= k <= n
    """
    if not 0 <= k <= n:
        raise DomainError(f"stirling_first requires 0 <= k <= n, got ({n}, {k})")
    # tables are cached by size; round up to limit the number of distinct tables
    size = max(32, 1 << (n - 1).bit_length()) if n > 0 else 32
    return stirling_table(size).get(n, k)


def _hyp_series(a: float, b: float, c: float, z: float, tol: float, max_terms: int) -> float:
    """Defining series of 2F1 for |z| < 1"""
    term = 1.0
    running = 1.0
    terms = [term]
    for m in range(max_terms):
        term *= (a + m) * (b + m) / ((c + m) * (m + 1)) * z
        if term == 0.0:
            break
        terms.append(term)
        running += term
        next_ratio = abs((a + m + 1) * (b + m + 1) / ((c + m + 1) * (m + 2)) * z)
        bound_ratio = max(next_ratio, abs(z))
        if bound_ratio < 1.0:
            # geometric tail bound; the term ratio is monotone from here on
            tail = abs(term) * bound_ratio / (1.0 - bound_ratio)
            if tail <= 0.1 * tol * abs(running):
                break
    else:
        raise ConvergenceError(
            f"2F1({a}, {b}; {c}; {z}) did not converge in {max_terms} terms",
            terms=max_terms, last_term=term,
        )
    return math.fsum(terms)


def gauss_2f1(a: float, b: float, c: float, z: float,
              tol: float = HYP_TOLERANCE, max_terms: int = HYP_MAX_TERMS) -> float:
    """
    Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1

    The defining series is used on [-1/2, 1). On [-9, -1/2) a Pfaff
    transformation maps the argument into (1/3, 9/10]; of the two possible
    transformations the one with the faster-decaying series is taken. Below
    -9 the value comes from mpmath.hyp2f1, whose 1/z continuation also
    covers the logarithmic case of integer a - b.

    Args:
        a, b: Upper parameters
        c: Lower parameter, c > 0
        z: Argument, z < 1
        tol: Relative tolerance of the series
        max_terms: Term cap

    Returns:
        float: 2F1(a, b; c; z)

    Raises:
        DomainError: If c <= 0 or z >= 1
        ConvergenceError: If the series exceeds the term cap
    """
    if not c > 0:
        raise DomainError(f"gauss_2f1 requires c > 0, got {c}")
    if not z < 1.0:
        raise DomainError(f"gauss_2f1 requires z < 1, got {z}")
    if z == 0.0:
        return 1.0
    if z >= PFAFF_THRESHOLD:
        return _hyp_series(a, b, c, z, tol, max_terms)
    if z < EXTENDED_THRESHOLD:
        with mpmath.workdps(EXTENDED_DPS):
            value = float(mpmath.hyp2f1(a, b, c, z))
        logger.debug(f"[SPECFUN] 2F1 z={z:.6g} evaluated by mpmath")
        return value

    w = z / (z - 1.0)
    # (1-z)^{-a} F(a, c-b; c; w) or (1-z)^{-b} F(b, c-a; c; w)
    candidates = [(a, c - b), (b, c - a)]

    def _rank(pair):
        first, second = pair
        terminates = any(v <= 0 and float(v).is_integer() for v in (first, second))
        return (0 if terminates else 1, first + second - c)

    first, second = min(candidates, key=_rank)
    logger.debug(f"[SPECFUN] Pfaff 2F1 z={z:.6g} -> w={w:.6g} with prefactor exponent {first:.6g}")
    return (1.0 - z) ** (-first) * _hyp_series(first, second, c, w, tol, max_terms)
