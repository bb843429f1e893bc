"""Single rows of inverse Vandermonde matrices at the nodes 0, 1, ..., N.

Writing V for the (N+1) x (N+1) matrix with V[s][j] = s**j, the coefficient
vector a of the interpolating polynomial through values w is a = V^-1 w, and
one coefficient needs only one row of V^-1.  Row r is assembled in O(N^2)
time and O(N) space from the master polynomial Z(Y) = prod_t (Y - t):
dividing Z synthetically by (Y - s) gives the numerator of Lagrange basis
polynomial l_s, whose Y^r coefficient over the denominator
D_s = s! * (-1)^(N-s) * (N-s)! is entry s of the row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class InverseRow:
    """Row `r` of V^-1 for nodes 0..n; exact Fractions when modulus is None."""
    n: int
    r: int
    modulus: int | None
    entries: tuple

    def __post_init__(self):
        if not 0 <= self.r <= self.n:
            raise ValueError("row index out of range")
        if len(self.entries) != self.n + 1:
            raise ValueError("entry count mismatch")


def _master_coefficients(N, modulus):
    """Coefficients (ascending) of prod_{t=0..N} (Y - t)."""
    z = [1]
    for t in range(N + 1):
        z.append(0)
        # multiply by (Y - t), highest coefficient first
        for j in range(len(z) - 1, 0, -1):
            z[j] = z[j - 1] - t * z[j]
            if modulus is not None:
                z[j] %= modulus
        z[0] = -t * z[0]
        if modulus is not None:
            z[0] %= modulus
    return z


@lru_cache(maxsize=256)
def inverse_vandermonde_row(N: int, r: int, modulus: int | None = None) -> InverseRow:
    """Row r of the inverse Vandermonde at nodes 0..N.

    The defining property, checked by the tests, is
        sum_s entries[s] * s**j == (1 if j == r else 0)   for all j in [0, N].
    With a modulus q the entries are residues and q must exceed N so the
    node differences stay invertible.
    """
    if N < 0:
        raise ValueError("need at least one node")
    if not 0 <= r <= N:
        raise ValueError("row index out of range")
    if modulus is not None and modulus <= N:
        raise ValueError(f"modulus {modulus} too small for {N + 1} nodes")

    z = _master_coefficients(N, modulus)

    # D_s = prod_{t != s} (s - t) runs over s via D_{s+1} = -D_s (s+1)/(N-s)
    d = 1
    for t in range(1, N + 1):
        d *= -t
    if modulus is not None:
        d %= modulus

    entries = []
    quotient = [0] * (N + 1)
    for s in range(N + 1):
        # synthetic division of z by (Y - s); quotient has degree N
        acc = z[N + 1]
        quotient[N] = acc
        for j in range(N, 0, -1):
            acc = z[j] + s * acc
            if modulus is not None:
                acc %= modulus
            quotient[j - 1] = acc
        num = quotient[r]
        if modulus is None:
            entries.append(Fraction(num, d))
        else:
            entries.append(num * pow(d, -1, modulus) % modulus)
        if s < N:
            if modulus is None:
                # exact: division is always even here
                d = -d * (s + 1) // (N - s)
            else:
                d = -d * (s + 1) * pow(N - s, -1, modulus) % modulus
    return InverseRow(N, r, modulus, tuple(entries))


def interpolate_coefficient(values, row: InverseRow):
    """Dot product of interpolation values with a row of V^-1."""
    if len(values) != row.n + 1:
        raise ValueError("value count does not match node count")
    total = sum(v * e for v, e in zip(values, row.entries))
    if row.modulus is not None:
        return total % row.modulus
    return total
