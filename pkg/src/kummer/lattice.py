"""Lattices in (1/D) * Z^n with integer-only kernels.

A lattice is stored as an integer basis plus an explicit denominator, so the
Smith/Hermite machinery never sees a rational number.
"""

from __future__ import annotations

import math
from math import gcd

from .errors import NotASublattice
from .smith import RowSolver, ZMatrix, _snf, hermite_rows


class Lattice:
    """Full- or partial-rank subgroup of (1/den) * Z^ambient_dim.

    The stored basis rows are numerators: the actual lattice vectors are
    row/den.  The basis is kept in canonical Hermite form and the denominator
    is minimal.
    """

    __slots__ = ("ambient_dim", "basis", "den", "_solver")

    def __init__(self, ambient_dim, basis_rows, den=1, _canonical=False):
        assert den > 0
        rows = [list(r) for r in basis_rows]
        assert all(len(r) == ambient_dim for r in rows)
        if not _canonical:
            rows = hermite_rows(rows, ambient_dim)
        # minimal denominator: strip common factors shared with den
        g = den
        for r in rows:
            for x in r:
                g = gcd(g, x)
                if g == 1:
                    break
            if g == 1:
                break
        if g > 1:
            den //= g
            rows = [[x // g for x in r] for r in rows]
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in rows)
        self.den = den
        self._solver = None

    @classmethod
    def from_generators(cls, ambient_dim, rows, den=1):
        return cls(ambient_dim, rows, den)

    @classmethod
    def standard(cls, n):
        """Z^n."""
        return cls(n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def rank(self):
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.ambient_dim == other.ambient_dim
            and self.den == other.den
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Lattice(dim={self.ambient_dim}, rank={self.rank}, den={self.den})"

    def solver(self):
        if self._solver is None:
            self._solver = RowSolver([list(r) for r in self.basis], self.ambient_dim)
        return self._solver

    def coords(self, num, den=1):
        """Integer coordinates of the vector num/den in this basis, or None."""
        # num/den = x . basis/self.den  <=>  x . basis = num * self.den / den
        scaled = []
        for v in num:
            prod = v * self.den
            q, r = divmod(prod, den)
            if r:
                return None
            scaled.append(q)
        return self.solver().solve(scaled)

    def contains(self, num, den=1):
        return self.coords(num, den) is not None


def lattice_index(sub: Lattice, sup: Lattice):
    """Index [sup : sub]; math.inf when the ranks differ.

    Raises NotASublattice when some basis vector of sub falls outside sup.
    """
    assert sub.ambient_dim == sup.ambient_dim
    coords = []
    for row in sub.basis:
        c = sup.coords(list(row), sub.den)
        if c is None:
            raise NotASublattice(f"{sub!r} is not contained in {sup!r}")
        coords.append(c)
    if sub.rank != sup.rank:
        return math.inf
    res = _snf(ZMatrix(coords))
    idx = 1
    for d in res.D.diagonal():
        idx *= d
    return abs(idx)


def saturate(lat: Lattice) -> Lattice:
    """Vectors v of the ambient (1/den)*Z^n with k*v in the lattice for some k != 0.

    Same rank as the input; idempotent.
    """
    if lat.rank == 0:
        return lat
    res = _snf(ZMatrix([list(r) for r in lat.basis]))
    sat_rows = [res.Vinv.data[i] for i in range(res.rank)]
    return Lattice(lat.ambient_dim, sat_rows, lat.den)
