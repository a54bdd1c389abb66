"""Galois group certification for separable odd-degree integer polynomials.

The certificate route is one-sided: reduction cycle types (Dedekind) supply a
transitivity witness and a cycle type forcing the alternating group, then the
discriminant square test separates S_d from A_d.  The tool never claims a
group smaller than A_d; it answers Unknown instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import BadPrime, EvenDegree, Inseparable, ZeroInput
from .smith import bareiss_det


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial over Z, coefficients constant-first."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)
        assert self.coefficients[-1] != 0 or self.degree == 0

    @classmethod
    def from_coeffs(cls, coeffs):
        return cls(tuple(coeffs))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @property
    def leading(self):
        return self.coefficients[-1]

    def derivative(self):
        return IntPolynomial(
            tuple(i * c for i, c in enumerate(self.coefficients))[1:] or (0,)
        )

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __mul__(self, other):
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def shift(self, a):
        """f(x + a)."""
        xa = IntPolynomial((a, 1))
        cur = IntPolynomial((1,))
        total = IntPolynomial((0,))
        for c in self.coefficients:
            total = total + cur.scale(c)
            cur = cur * xa
        return total

    def scale(self, c):
        return IntPolynomial(tuple(c * x for x in self.coefficients))

    def __add__(self, other):
        a, b = list(self.coefficients), list(other.coefficients)
        if len(a) < len(b):
            a, b = b, a
        for i, y in enumerate(b):
            a[i] += y
        return IntPolynomial(tuple(a))

    def __repr__(self):
        return f"IntPolynomial{self.coefficients}"


def resultant(f: IntPolynomial, g: IntPolynomial):
    """Res(f, g) as the Sylvester determinant (exact, Bareiss)."""
    df, dg = f.degree, g.degree
    if df == 0:
        return f.coefficients[0] ** dg
    if dg == 0:
        return g.coefficients[0] ** df
    n = df + dg
    rows = []
    frev = list(reversed(f.coefficients))
    grev = list(reversed(g.coefficients))
    for i in range(dg):
        rows.append([0] * i + frev + [0] * (n - df - 1 - i))
    for i in range(df):
        rows.append([0] * i + grev + [0] * (n - dg - 1 - i))
    return bareiss_det(rows)


def discriminant(f: IntPolynomial):
    """disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f); zero iff f is inseparable."""
    d = f.degree
    assert d >= 1
    res = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, f.leading)
    assert r == 0
    return q


def disc_is_square(n) -> bool:
    """Exact perfect-square test in Z."""
    if n == 0:
        raise ZeroInput("discriminant zero")
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


# ---------------------------------------------------------------------------
# arithmetic mod p: distinct-degree factorisation


@lru_cache(maxsize=None)
def primes_up_to(bound):
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i, v in enumerate(sieve) if v]


class Ramified:
    """Sentinel: f mod p is not squarefree."""

    def __repr__(self):
        return "Ramified"

    def __eq__(self, other):
        return isinstance(other, Ramified)

    def __hash__(self):
        return hash("Ramified")


RAMIFIED = Ramified()


def _pmod(f, p):
    return [c % p for c in f]


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    a = list(a)
    binv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * binv % p
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return q, _ptrim(a[: len(b) - 1])


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    b = _pdivmod(base, mod, p)[1] if len(base) >= len(mod) else list(base)
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, b, p), mod, p)[1]
        e >>= 1
        if e:
            b = _pdivmod(_pmul(b, b, p), mod, p)[1]
    return result


def cycle_type_mod_p(f: IntPolynomial, p: int):
    """Degrees of the irreducible factors of f mod p (sorted tuple), or RAMIFIED.

    Distinct-degree factorisation: gcd with x^{p^k} - x peels off the product
    of the degree-k factors; cycle types only need the degrees, so no
    equal-degree splitting is performed.
    """
    if f.leading % p == 0:
        raise BadPrime(f"{p} divides the leading coefficient")
    fb = _ptrim(_pmod(list(f.coefficients), p))
    lead_inv = pow(fb[-1], -1, p)
    fb = [c * lead_inv % p for c in fb]
    deriv = _ptrim([(i * c) % p for i, c in enumerate(fb)][1:])
    if not deriv or len(_pgcd(fb, deriv, p)) > 1:
        return RAMIFIED
    degrees = []
    rem = fb
    h = [0, 1]  # x
    k = 0
    while len(rem) - 1 > 0:
        k += 1
        if 2 * k > len(rem) - 1:
            degrees.append(len(rem) - 1)
            break
        h = _ppowmod(h, p, rem, p)
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p  # h(x) - x
        g = _pgcd(rem, _ptrim(hx), p)
        if len(g) > 1:
            dk = len(g) - 1
            assert dk % k == 0
            degrees.extend([k] * (dk // k))
            rem, r = _pdivmod(rem, g, p)
            assert not r
            h = _pdivmod(h, rem, p)[1] if len(h) >= len(rem) else h
    return tuple(sorted(degrees))


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class GaloisCertificate:
    degree: int
    verdict: str  # "SymmetricGroup" | "AlternatingGroup" | "Unknown"
    witnesses: tuple  # (prime, cycle_type, role) triples in ascending prime order
    disc_square: bool
    prime_bound_used: int
    discriminant: int
    diagnostics: str = ""

    def witness_for(self, role):
        for p, t, r in self.witnesses:
            if r == role:
                return p, t
        return None


def _power_cycle_types(t):
    """Cycle types of all powers of a permutation with cycle type t."""
    out = set()
    order = math.lcm(*t)
    for k in range(1, order + 1):
        parts = []
        for c in t:
            g = math.gcd(c, k)
            parts.extend([c // g] * g)
        out.add(tuple(sorted(parts)))
    return out


def _forces_alternating(t, d):
    """Does an element of cycle type t force the group to contain A_d?

    Per-degree sufficient tables for transitive groups of prime degree
    d in {3, 5, 7} (prime degree makes transitive imply primitive):

    d=3: any transitive group of degree 3 already contains A_3.
    d=5: an element some power of which is a single 3-cycle; the transitive
         subgroups of S_5 are C5, D5, F20, A5, S5, and only the last two
         contain 3-cycles.
    d=7: a power equal to a single 3-cycle or a single transposition
         (Jordan's criterion for primitive groups), or any element of order
         divisible by 5 (no proper transitive subgroup of S_7 has order
         divisible by 5: |C7|=7, |D7|=14, |F21|=21, |F42|=42, |PSL(3,2)|=168).
    """
    if d == 3:
        return True
    powers = _power_cycle_types(t)
    three_cycle = tuple(sorted([3] + [1] * (d - 3)))
    if three_cycle in powers:
        return True
    if d == 7:
        transposition = tuple(sorted([2] + [1] * (d - 2)))
        if transposition in powers:
            return True
        if any(c % 5 == 0 for c in t):
            return True
    return False


def _is_odd_type(t, d):
    """Parity of a permutation with the given cycle type."""
    return (d - len(t)) % 2 == 1


def certify_galois(f: IntPolynomial, prime_bound: int = 1000) -> GaloisCertificate:
    """Certify Galois group in {S_d, A_d} for odd d in {3, 5, 7}, else Unknown.

    A non-Unknown verdict always carries: an unramified prime with f
    irreducible (transitivity), a prime whose cycle type forces A_d
    containment, and, for the symmetric verdict, an odd cycle type.
    """
    d = f.degree
    if d % 2 == 0:
        raise EvenDegree(f"degree {d} is even")
    if d < 3:
        raise ValueError("degree must be at least 3")
    disc = discriminant(f)
    if disc == 0:
        raise Inseparable("zero discriminant")
    if d not in (3, 5, 7):
        return GaloisCertificate(
            d, "Unknown", (), disc_is_square(disc), prime_bound, disc,
            diagnostics=f"degree {d} outside the supported table {{3, 5, 7}}",
        )
    square = disc_is_square(disc)
    irred = None
    jordan = None
    odd_wit = None
    witnesses = []
    for p in primes_up_to(prime_bound):
        if f.leading % p == 0:
            continue
        t = cycle_type_mod_p(f, p)
        if t is RAMIFIED:
            continue
        if irred is None and t == (d,):
            irred = (p, t, "irreducible")
            witnesses.append(irred)
        if jordan is None and _forces_alternating(t, d):
            jordan = (p, t, "alternating-containment")
            witnesses.append(jordan)
        if odd_wit is None and _is_odd_type(t, d):
            if square:
                raise AssertionError(
                    "square discriminant with an odd Frobenius cycle type"
                )
            odd_wit = (p, t, "odd-permutation")
            witnesses.append(odd_wit)
        if irred and jordan and (square or odd_wit):
            verdict = "AlternatingGroup" if square else "SymmetricGroup"
            return GaloisCertificate(
                d,
                verdict,
                tuple(sorted(witnesses)),
                square,
                prime_bound,
                disc,
            )
    return GaloisCertificate(
        d, "Unknown", tuple(sorted(witnesses)), square, prime_bound, disc,
        diagnostics="witness search exhausted the prime bound",
    )


# ---------------------------------------------------------------------------
# integer factorisation helpers (for discriminant classes)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below 3.3 * 10^24; fixed bases above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def pollard_rho(n: int, max_steps: int = 200_000):
    """One Brent-cycle pass with deterministic seeds; None when unlucky."""
    if n % 2 == 0:
        return 2
    for c in (1, 3, 5, 7, 11):
        x = y = 2
        d = 1
        steps = 0
        while d == 1 and steps < max_steps:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            steps += 1
        if 1 < d < n:
            return d
    return None
