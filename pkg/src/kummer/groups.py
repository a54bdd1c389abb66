"""Finite group engine: permutations, matrix groups over small prime fields,
semidirect products V x| G with V an F_2 space, direct products, Cayley-BFS
enumeration, normal closures and index-l quotient detection.

Elements hash by a canonical byte-free key tuple, so enumeration order is
deterministic for a fixed generator order.
"""

from __future__ import annotations

import math
from functools import lru_cache

from . import gf2
from .errors import CapExceeded, DimensionMismatch

DEFAULT_CAP = 2_000_000


class Perm:
    """Permutation of {0..n-1}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n, cycles):
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    def __mul__(self, other):
        # (self * other)(x) = self(other(x))
        o = other.images
        s = self.images
        return Perm(s[o[x]] for x in range(len(s)))

    def inverse(self):
        img = [0] * len(self.images)
        for i, j in enumerate(self.images):
            img[j] = i
        return Perm(img)

    def key(self):
        return ("p", self.images)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def is_even(self):
        seen = [False] * len(self.images)
        parity = 0
        for i in range(len(self.images)):
            if seen[i]:
                continue
            j = i
            ln = 0
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                ln += 1
            parity ^= (ln - 1) & 1
        return parity == 0

    def __repr__(self):
        return f"Perm{self.images}"


class FpMat:
    """Invertible square matrix over F_p (column vectors, left action)."""

    __slots__ = ("p", "rows")

    def __init__(self, p, rows):
        self.p = p
        self.rows = tuple(tuple(x % p for x in r) for r in rows)

    @classmethod
    def identity(cls, p, n):
        return cls(p, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self):
        return len(self.rows)

    def __mul__(self, other):
        p = self.p
        bt = tuple(zip(*other.rows))
        return FpMat(
            p,
            [
                tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt)
                for row in self.rows
            ],
        )

    def inverse(self):
        from .fp import mat_inverse

        return FpMat(self.p, mat_inverse([list(r) for r in self.rows], self.p))

    def key(self):
        return ("m", self.p, self.rows)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, FpMat) and self.p == other.p and self.rows == other.rows

    def __repr__(self):
        return f"FpMat(p={self.p}, {self.rows})"


class SemidirectElement:
    """Pair (v, g) in V x| G with V = F_2^dim and multiplication
    (v1, g1) (v2, g2) = (v1 + g1.v2, g1 g2).

    ``mat`` is the action matrix of g on V as packed F_2 rows; it is carried
    along so products never have to re-derive the action from a word.
    """

    __slots__ = ("v", "g", "mat")

    def __init__(self, v, g, mat):
        self.v = v
        self.g = g
        self.mat = tuple(mat)

    def __mul__(self, other):
        return SemidirectElement(
            self.v ^ gf2.matvec(self.mat, other.v),
            self.g * other.g,
            gf2.matmul_rows(self.mat, other.mat),
        )

    def inverse(self):
        minv = gf2.mat_inverse(list(self.mat)) if self.mat else []
        return SemidirectElement(gf2.matvec(minv, self.v), self.g.inverse(), minv)

    def key(self):
        return ("sd", self.v, self.g.key())

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return (
            isinstance(other, SemidirectElement)
            and self.v == other.v
            and self.g == other.g
        )

    def __repr__(self):
        return f"SemidirectElement(v={self.v:b}, g={self.g!r})"


class DirectElement:
    """Tuple of factor elements with componentwise multiplication."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(parts)

    def __mul__(self, other):
        return DirectElement(a * b for a, b in zip(self.parts, other.parts))

    def inverse(self):
        return DirectElement(a.inverse() for a in self.parts)

    def key(self):
        return ("x",) + tuple(a.key() for a in self.parts)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, DirectElement) and self.parts == other.parts

    def __repr__(self):
        return f"DirectElement{self.parts}"


class FiniteGroup:
    """Finitely generated group with bounded Cayley-BFS enumeration.

    After ``enumerate()``: ``elements`` is the BFS-ordered element list with
    the identity at index 0, ``edges[i*k + j]`` is the index of
    ``elements[i] * generators[j]``, and ``parents[y]`` is the flat edge index
    that first produced y (tree edge), -1 for the identity.
    """

    def __init__(self, generators, cap=DEFAULT_CAP, known_order=None, name=""):
        self.generators = list(generators)
        assert self.generators, "a group needs at least one generator"
        self.cap = cap
        self.known_order = known_order
        self.name = name
        self.elements = None
        self.edges = None
        self.parents = None
        self._index = None

    def identity(self):
        g = self.generators[0]
        return g * g.inverse()

    def enumerate(self):
        """Freeze the element list and Cayley edges (idempotent)."""
        if self.elements is not None:
            return self
        if self.known_order is not None and self.known_order > self.cap:
            raise CapExceeded(
                f"{self.name or 'group'} has order {self.known_order} > cap {self.cap}"
            )
        gens = self.generators
        k = len(gens)
        e = self.identity()
        elements = [e]
        index = {e.key(): 0}
        edges = []
        parents = [-1]
        i = 0
        while i < len(elements):
            x = elements[i]
            for j, s in enumerate(gens):
                y = x * s
                ky = y.key()
                yi = index.get(ky)
                if yi is None:
                    yi = len(elements)
                    if yi >= self.cap:
                        raise CapExceeded(
                            f"enumeration of {self.name or 'group'} passed cap {self.cap}"
                        )
                    index[ky] = yi
                    elements.append(y)
                    parents.append(i * k + j)
                edges.append(yi)
            i += 1
        self.elements = elements
        self.edges = edges
        self.parents = parents
        self._index = index
        if self.known_order is not None and self.known_order != len(elements):
            raise AssertionError(
                f"{self.name}: enumerated order {len(elements)} != expected {self.known_order}"
            )
        return self

    def order(self):
        self.enumerate()
        return len(self.elements)

    def index_of(self, el):
        self.enumerate()
        return self._index[el.key()]

    def __contains__(self, el):
        self.enumerate()
        return el.key() in self._index

    def element_orders(self):
        """Sorted list of element orders (desk scale only)."""
        self.enumerate()
        e = self.identity()
        out = []
        for x in self.elements:
            n = 1
            y = x
            while y != e:
                y = y * x
                n += 1
            out.append(n)
        return sorted(out)

    def exponent(self):
        return math.lcm(*set(self.element_orders()))

    def subgroup_closure(self, seeds):
        """Elements of <seeds>, BFS products only (enough for finite groups)."""
        e = self.identity()
        els = {e.key(): e}
        order_list = [e]
        gens = []
        for t in seeds:
            if t.key() not in els:
                self._extend_closure(els, order_list, gens, t)
        return els, order_list, gens

    def normal_closure(self, seeds):
        """Smallest normal subgroup containing the seeds, as an element dict."""
        els, order_list, gens = self.subgroup_closure(seeds)
        # conjugating the subgroup generators by the group generators is enough
        # for normality; new conjugates are folded in until stable
        i = 0
        while i < len(gens):
            t = gens[i]
            for s in self.generators:
                c = s * t * s.inverse()
                if c.key() not in els:
                    self._extend_closure(els, order_list, gens, c)
            i += 1
        return els

    def _extend_closure(self, els, order_list, gens, t):
        # incremental product closure after adjoining t: every existing element
        # is multiplied by t once, then the new tail is closed under all gens
        gens.append(t)
        n0 = len(order_list)
        for idx in range(n0):
            y = order_list[idx] * t
            ky = y.key()
            if ky not in els:
                els[ky] = y
                order_list.append(y)
        j = n0
        while j < len(order_list):
            x = order_list[j]
            for u in gens:
                y = x * u
                ky = y.key()
                if ky not in els:
                    if len(els) >= self.cap:
                        raise CapExceeded("closure passed cap")
                    els[ky] = y
                    order_list.append(y)
            j += 1


def elementary_l_quotient_kernel(g: FiniteGroup, l: int):
    """Normal closure K of generator commutators and l-th powers of generators.

    g/K is the maximal elementary abelian l-quotient; returns the element dict
    of K.
    """
    g.enumerate()
    gens = g.generators
    seeds = [
        s1 * s2 * s1.inverse() * s2.inverse()
        for i, s1 in enumerate(gens)
        for s2 in gens[i + 1 :]
    ]
    for s in gens:
        x = s
        for _ in range(l - 1):
            x = x * s
        seeds.append(x)
    k = g.normal_closure(seeds)
    assert len(g.elements) % len(k) == 0
    return k


def has_index_l_normal_subgroup(g: FiniteGroup, l: int) -> bool:
    """True iff there is a surjection g -> Z/l (l divides the index of the
    elementary quotient kernel)."""
    k = elementary_l_quotient_kernel(g, l)
    return (len(g.elements) // len(k)) % l == 0


def index_l_quotient_rank(g: FiniteGroup, l: int) -> int:
    """r such that the maximal elementary abelian l-quotient of g is (Z/l)^r."""
    k = elementary_l_quotient_kernel(g, l)
    idx = len(g.elements) // len(k)
    r = 0
    while idx % l == 0:
        idx //= l
        r += 1
    assert idx == 1, "quotient by the closure is not an l-group"
    return r


def semidirect(v_dim: int, g: FiniteGroup, action) -> FiniteGroup:
    """Semidirect product F_2^v_dim x| g for a given F_2 action of g.

    ``action`` is either a G-module object over F_2 (with generator_matrices
    aligned to g.generators) or a plain list of such matrices; matrices may be
    given as packed rows (ints) or 0/1 row lists.  Generators of the result
    are the basis translations followed by the lifted generators of g.
    """
    mats = _action_rows(v_dim, g, action)
    idrows = tuple(1 << i for i in range(v_dim))
    gens = [SemidirectElement(1 << i, g.identity(), idrows) for i in range(v_dim)]
    gens += [SemidirectElement(0, s, mats[j]) for j, s in enumerate(g.generators)]
    order = g.known_order * (1 << v_dim) if g.known_order else None
    if g.elements is not None and order is None:
        order = len(g.elements) * (1 << v_dim)
    return FiniteGroup(gens, cap=g.cap, known_order=order, name=f"2^{v_dim} x| {g.name or 'G'}")


def _action_rows(v_dim, g, action):
    """Normalise an action spec to packed F_2 rows per generator."""
    if hasattr(action, "generator_matrices"):
        if getattr(action, "l", 2) != 2:
            raise DimensionMismatch("semidirect products need an F_2 action")
        if getattr(action, "dim", v_dim) != v_dim:
            raise DimensionMismatch(
                f"action dimension {action.dim} != v_dim {v_dim}"
            )
        raw = action.generator_matrices
    else:
        raw = action
    if len(raw) != len(g.generators):
        raise DimensionMismatch("need one action matrix per generator")
    mats = []
    for m in raw:
        rows = []
        for r in m:
            if isinstance(r, int):
                rows.append(r)
            else:
                if len(r) != v_dim:
                    raise DimensionMismatch("action matrix has wrong shape")
                rows.append(sum((x & 1) << i for i, x in enumerate(r)))
        if len(rows) != v_dim:
            raise DimensionMismatch("action matrix has wrong shape")
        mats.append(tuple(rows))
    return mats


def direct_product(*groups) -> FiniteGroup:
    """Direct product; generators are factor generators padded with identities."""
    ids = [g.identity() for g in groups]
    gens = []
    for i, g in enumerate(groups):
        for s in g.generators:
            parts = list(ids)
            parts[i] = s
            gens.append(DirectElement(parts))
    order = None
    if all(g.known_order or g.elements is not None for g in groups):
        order = 1
        for g in groups:
            order *= g.known_order if g.known_order else len(g.elements)
    cap = max(g.cap for g in groups)
    return FiniteGroup(gens, cap=cap, known_order=order, name=" x ".join(g.name or "G" for g in groups))


# ---------------------------------------------------------------------------
# standard construction fixtures


@lru_cache(maxsize=None)
def symmetric_group(d) -> FiniteGroup:
    """S_d from the transposition (0 1) and the d-cycle."""
    gens = [
        Perm.from_cycles(d, [(0, 1)]),
        Perm.from_cycles(d, [tuple(range(d))]),
    ]
    return FiniteGroup(gens, known_order=math.factorial(d), name=f"S{d}")


@lru_cache(maxsize=None)
def alternating_group(d) -> FiniteGroup:
    """A_d for odd d, from a 3-cycle and the (even) d-cycle."""
    assert d % 2 == 1 and d >= 3
    if d == 3:
        gens = [Perm.from_cycles(3, [(0, 1, 2)])]
    else:
        gens = [
            Perm.from_cycles(d, [(0, 1, 2)]),
            Perm.from_cycles(d, [tuple(range(d))]),
        ]
    return FiniteGroup(gens, known_order=math.factorial(d) // 2, name=f"A{d}")


def group_order_formula(family: str, n: int, l: int) -> int:
    """Closed-form orders of Sp(n, F_l), GSp(n, F_l), PSp(n, F_l); n even."""
    assert n % 2 == 0 and n >= 2
    m = n // 2
    sp = l ** (m * m)
    for i in range(1, m + 1):
        sp *= l ** (2 * i) - 1
    if family == "Sp":
        return sp
    if family == "GSp":
        return sp * (l - 1)
    if family == "PSp":
        return sp // math.gcd(2, l - 1)
    raise ValueError(f"unknown family {family!r}")


def symplectic_form(n):
    """Standard alternating form: antidiag(1, -1) blocks on (e_i, f_i) pairs."""
    j = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        j[i][i + 1] = 1
        j[i + 1][i] = -1
    return j


def transvection(v, l, n):
    """Symplectic transvection x -> x + <x, v> v as an FpMat (column action)."""
    j = symplectic_form(n)
    vj = [sum(v[a] * j[a][b] for a in range(n)) % l for b in range(n)]
    rows = [
        [((1 if i == k else 0) + v[i] * vj[k]) % l for k in range(n)]
        for i in range(n)
    ]
    m = FpMat(l, rows)
    assert _preserves_form(m, j, l, 1)
    return m


def _preserves_form(m, j, l, mu):
    n = m.n
    # column action: <Mx, My> = x^T (M^T J M) y must equal mu * <x, y>
    mt = list(zip(*m.rows))
    mtj = [[sum(mt[i][a] * j[a][b] for a in range(n)) % l for b in range(n)] for i in range(n)]
    mtjm = [
        [sum(mtj[i][a] * m.rows[a][b] for a in range(n)) % l for b in range(n)]
        for i in range(n)
    ]
    return all(mtjm[i][k] == (mu * j[i][k]) % l for i in range(n) for k in range(n))


# transvection directions that generate Sp(4, F_l) for small l; verified by
# comparing the BFS order with the closed formula in the test suite
_SP4_DIRECTIONS = [
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
    (1, 0, 1, 0),
    (0, 1, 0, 1),
]


@lru_cache(maxsize=None)
def symplectic_group(n, l) -> FiniteGroup:
    """Sp(n, F_l) generated by symplectic transvections (n = 4 supported)."""
    assert n == 4, "only the rank-two case is wired up"
    gens = [transvection(v, l, n) for v in _SP4_DIRECTIONS]
    return FiniteGroup(
        gens, known_order=group_order_formula("Sp", n, l), name=f"Sp({n},F{l})"
    )


@lru_cache(maxsize=None)
def general_symplectic_group(n, l) -> FiniteGroup:
    """GSp(n, F_l): Sp generators plus one similitude of factor a primitive root."""
    assert n == 4
    nu = _primitive_root(l)
    d = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        d[i][i] = nu
        d[i + 1][i + 1] = 1
    sim = FpMat(l, d)
    assert _preserves_form(sim, symplectic_form(n), l, nu)
    gens = list(symplectic_group(n, l).generators) + [sim]
    return FiniteGroup(
        gens, known_order=group_order_formula("GSp", n, l), name=f"GSp({n},F{l})"
    )


def _primitive_root(l):
    for g in range(2, l):
        seen = set()
        x = 1
        for _ in range(l - 1):
            x = x * g % l
            seen.add(x)
        if len(seen) == l - 1:
            return g
    assert l == 2
    return 1
