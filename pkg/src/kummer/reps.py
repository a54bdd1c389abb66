"""G-modules over small prime fields: construction, simplicity, Hom spaces,
and invariants of twisted wedge-square duals.

Vectors are columns; a generator matrix M sends v to M v, and the assignment
extends to a homomorphism (checked on relation-closing Cayley edges by the
cocycle machinery before any cohomology is trusted).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fp
from .errors import DimTooLarge, GroupMismatch, MissingCharacter
from .groups import FiniteGroup, Perm, alternating_group, symmetric_group

SPIN_DIM_BOUND = 24


@dataclass
class GModule:
    """Action of a FiniteGroup on F_l^dim via one matrix per generator."""

    group: FiniteGroup
    dim: int
    l: int
    generator_matrices: tuple
    character: tuple | None = None
    _validated: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        self.generator_matrices = tuple(
            tuple(tuple(x % self.l for x in row) for row in m)
            for m in self.generator_matrices
        )
        assert len(self.generator_matrices) == len(self.group.generators)
        for m in self.generator_matrices:
            assert len(m) == self.dim and all(len(r) == self.dim for r in m)
        if self.character is not None:
            self.character = tuple(x % self.l for x in self.character)
            assert len(self.character) == len(self.group.generators)
            assert all(x % self.l for x in self.character), "character values must be units"

    def bit_rows(self):
        """Packed-row form of the generator matrices (F_2 modules only)."""
        assert self.l == 2
        return [
            tuple(sum((row[j] & 1) << j for j in range(self.dim)) for row in m)
            for m in self.generator_matrices
        ]


def permutation_module(group: FiniteGroup, l: int = 2) -> GModule:
    """F_l^n permuted the way the generators permute {0..n-1}."""
    n = len(group.generators[0].images)
    mats = []
    for s in group.generators:
        assert isinstance(s, Perm)
        m = [[0] * n for _ in range(n)]
        for x in range(n):
            m[s.images[x]][x] = 1
        mats.append(m)
    return GModule(group, n, l, tuple(mats))


def trivial_module(group: FiniteGroup, dim: int = 1, l: int = 2) -> GModule:
    eye = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    return GModule(group, dim, l, tuple(eye for _ in group.generators))


def zero_sum_module(group: FiniteGroup, d: int) -> GModule:
    """Zero-sum subspace of the permutation module F_2^d of a group of Perms.

    Basis: u_i = e_i + e_{d-1} for i < d-1, so u_{d-1} reads as 0.
    """
    mats = []
    for s in group.generators:
        assert isinstance(s, Perm) and len(s.images) == d
        m = [[0] * (d - 1) for _ in range(d - 1)]
        for i in range(d - 1):
            for target in (s.images[i], s.images[d - 1]):
                if target != d - 1:
                    m[target][i] ^= 1
        mats.append(m)
    return GModule(group, d - 1, 2, tuple(mats))


def standard_module(d: int, kind: str) -> GModule:
    """Zero-sum subspace of the permutation module F_2^d for S_d or A_d.

    d must be odd, which makes the permutation module split off this
    (d-1)-dimensional direct summand.
    """
    assert d % 2 == 1 and d >= 3, "odd degree required"
    group = symmetric_group(d) if kind == "S" else alternating_group(d)
    return zero_sum_module(group, d)


def product_factor_module(groups_modules) -> GModule:
    """Module of the direct product acting blockwise: factor i on summand i.

    Input: list of GModules, one per factor; all over the same prime.
    The resulting group is the direct product with the usual generator order.
    """
    from .groups import direct_product

    mods = list(groups_modules)
    l = mods[0].l
    assert all(m.l == l for m in mods)
    prod = direct_product(*[m.group for m in mods])
    total = sum(m.dim for m in mods)
    offsets = []
    off = 0
    for m in mods:
        offsets.append(off)
        off += m.dim
    mats = []
    for i, m in enumerate(mods):
        for gm in m.generator_matrices:
            big = [[1 if a == b else 0 for b in range(total)] for a in range(total)]
            o = offsets[i]
            for r in range(m.dim):
                for c in range(m.dim):
                    big[o + r][o + c] = gm[r][c]
            mats.append(big)
    return GModule(prod, total, l, tuple(mats))


def is_simple(m: GModule) -> bool:
    """True iff every nonzero vector generates the whole module.

    Exhaustive spin-up over all l^dim - 1 vectors; honest but only feasible
    at desk scale (the dim bound guards the worst of it).
    """
    if m.dim > SPIN_DIM_BOUND:
        raise DimTooLarge(f"dim {m.dim} > {SPIN_DIM_BOUND}")
    if m.dim == 0:
        return False
    l, dim = m.l, m.dim
    mats = m.generator_matrices
    for code in range(1, l**dim):
        v = []
        c = code
        for _ in range(dim):
            v.append(c % l)
            c //= l
        if not _spins_to_full(v, mats, dim, l):
            return False
    return True


def _spins_to_full(v, mats, dim, l):
    ech = fp.FpEchelon(dim, l)
    ech.add(v)
    queue = [v]
    while queue:
        w = queue.pop()
        for mat in mats:
            img = fp.mat_vec(mat, w, l)
            if ech.add(img):
                if ech.rank == dim:
                    return True
                queue.append(img)
    return ech.rank == dim


def endomorphism_algebra_dim(m: GModule) -> int:
    """Dimension over F_l of {E : E rho(s) = rho(s) E for all generators}."""
    dim, l = m.dim, m.l
    rows = []
    for a in m.generator_matrices:
        # unknown E (dim x dim), flattened row-major: E a - a E = 0
        for i in range(dim):
            for j in range(dim):
                row = [0] * (dim * dim)
                for k in range(dim):
                    row[i * dim + k] = (row[i * dim + k] + a[k][j]) % l
                    row[k * dim + j] = (row[k * dim + j] - a[i][k]) % l
                rows.append(row)
    return dim * dim - fp.rank(rows, l) if rows else dim * dim


def is_absolutely_simple(m: GModule) -> bool:
    """Simple with endomorphisms only the scalars.

    Over a finite field End of a simple module is a finite division algebra,
    hence a field (Wedderburn), so End = F_l is exactly absolute simplicity.
    """
    return is_simple(m) and endomorphism_algebra_dim(m) == 1


def hom_module_dim(m: GModule, n: GModule) -> int:
    """Dimension of the space of G-maps m -> n."""
    if m.group is not n.group or m.l != n.l:
        raise GroupMismatch("modules must share their group and prime")
    l = m.l
    dm, dn = m.dim, n.dim
    rows = []
    for a, b in zip(m.generator_matrices, n.generator_matrices):
        # unknown F (dn x dm): F a = b F
        for i in range(dn):
            for j in range(dm):
                row = [0] * (dn * dm)
                for k in range(dm):
                    row[i * dm + k] = (row[i * dm + k] + a[k][j]) % l
                for k in range(dn):
                    row[k * dm + j] = (row[k * dm + j] - b[i][k]) % l
                rows.append(row)
    return dn * dm - fp.rank(rows, l) if rows else dn * dm


def wedge_square_matrices(m: GModule):
    """Action matrices on wedge^2 of the module, basis e_i ^ e_j (i < j)."""
    dim, l = m.dim, m.l
    pairs = [(i, j) for i in range(dim) for j in range(i + 1, dim)]
    pidx = {pr: a for a, pr in enumerate(pairs)}
    out = []
    for mat in m.generator_matrices:
        big = [[0] * len(pairs) for _ in range(len(pairs))]
        for (i, j), col in pidx.items():
            # (M e_i) ^ (M e_j) = sum_{k<t} (M_ki M_tj - M_ti M_kj) e_k ^ e_t
            for k, t in pairs:
                coeff = (mat[k][i] * mat[t][j] - mat[t][i] * mat[k][j]) % l
                if coeff:
                    big[pidx[(k, t)]][col] = coeff
        out.append(big)
    return pairs, out


def wedge2_dual_invariants_dim(m: GModule) -> int:
    """dim of G-invariants of Hom(wedge^2 m, chi) for the stored character chi.

    The trivial character must be supplied explicitly (legitimate whenever the
    group acts through the symplectic group of an alternating form).
    """
    if m.character is None:
        raise MissingCharacter("module carries no character for the twist")
    if m.dim <= 1:
        return 0
    l = m.l
    pairs, wedge = wedge_square_matrices(m)
    nw = len(pairs)
    rows = []
    for chi_s, w in zip(m.character, wedge):
        # invariant functional f: f(W x) = chi f(x)  <=>  (W^T - chi I) f = 0
        for i in range(nw):
            row = [(w[k][i] - (chi_s if k == i else 0)) % l for k in range(nw)]
            rows.append(row)
    return nw - fp.rank(rows, l) if rows else nw


def h0(m: GModule) -> int:
    """Dimension of the simultaneous fixed space of the generator matrices."""
    dim, l = m.dim, m.l
    rows = []
    for a in m.generator_matrices:
        for i in range(dim):
            rows.append([(a[i][j] - (1 if i == j else 0)) % l for j in range(dim)])
    return dim - fp.rank(rows, l) if rows else dim


def with_character(m: GModule, character) -> GModule:
    return GModule(m.group, m.dim, m.l, m.generator_matrices, tuple(character))


def invariant_alternating_form(m: GModule):
    """A nonzero G-invariant alternating bilinear form, or None.

    Witnesses embeddings into the symplectic group of the form.
    """
    dim, l = m.dim, m.l
    pairs = [(i, j) for i in range(dim) for j in range(i + 1, dim)]
    rows = []
    for a in m.generator_matrices:
        # B(Mx, My) = B(x, y) with B alternating: unknowns B_ij (i<j)
        for i, j in pairs:
            row = [0] * len(pairs)
            for k, t in pairs:
                coeff = (a[k][i] * a[t][j] - a[t][i] * a[k][j]) % l
                row[pairs.index((k, t))] = (
                    row[pairs.index((k, t))] + coeff - (1 if (k, t) == (i, j) else 0)
                ) % l
            rows.append(row)
    basis = fp.kernel_basis(rows, len(pairs), l)
    if not basis:
        return None
    b = basis[0]
    form = [[0] * dim for _ in range(dim)]
    for (i, j), x in zip(pairs, b):
        form[i][j] = x
        form[j][i] = (-x) % l
    return form
