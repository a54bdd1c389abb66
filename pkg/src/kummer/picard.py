"""The exceptional-class lattice model Z[T] < Pi_1 < Pi for Kummer varieties.

Points of the halved torsor are identified with F_2^{2g}; the ambient space
is (1/2) Z^(2^{2g}) so every half-sum generator is integral in numerators.
Pi is spanned by Z[T] together with the half-sums over affine hyperplanes
L(x) = c, and Pi_1 by Z[T] together with half the full sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import gf2
from .errors import ActionMismatch, GTooLarge
from .groups import DirectElement, FiniteGroup, SemidirectElement
from .lattice import Lattice, lattice_index
from .reps import GModule
from .smith import ZMatrix, _snf, bareiss_rank

EQUIVARIANT_G_CAP = 3
NUMEROLOGY_G_CAP = 6


@dataclass(frozen=True)
class KummerLatticeModel:
    g: int
    ambient_dim: int
    zt: Lattice
    pi1: Lattice
    pi: Lattice
    ns_rank: int

    @property
    def rank(self):
        return self.ambient_dim


def _half_sum_row(g, L, c):
    """Indicator numerator of {x in F_2^{2g} : L.x = c} (denominator 2)."""
    n = 1 << (2 * g)
    return [1 if ((L & x).bit_count() & 1) == c else 0 for x in range(n)]


def build_nikulin_lattice(g: int, ns_rank: int = 1) -> KummerLatticeModel:
    """Construct Z[T], Pi_1, Pi for dimension g and verify the filtration.

    Pi: all 2^{2g+1} affine-hyperplane half-sums plus Z[T]; the redundancy is
    accepted so every generator can be audited against its (L, c).
    """
    if g < 2:
        raise GTooLarge("the model needs g >= 2")
    if g > EQUIVARIANT_G_CAP:
        raise GTooLarge(f"lattice model capped at g <= {EQUIVARIANT_G_CAP}")
    n = 1 << (2 * g)
    unit_rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    zt = Lattice(n, unit_rows, den=2)
    ones = [1] * n
    pi1 = Lattice(n, unit_rows + [ones], den=2)
    half_sums = [_half_sum_row(g, L, c) for L in range(n) for c in (0, 1)]
    pi = Lattice(n, unit_rows + half_sums, den=2)
    model = KummerLatticeModel(g, n, zt, pi1, pi, ns_rank)
    _verify_model(model)
    return model


def _verify_model(model):
    g, n = model.g, model.ambient_dim
    assert model.zt.rank == model.pi1.rank == model.pi.rank == n
    assert lattice_index(model.zt, model.pi1) == 2
    assert lattice_index(model.pi1, model.pi) == 1 << (2 * g)
    idx = lattice_index(model.zt, model.pi)
    assert idx == 1 << (2 * g + 1)
    # quotient Pi / Z[T] is elementary abelian of rank 2g + 1
    assert quotient_two_ranks(model.zt, model.pi) == 2 * g + 1


def quotient_two_ranks(sub: Lattice, sup: Lattice) -> int:
    """Number of 2s in the SNF of sub expressed in sup coordinates."""
    coords = []
    for row in sub.basis:
        c = sup.coords(list(row), sub.den)
        assert c is not None
        coords.append(c)
    diag = _snf(ZMatrix(coords)).D.diagonal()
    assert all(d in (1, 2) for d in diag), f"quotient is not elementary abelian: {diag}"
    return sum(1 for d in diag if d == 2)


def zt_in_pi_coordinates(model) -> Lattice:
    """Z[T] written in the basis of Pi (an index-2^{2g+1} sublattice of Z^n)."""
    coords = []
    for row in model.zt.basis:
        c = model.pi.coords(list(row), model.zt.den)
        assert c is not None
        coords.append(c)
    return Lattice(model.ambient_dim, coords)


def canonical_class(g: int):
    """K = ((g-2)/2) * sum of exceptional classes, as (numerators, 2).

    Zero exactly when g = 2; an effective class for every g >= 3.
    """
    if g < 2:
        raise GTooLarge("the model needs g >= 2")
    n = 1 << (2 * g)
    return (tuple([g - 2] * n), 2)


def canonical_class_in_pi1(g: int) -> bool:
    """Exact membership of the canonical class in Pi_1, any g >= 2.

    Decomposition witness: (g-2) * halfsum = a * halfsum + b * fullsum with
    a = (g-2) mod 2 and b = (g-2-a)/2, both Pi_1 generators.
    """
    nums, den = canonical_class(g)
    a = (g - 2) % 2
    b = (g - 2 - a) // 2
    n = len(nums)
    recon = [a * 1 + b * 2 for _ in range(n)]
    return list(nums) == recon


def exceptional_intersections(g: int):
    """Pairing of exceptional classes against their ruling curves: -2 I."""
    if g < 2:
        raise GTooLarge("the model needs g >= 2")
    if g > EQUIVARIANT_G_CAP:
        raise GTooLarge(f"intersection table capped at g <= {EQUIVARIANT_G_CAP}")
    n = 1 << (2 * g)
    return [[-2 if i == j else 0 for j in range(n)] for i in range(n)]


def numerology(g: int, ns_rank: int):
    """Picard rank, Betti numbers and h^2 for dimension g, with b_2 = h^2 enforced."""
    if g < 2:
        raise GTooLarge("the model needs g >= 2")
    if g > NUMEROLOGY_G_CAP:
        raise GTooLarge(f"numerology capped at g <= {NUMEROLOGY_G_CAP}")
    assert ns_rank >= 1
    n = 1 << (2 * g)
    picard = n + ns_rank
    betti = [0] * (2 * g + 1)
    betti[0] = betti[2 * g] = 1
    for i in range(1, g):
        betti[2 * i] = math.comb(2 * g, 2 * i) + n
    h2 = g * (2 * g - 1) + n
    assert betti[2] == h2, "b_2 must equal dim H^2"
    return {"picard_rank": picard, "betti": betti, "h2_dim": h2}


# ---------------------------------------------------------------------------
# equivariant structure


def torsor_factor_group(module: GModule, nontrivial: bool, cocycle=None) -> FiniteGroup:
    """Galois group of the torsor field for one factor, acting affinely.

    Nontrivial torsor: V x| G with one translation generator (the module is
    simple, so its orbit spans) plus the lifted generators of G, optionally
    twisted by an explicit cocycle value per generator.  Trivial torsor: the
    linear lift of G alone.
    """
    dim = module.dim
    rows_per_gen = module.bit_rows()
    ggens = module.group.generators
    if cocycle is None:
        cocycle = [0] * len(ggens)
    cvals = []
    for c in cocycle:
        if isinstance(c, int):
            cvals.append(c)
        else:
            cvals.append(sum((int(x) & 1) << i for i, x in enumerate(c)))
    gens = []
    if nontrivial:
        gens.append(
            SemidirectElement(1, module.group.identity(), tuple(1 << i for i in range(dim)))
        )
    elif any(cvals):
        raise ActionMismatch("trivial torsor factors cannot carry a cocycle twist")
    gens += [
        SemidirectElement(cvals[j], s, rows_per_gen[j]) for j, s in enumerate(ggens)
    ]
    base_order = module.group.known_order
    if base_order is None and module.group.elements is not None:
        base_order = len(module.group.elements)
    order = None
    if base_order is not None:
        order = base_order * ((1 << dim) if nontrivial else 1)
    name = f"{'2^%d x| ' % dim if nontrivial else ''}{module.group.name or 'G'}"
    return FiniteGroup(gens, cap=module.group.cap, known_order=order, name=name)


def _parts(element, nfactors):
    if isinstance(element, DirectElement):
        assert len(element.parts) == nfactors
        return element.parts
    assert nfactors == 1
    return (element,)


def point_permutations(p_group: FiniteGroup, dims):
    """Per-generator permutation of F_2^(sum dims) induced by the affine parts."""
    total = sum(dims)
    npoints = 1 << total
    offsets = []
    off = 0
    for d in dims:
        offsets.append(off)
        off += d
    perms = []
    for gen in p_group.generators:
        parts = _parts(gen, len(dims))
        perm = [0] * npoints
        for x in range(npoints):
            y = 0
            for i, part in enumerate(parts):
                xi = (x >> offsets[i]) & ((1 << dims[i]) - 1)
                if not isinstance(part, SemidirectElement):
                    raise ActionMismatch("generators must carry affine data")
                yi = gf2.matvec(part.mat, xi) ^ part.v
                y |= yi << offsets[i]
            perm[x] = y
        if sorted(perm) != list(range(npoints)):
            raise ActionMismatch("affine data does not permute the points")
        perms.append(perm)
    return perms


def lattice_action_matrices(lat: Lattice, perm):
    """Integer matrix of the coordinate permutation in the basis of lat.

    Row convention: coordinate row c maps to c * M.  Raises ActionMismatch
    when the lattice is not stable under the permutation.
    """
    n = lat.ambient_dim
    solver_rows = []
    for row in lat.basis:
        image = [0] * n
        for x in range(n):
            image[perm[x]] = row[x]
        c = lat.coords(image, lat.den)
        if c is None:
            raise ActionMismatch("lattice is not stable under the point action")
        solver_rows.append(c)
    return solver_rows


def h1_two_torsion_dim(int_mats):
    """dim of the 2-torsion of H^1 for a torsion-free module given by integer
    generator matrices, via the doubling sequence:

        0 -> M^G / 2 M^G -> (M/2)^G -> H^1(G, M)[2] -> 0

    so the answer is rank_Q(W) - rank_{F_2}(W) for W = [M_s - I | ...].
    """
    if not int_mats:
        return 0
    r = len(int_mats[0])
    wide = []
    for i in range(r):
        row = []
        for m in int_mats:
            row.extend(m[i][j] - (1 if i == j else 0) for j in range(r))
        wide.append(row)
    rank_q = bareiss_rank(wide)
    packed = [sum((row[j] & 1) << j for j in range(len(row))) for row in wide]
    rank_f2 = gf2.F2Matrix(len(packed), len(wide[0]), packed).rank()
    assert rank_q >= rank_f2
    return rank_q - rank_f2


@dataclass
class EquivariantModel:
    """Action of the torsor Galois group on the lattice filtration."""

    model: KummerLatticeModel
    group: FiniteGroup
    flags: tuple
    dims: tuple
    point_perms: list
    pi1_matrices: list
    pi_matrices: list
    factor_modules: list  # GModule of the product group on each V_i
    tau_cocycles: list  # per factor: tuple over generators of F_2 vectors

    def h1_pi1_two_torsion(self):
        """All of H^1(P, Pi_1): the exceptional-class sublattice is a
        permutation module with H^1 = 0, and the quotient is Z/2, so H^1 of
        Pi_1 embeds in Hom(P, Z/2) and equals its own 2-torsion."""
        return h1_two_torsion_dim(self.pi1_matrices)

    def permutation_basis_exists(self):
        """Is {e_x : x != 0} + {half the full sum} stable under every generator."""
        return all(perm[0] == 0 for perm in self.point_perms)


def equivariant_lattice(model: KummerLatticeModel, p_group: FiniteGroup, flags) -> EquivariantModel:
    """Equip the lattice model with the action of the torsor Galois group.

    The generators of p_group must carry affine data (per-factor pairs
    (v, g) with the action matrix); flags mark which factors are nontrivial
    torsors, and trivial factors must act linearly.
    """
    flags = tuple(bool(f) for f in flags)
    first = _parts(p_group.generators[0], len(flags))
    dims = tuple(len(part.mat) for part in first)
    if sum(dims) != 2 * model.g:
        raise ActionMismatch(
            f"factor dimensions {dims} do not fill F_2^{2 * model.g}"
        )
    for gen in p_group.generators:
        for i, part in enumerate(_parts(gen, len(flags))):
            if not flags[i] and part.v:
                raise ActionMismatch("trivial-flag factor carries a translation")
    perms = point_permutations(p_group, dims)
    pi1_mats = [lattice_action_matrices(model.pi1, perm) for perm in perms]
    pi_mats = [lattice_action_matrices(model.pi, perm) for perm in perms]
    factor_modules = []
    tau = []
    for i, d in enumerate(dims):
        mats = []
        taus = []
        for gen in p_group.generators:
            part = _parts(gen, len(flags))[i]
            mats.append(
                tuple(
                    tuple((part.mat[r] >> cidx) & 1 for cidx in range(d))
                    for r in range(d)
                )
            )
            taus.append(tuple((part.v >> b) & 1 for b in range(d)))
        factor_modules.append(GModule(p_group, d, 2, tuple(mats)))
        tau.append(tuple(taus))
    return EquivariantModel(
        model, p_group, flags, dims, perms, pi1_mats, pi_mats, factor_modules, tau
    )
