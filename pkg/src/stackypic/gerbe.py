"""Picard groups of gerbes over stacky curves, from abelianized data.

For a gerbe ``X -> Y`` banded by ``H`` there is an exact sequence

    0 -> Pic(Y) -> Pic(X) -> Hom(H, G_m) -> H^2(Y, G_m)

so ``Pic(X)`` is an extension of the kernel of the obstruction map by
``Pic(Y)``.  The sequence does not fix the extension; it is supplied as
lift relations ``m_j * lambda_j = p^*(t_j)``, one per cyclic summand
``Z/m_j`` of the kernel.  Since ``Ext^1(Z/m, A) = A/mA`` this covers every
abelian extension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Sequence

from .errors import ElementGroupMismatch, EnumerationTooLarge, IllDefined, KernelMismatch
from .groups import (
    ExactnessReport,
    GroupElement,
    Homomorphism,
    InvariantFactorDecomposition,
    PresentedGroup,
    check_short_exact,
    cyclic_sum,
    decompose,
    free_group,
    kernel,
    make_hom,
    pushout,
)
from .matrix import IntegerMatrix
from .rigidified import CoarsePicard, StackyPointSpec, build_pic_rigidified

ENUMERATION_BOUND = 10**5

H2_ASSUMPTION = "the supplied H^2(Y, G_m) presentation and obstruction map are taken as correct"
LIFT_ASSUMPTION = "the lift relations are taken to describe the extension class of the gerbe"


@dataclass(frozen=True)
class BandData:
    """Abelianization of the band, ``H^ab = Z/n_1 + ... + Z/n_k``."""

    ab_invariants: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ab_invariants", tuple(self.ab_invariants))
        if any(not isinstance(n, int) or n < 2 for n in self.ab_invariants):
            raise ValueError(f"band invariants must be integers >= 2: {self.ab_invariants}")


@dataclass(frozen=True)
class ObstructionData:
    h2_group: PresentedGroup
    map: Homomorphism

    def __post_init__(self):
        if self.map.target != self.h2_group:
            raise ValueError("obstruction map must land in h2_group")


@dataclass(frozen=True)
class LiftRelation:
    """``character_order * lambda = p^*(target)``."""

    character_order: int
    target: GroupElement

    def __post_init__(self):
        if not isinstance(self.character_order, int) or self.character_order < 1:
            raise ValueError("lift order must be a positive integer")


@dataclass(frozen=True)
class GerbePicard:
    base: PresentedGroup
    pic: PresentedGroup
    pullback: Homomorphism
    lifts: tuple[GroupElement, ...]
    chi: Homomorphism
    kernel_group: PresentedGroup
    verification: ExactnessReport


def character_group(band: BandData) -> PresentedGroup:
    """``Hom(H, G_m)``; characters of ``mu_n`` are identified with ``Z/n``."""
    n = band.ab_invariants
    return cyclic_sum(n, [f"chi{j + 1}" for j in range(len(n))])


def obstruction_map(band: BandData, h2_group: PresentedGroup, images) -> ObstructionData:
    """Validated ``(-)_*[X]`` from the character group of ``band``."""
    return ObstructionData(h2_group, make_hom(character_group(band), h2_group, images))


def obstruction_kernel(obs: ObstructionData) -> tuple[PresentedGroup, Homomorphism]:
    return kernel(obs.map)


def build_pic_gerbe(picY: PresentedGroup, kernel_gens: Sequence[LiftRelation],
                    lift_labels: Sequence[str] | None = None) -> GerbePicard:
    """``(Z^s + Pic(Y)) / <(m_j f_j, -t_j)>`` with lift generators first."""
    for j, rel in enumerate(kernel_gens):
        if rel.target.group != picY:
            raise ElementGroupMismatch(f"lift target {j + 1} is not in Pic(Y)")
    s = len(kernel_gens)
    if lift_labels is None:
        lift_labels = [f"lambda{j + 1}" for j in range(s)]
    orders = [rel.character_order for rel in kernel_gens]
    Zs = free_group(s)
    scale = Homomorphism(Zs, free_group(s), IntegerMatrix.diagonal(orders))
    t = Homomorphism(Zs, picY, IntegerMatrix.from_rows(
        (rel.target.coeffs for rel in kernel_gens), picY.generator_count))
    P, in_lifts, in_base = pushout(scale, t)
    labels = tuple(lift_labels) + tuple(picY.label(i) for i in range(picY.generator_count))
    pic = PresentedGroup(P.generator_count, P.relations, labels)
    pullback = Homomorphism(picY, pic, in_base.images)
    lifts = tuple(pic.element(in_lifts.images.row(j)) for j in range(s))

    K = cyclic_sum(orders, [f"f{j + 1}" for j in range(s)])
    rows = [[int(i == j) for j in range(s)] for i in range(s)]
    rows += [[0] * s for _ in range(picY.generator_count)]
    chi = Homomorphism(pic, K, IntegerMatrix.from_rows(rows, s))
    report = check_short_exact(pullback, chi, ("Pic(Y)", "Pic(gerbe)", "ker obstruction"))
    return GerbePicard(picY, pic, pullback, lifts, chi, K, report)


def check_kernel_orders(K: PresentedGroup, lifts: Sequence[LiftRelation]):
    """Raise :class:`KernelMismatch` unless ``+ Z/m_j`` is isomorphic to ``K``."""
    claimed = InvariantFactorDecomposition.from_orders([r.character_order for r in lifts])
    actual = decompose(K)
    if claimed != actual:
        raise KernelMismatch(
            f"lift orders {[r.character_order for r in lifts]} give {claimed}, "
            f"but the obstruction kernel is {actual}"
        )


def compose_full(coarse: CoarsePicard, points: Sequence[StackyPointSpec], band: BandData,
                 obs, lifts: Sequence[LiftRelation]):
    """Run both stages.

    ``obs`` is either :class:`ObstructionData` or an explicit list of kernel
    orders.  Lift targets are elements of the stage-one group, which does not
    exist yet when the caller builds them, so ``lifts`` may also be a callable
    taking the :class:`RigidifiedPicard` and returning the relations.
    """
    rigid = build_pic_rigidified(coarse, points)
    if callable(lifts):
        lifts = lifts(rigid)
    lifts = list(lifts)
    chars = character_group(band)
    if isinstance(obs, ObstructionData):
        if obs.map.source != chars:
            raise IllDefined("obstruction map source is not the character group of the band")
        K, _ = obstruction_kernel(obs)
    else:
        K = cyclic_sum(list(obs))
    check_kernel_orders(K, lifts)
    return rigid, build_pic_gerbe(rigid.pic, lifts)


def _coset_reps(G: PresentedGroup, m: int) -> list[tuple[int, ...]]:
    """Lexicographically least coefficient vector of each coset of ``m G``."""
    Q = PresentedGroup(G.generator_count,
                       G.relations.vstack(IntegerMatrix.identity(G.generator_count).scale(m)))
    seen, reps = set(), []
    for c in itertools.product(range(m), repeat=G.generator_count):
        key = Q.canonical(c)
        if key not in seen:
            seen.add(key)
            reps.append(c)
    return reps


def enumerate_extensions(picY: PresentedGroup, kernel_orders: Sequence[int]):
    """All isomorphism types of ``Pic(X)`` compatible with the exact sequence.

    Returns ``[(targets, decomposition), ...]`` with one witness tuple of lift
    targets (coefficient vectors over the generators of ``picY``) per type,
    the lexicographically smallest, sorted by witness.
    """
    orders = list(kernel_orders)
    dec = decompose(picY)
    if not dec.is_finite or dec.order * prod(orders) > ENUMERATION_BOUND:
        raise EnumerationTooLarge(
            f"|Pic(Y)| * prod m_j exceeds {ENUMERATION_BOUND} (Pic(Y) = {dec})")
    if prod(m ** picY.generator_count for m in orders) > ENUMERATION_BOUND:
        raise EnumerationTooLarge("too many candidate lift targets")
    found = {}
    for targets in itertools.product(*(_coset_reps(picY, m) for m in orders)):
        rels = [LiftRelation(m, picY.element(t)) for m, t in zip(orders, targets)]
        d = decompose(build_pic_gerbe(picY, rels).pic)
        if d not in found:
            found[d] = targets
    return sorted(((t, d) for d, t in found.items()), key=lambda td: td[0])
