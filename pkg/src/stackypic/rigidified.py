"""Picard groups of tame stacky curves with trivial generic stabilizer.

The group is built as the pushout of ``Z^r --diag(n_i)--> Z^r`` along
``phi: Z^r -> Pic(X), e_i -> [I_{pi(x_i)}]``, i.e.

    (Z^r + Pic(X)) / <(n_i e_i, -I_{pi(x_i)})>

on generators ``(I_{x_1}, ..., I_{x_r}, generators of Pic(X))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ElementGroupMismatch, GroupMismatch, StackyPicError
from .groups import (
    ExactnessReport,
    GroupElement,
    Homomorphism,
    PresentedGroup,
    check_short_exact,
    cyclic_sum,
    free_group,
    pushout,
)
from .matrix import IntegerMatrix

TAMENESS_ASSUMPTION = (
    "tameness: the characteristic of the base field is assumed not to divide "
    "any stabilizer order n_i (not checked)"
)


@dataclass(frozen=True)
class CoarsePicard:
    """``Pic(X)`` together with named classes such as ``O(1)`` or ``I_P``."""

    group: PresentedGroup
    named_classes: Mapping[str, GroupElement] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "named_classes", dict(self.named_classes))
        for name, cls in self.named_classes.items():
            if cls.group != self.group:
                raise ElementGroupMismatch(f"named class {name!r} is not in Pic(X)")

    def __hash__(self):
        return hash((self.group, tuple(sorted(self.named_classes))))


@dataclass(frozen=True)
class StackyPointSpec:
    """A point with stabilizer ``mu_order`` and the class of the ideal sheaf
    of its image in ``Pic(X)``.  ``order == 1`` marks a non-stacky point."""

    label: str
    order: int
    ideal_class: GroupElement

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise StackyPicError(f"point {self.label!r}: order must be a positive integer")


@dataclass(frozen=True)
class RigidifiedPicard:
    coarse: CoarsePicard
    points: tuple[StackyPointSpec, ...]
    pic: PresentedGroup
    pullback: Homomorphism
    ideal_sheaf_classes: tuple[GroupElement, ...]
    residue_map: Homomorphism
    residue_group: PresentedGroup
    verification: ExactnessReport
    assumptions: tuple[str, ...] = (TAMENESS_ASSUMPTION,)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(p.order for p in self.points)

    def ideal_sheaf_class(self, label: str) -> GroupElement:
        for p, cls in zip(self.points, self.ideal_sheaf_classes):
            if p.label == label:
                return cls
        raise KeyError(label)

    def element(self, ideal_coeffs: Sequence[int], coarse_class: GroupElement) -> GroupElement:
        """The class ``sum a_i I_{x_i} + pi^* L``."""
        if len(ideal_coeffs) != len(self.points):
            raise ValueError("one coefficient per stacky point required")
        out = self.pullback(coarse_class)
        for a, cls in zip(ideal_coeffs, self.ideal_sheaf_classes):
            out = out + a * cls
        return out


def build_pic_rigidified(coarse: CoarsePicard,
                         points: Sequence[StackyPointSpec]) -> RigidifiedPicard:
    """``Pic`` of the root stack of ``X`` at the given points."""
    X = coarse.group
    points = tuple(points)
    for p in points:
        if p.ideal_class.group != X:
            raise ElementGroupMismatch(f"ideal class of point {p.label!r} is not in Pic(X)")
    r = len(points)
    orders = [p.order for p in points]
    Zr = free_group(r)
    scale = Homomorphism(Zr, free_group(r, [p.label for p in points]),
                         IntegerMatrix.diagonal(orders))
    phi = Homomorphism(Zr, X, IntegerMatrix.from_rows(
        (p.ideal_class.coeffs for p in points), X.generator_count))
    labels = tuple(p.label for p in points) + tuple(X.label(i) for i in range(X.generator_count))
    P, in_ideal, in_coarse = pushout(scale, phi)
    pic = PresentedGroup(P.generator_count, P.relations, labels)
    pullback = Homomorphism(X, pic, in_coarse.images)
    ideal_classes = tuple(pic.element(in_ideal.images.row(i)) for i in range(r))

    residue_group = cyclic_sum(orders, [f"e_{p.label}" for p in points])
    residue_rows = [[int(i == j) for j in range(r)] for i in range(r)]
    residue_rows += [[0] * r for _ in range(X.generator_count)]
    residue_map = Homomorphism(pic, residue_group, IntegerMatrix.from_rows(residue_rows, r))

    report = check_short_exact(pullback, residue_map, ("Pic(X)", "Pic(Y)", "prod Z/n_i"))
    return RigidifiedPicard(coarse, points, pic, pullback, ideal_classes,
                            residue_map, residue_group, report)


def chi_residues(y: RigidifiedPicard, cls: GroupElement) -> tuple[int, ...]:
    """Residues ``(c_1, ..., c_r)`` with ``0 <= c_i < n_i``."""
    if cls.group != y.pic:
        raise GroupMismatch("class is not in this Picard group")
    image = y.residue_map(cls)
    return tuple(c % n for c, n in zip(image.coeffs, y.orders))


def normal_form(y: RigidifiedPicard, a: Sequence[int], L: GroupElement):
    """Rewrite ``sum a_i I_{x_i} + pi^* L`` as ``sum c_i I_{x_i} + pi^* L'``
    with ``0 <= c_i < n_i``.

    Negative ``a_i`` are reduced by floor division, so ``a = (-1)`` with
    ``n = 2`` gives ``c = (1)`` and ``L' = L - I``.
    """
    if L.group != y.coarse.group:
        raise GroupMismatch("coarse class is not in Pic(X)")
    if len(a) != len(y.points):
        raise ValueError("one coefficient per stacky point required")
    c, Lp = [], L
    for ai, p in zip(a, y.points):
        b, ci = divmod(ai, p.order)
        c.append(ci)
        Lp = Lp + b * p.ideal_class
    assert y.element(a, L) == y.element(c, Lp)
    return tuple(c), Lp
