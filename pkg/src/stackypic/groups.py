"""Finitely generated abelian groups given by generators and relations.

A :class:`PresentedGroup` on ``k`` generators is ``Z^k`` modulo the row
lattice of its relation matrix.  All questions about it (equality of
elements, orders, structure) are answered through one cached Smith form
of that matrix.  Subgroups are always carried as an injective
:class:`Homomorphism` into the ambient group, never as sets of elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod
from typing import Iterator, Sequence

from .errors import GroupMismatch, IllDefined
from .matrix import IntegerMatrix, SmithForm, left_kernel, row_basis, smith_form, solve_row, vec_mat

INFINITE = "infinite"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class InvariantFactorDecomposition:
    """``Z^free_rank + Z/d_1 + ... + Z/d_t`` with ``d_1 | d_2 | ... | d_t``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"invariant factors must be >= 2: {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {self.torsion}")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> InvariantFactorDecomposition:
        """Structure of ``Z/n_1 + ... + Z/n_k`` (order 0 means ``Z``)."""
        return decompose(cyclic_sum(orders))

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self):
        """Group order, or ``INFINITE``."""
        return prod(self.torsion) if self.is_finite else INFINITE

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=True)
class PresentedGroup:
    """``<g_1, ..., g_k | rows of relations>``.

    Negative and redundant relations are kept verbatim; canonicalization
    only happens inside :meth:`decomposition`.
    """

    generator_count: int
    relations: IntegerMatrix
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.relations.cols != self.generator_count:
            raise ValueError(
                f"relation matrix has {self.relations.cols} columns for "
                f"{self.generator_count} generators"
            )
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.generator_count:
                raise ValueError("one label per generator required")

    @classmethod
    def from_relations(cls, generator_count: int, relations: Sequence[Sequence[int]] = (),
                       labels: Sequence[str] | None = None) -> PresentedGroup:
        return cls(generator_count, IntegerMatrix.from_rows(relations, generator_count),
                   None if labels is None else tuple(labels))

    @cached_property
    def smith(self) -> SmithForm:
        return smith_form(self.relations)

    @cached_property
    def _moduli(self) -> tuple[int, ...]:
        # modulus of each Smith coordinate; 0 means a free coordinate
        diag = self.smith.diagonal
        return tuple(diag[j] if j < len(diag) else 0 for j in range(self.generator_count))

    def decomposition(self) -> InvariantFactorDecomposition:
        free = sum(1 for d in self._moduli if d == 0)
        return InvariantFactorDecomposition(free, tuple(d for d in self._moduli if d > 1))

    def order(self):
        return self.decomposition().order

    def is_trivial(self) -> bool:
        return all(d == 1 for d in self._moduli)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else f"g{i + 1}"

    # elements

    def element(self, coeffs: Sequence[int]) -> GroupElement:
        return GroupElement(self, tuple(coeffs))

    def zero(self) -> GroupElement:
        return self.element((0,) * self.generator_count)

    def gen(self, i: int) -> GroupElement:
        return self.element(tuple(int(i == j) for j in range(self.generator_count)))

    def gens(self) -> list[GroupElement]:
        return [self.gen(i) for i in range(self.generator_count)]

    def canonical(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        """Reduced Smith coordinates; equal exactly for equal elements."""
        w = vec_mat(coeffs, self.smith.V)
        return tuple(x % d if d else x for x, d in zip(w, self._moduli))

    def contains_zero(self, coeffs: Sequence[int]) -> bool:
        return not any(self.canonical(coeffs))

    def element_order(self, coeffs: Sequence[int]):
        n = 1
        for x, d in zip(self.canonical(coeffs), self._moduli):
            if x == 0:
                continue
            if d == 0:
                return INFINITE
            n = _lcm(n, d // gcd(x, d))
        return n

    def elements(self) -> Iterator[GroupElement]:
        """Every element of a finite group, once each."""
        if not self.decomposition().is_finite:
            raise ValueError("cannot enumerate an infinite group")
        Vinv = self.smith.Vinv
        ranges = [range(d) for d in self._moduli]
        for w in itertools.product(*ranges):
            yield self.element(vec_mat(w, Vinv))

    def __repr__(self):
        return f"PresentedGroup({self.generator_count}, {self.relations.tolist()!r})"

    def __str__(self):
        return str(self.decomposition())


def cyclic_sum(orders: Sequence[int], labels: Sequence[str] | None = None) -> PresentedGroup:
    """``Z/n_1 + ... + Z/n_k`` on one generator per summand (0 gives ``Z``)."""
    k = len(orders)
    rows = [[n if i == j else 0 for j in range(k)] for i, n in enumerate(orders) if n]
    return PresentedGroup.from_relations(k, rows, labels)


def free_group(k: int, labels: Sequence[str] | None = None) -> PresentedGroup:
    return PresentedGroup.from_relations(k, (), labels)


def trivial_group() -> PresentedGroup:
    return PresentedGroup.from_relations(0, ())


def decompose(G: PresentedGroup) -> InvariantFactorDecomposition:
    """Invariant factors of ``G`` read off the Smith form of its relations.

    >>> decompose(PresentedGroup.from_relations(2, [[2, 0], [0, 3]]))
    InvariantFactorDecomposition(free_rank=0, torsion=(6,))
    """
    return G.decomposition()


@dataclass(frozen=True, eq=False)
class GroupElement:
    group: PresentedGroup
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.group.generator_count:
            raise ValueError(
                f"element has {len(self.coeffs)} coefficients, group has "
                f"{self.group.generator_count} generators"
            )

    def _check(self, other: GroupElement):
        if self.group != other.group:
            raise GroupMismatch("elements belong to different groups")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, tuple(-a for a in self.coeffs))

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __mul__(self, n: int) -> GroupElement:
        if not isinstance(n, int):
            return NotImplemented
        return GroupElement(self.group, tuple(n * a for a in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return element_eq(self, other)

    def __hash__(self):
        return hash((self.group, self.group.canonical(self.coeffs)))

    def is_zero(self) -> bool:
        return self.group.contains_zero(self.coeffs)

    def order(self):
        return self.group.element_order(self.coeffs)

    def __repr__(self):
        return f"GroupElement({list(self.coeffs)})"


def element_eq(a: GroupElement, b: GroupElement) -> bool:
    """True iff ``a - b`` lies in the relation lattice."""
    a._check(b)
    return a.group.contains_zero(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def element_order(a: GroupElement):
    """Least ``n >= 1`` with ``n * a == 0``, or ``INFINITE``."""
    return a.order()


@dataclass(frozen=True)
class Homomorphism:
    """Row ``i`` of ``images`` is the image of source generator ``i``."""

    source: PresentedGroup
    target: PresentedGroup
    images: IntegerMatrix

    def __post_init__(self):
        if self.images.shape != (self.source.generator_count, self.target.generator_count):
            raise ValueError(
                f"images must be {self.source.generator_count}x"
                f"{self.target.generator_count}, got {self.images.rows}x{self.images.cols}"
            )

    def __call__(self, a: GroupElement) -> GroupElement:
        if a.group != self.source:
            raise GroupMismatch("element is not in the source of this map")
        return self.target.element(vec_mat(a.coeffs, self.images))

    def then(self, g: Homomorphism) -> Homomorphism:
        """``g . self``."""
        if self.target != g.source:
            raise GroupMismatch("maps are not composable")
        return Homomorphism(self.source, g.target, self.images @ g.images)

    def is_zero(self) -> bool:
        return all(self.target.contains_zero(self.images.row(i)) for i in range(self.images.rows))

    def is_injective(self) -> bool:
        return kernel(self)[0].is_trivial()

    def is_surjective(self) -> bool:
        return is_surjective(self)


def make_hom(source: PresentedGroup, target: PresentedGroup, images) -> Homomorphism:
    """Validated homomorphism; raises :class:`IllDefined` when a relation of
    ``source`` is not sent to zero."""
    if not isinstance(images, IntegerMatrix):
        images = IntegerMatrix.from_rows(images, target.generator_count)
    f = Homomorphism(source, target, images)
    rel = source.relations
    for i in range(rel.rows):
        if not target.contains_zero(vec_mat(rel.row(i), images)):
            raise IllDefined(f"relation {list(rel.row(i))} is not sent to zero")
    return f


def identity_hom(G: PresentedGroup) -> Homomorphism:
    return Homomorphism(G, G, IntegerMatrix.identity(G.generator_count))


def zero_hom(source: PresentedGroup, target: PresentedGroup) -> Homomorphism:
    return Homomorphism(source, target,
                        IntegerMatrix.zeros(source.generator_count, target.generator_count))


def subgroup(G: PresentedGroup, gens: IntegerMatrix) -> tuple[PresentedGroup, Homomorphism]:
    """Subgroup of ``G`` generated by the rows of ``gens``, presented on those rows."""
    s = gens.rows
    rel = left_kernel(gens.vstack(G.relations))
    rel = IntegerMatrix.from_rows((rel.row(i)[:s] for i in range(rel.rows)), s)
    rel = row_basis(rel)
    S = PresentedGroup(s, rel)
    return S, Homomorphism(S, G, gens)


def kernel(f: Homomorphism) -> tuple[PresentedGroup, Homomorphism]:
    """Kernel of ``f`` with its inclusion into ``f.source``."""
    k = f.source.generator_count
    N = left_kernel(f.images.vstack(f.target.relations))
    lattice = IntegerMatrix.from_rows((N.row(i)[:k] for i in range(N.rows)), k)
    return subgroup(f.source, row_basis(lattice.vstack(f.source.relations)))


def image(f: Homomorphism) -> tuple[PresentedGroup, Homomorphism]:
    """Image of ``f`` presented on the images of the source generators."""
    return subgroup(f.target, f.images)


def cokernel(f: Homomorphism) -> tuple[PresentedGroup, Homomorphism]:
    B = f.target
    C = PresentedGroup(B.generator_count, B.relations.vstack(f.images), B.labels)
    return C, Homomorphism(B, C, IntegerMatrix.identity(B.generator_count))


def direct_sum(G: PresentedGroup, H: PresentedGroup):
    """Block presentation ``G + H`` and the two canonical injections."""
    g, h = G.generator_count, H.generator_count
    rows = [r + (0,) * h for r in (G.relations.row(i) for i in range(G.relations.rows))]
    rows += [(0,) * g + r for r in (H.relations.row(i) for i in range(H.relations.rows))]
    labels = None
    if G.labels is not None or H.labels is not None:
        labels = tuple(G.label(i) for i in range(g)) + tuple(H.label(i) for i in range(h))
    P = PresentedGroup.from_relations(g + h, rows, labels)
    I = IntegerMatrix.identity(g + h)
    injG = Homomorphism(G, P, IntegerMatrix.from_rows((I.row(i) for i in range(g)), g + h))
    injH = Homomorphism(H, P, IntegerMatrix.from_rows((I.row(g + i) for i in range(h)), g + h))
    return P, injG, injH


def pushout(f: Homomorphism, g: Homomorphism):
    """Pushout of ``A <-f- C -g-> B``: the cokernel of ``c -> (f(c), -g(c))``.

    Returns ``(P, inA, inB)``; ``P`` is presented on the generators of ``A``
    followed by those of ``B``.
    """
    if f.source != g.source:
        raise GroupMismatch("pushout legs must share a source")
    A, B = f.target, g.target
    S, inA, inB = direct_sum(A, B)
    P = PresentedGroup(S.generator_count, S.relations.vstack(f.images.hstack(-g.images)),
                       S.labels)
    return P, Homomorphism(A, P, inA.images), Homomorphism(B, P, inB.images)


def in_span(G: PresentedGroup, gens: IntegerMatrix, v: Sequence[int]) -> bool:
    """Whether ``v`` lies in the subgroup of ``G`` generated by rows of ``gens``."""
    return solve_row(gens.vstack(G.relations), v) is not None


def is_surjective(f: Homomorphism) -> bool:
    N = f.images.vstack(f.target.relations)
    s = smith_form(N)
    I = IntegerMatrix.identity(f.target.generator_count)
    return all(solve_row(N, I.row(i), s) is not None for i in range(I.rows))


def is_injective(f: Homomorphism) -> bool:
    return f.is_injective()


def is_exact_at(f: Homomorphism, g: Homomorphism) -> bool:
    """``im f == ker g`` inside ``f.target``."""
    if f.target != g.source:
        raise GroupMismatch("maps are not composable")
    if not f.then(g).is_zero():
        return False
    K, incl = kernel(g)
    N = f.images.vstack(f.target.relations)
    s = smith_form(N)
    return all(solve_row(N, incl.images.row(i), s) is not None for i in range(incl.images.rows))


@dataclass(frozen=True)
class CheckResult:
    node: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ExactnessReport:
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def check_short_exact(f: Homomorphism, g: Homomorphism,
                      names: Sequence[str] = ("A", "B", "C")) -> ExactnessReport:
    """Run the four checks for ``0 -> A -f-> B -g-> C -> 0``: injectivity at
    ``A``, ``g.f = 0``, ``im f = ker g`` at ``B``, and surjectivity at ``C``."""
    a, b, c = names
    return ExactnessReport((
        CheckResult(a, f.is_injective(), f"{a} -> {b} injective"),
        CheckResult("composite", f.then(g).is_zero(), f"composite {a} -> {c} is zero"),
        CheckResult(b, is_exact_at(f, g), f"image = kernel at {b}"),
        CheckResult(c, g.is_surjective(), f"{b} -> {c} surjective"),
    ))
