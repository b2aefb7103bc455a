"""Matrix-type decisions and unit-preserving isomorphism comparison.

For purely infinite simple unital L(E), whether M_c(L(E)) and M_d(L(E)) are
isomorphic is decided by the order n of the unit class in K0: the rings are
isomorphic iff gcd(c, n) = gcd(d, n) when n is finite, and iff c = d when
the unit has infinite order (Invariant Matrix Number).  The decision
refuses to answer when the graph conditions fail, rather than guess outside
the regime where the classification holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

from .abelian import (
    DEFAULT_SIZE_BOUND,
    BoundExceeded,
    FGAbelianGroup,
    GroupElement,
    INFINITE,
    _check_member,
    _require_oracle_group,
    gcd_criterion,
)
from .graphs import DirectedGraph, PisReport
from .intmat import content
from .ktheory import K0Data


class NotPurelyInfiniteSimple(Exception):
    """The matrix-type criteria only apply to purely infinite simple L(E)."""


def _require_pis(pis: PisReport) -> None:
    if not pis.purely_infinite_simple:
        raise NotPurelyInfiniteSimple(
            "graph conditions fail; the matrix-type criterion does not apply"
        )


@dataclass(frozen=True)
class MatrixTypeVerdict:
    """Which matrix sizes give isomorphic matrix rings over L(E)."""

    regime: str  # "finite" or "infinite"
    unit_order: int | None  # n in the finite regime, None otherwise

    def class_label(self, c: int) -> int | None:
        """Isomorphism-class label of size c: gcd(c, n), or c itself."""
        if self.regime == "finite":
            return gcd(c, self.unit_order)
        return c


def matrix_type_verdict(k0: K0Data, pis: PisReport) -> MatrixTypeVerdict:
    _require_pis(pis)
    if k0.unit_order is INFINITE:
        return MatrixTypeVerdict(regime="infinite", unit_order=None)
    return MatrixTypeVerdict(regime="finite", unit_order=k0.unit_order)


def matrix_type_equal(k0: K0Data, pis: PisReport, c: int, d: int) -> bool:
    """Is M_c(L(E)) isomorphic to M_d(L(E))?"""
    if c < 1 or d < 1:
        raise ValueError("matrix sizes must be positive integers")
    verdict = matrix_type_verdict(k0, pis)
    if verdict.regime == "infinite":
        return c == d
    return gcd_criterion(verdict.unit_order, c, d)


def matrix_type_classes(k0: K0Data, pis: PisReport, max_n: int) -> list[list[int]]:
    """Partition of {1..max_n} into matrix-size isomorphism classes.

    Blocks are sorted by least element.
    """
    if max_n < 1:
        raise ValueError("max_n must be a positive integer")
    verdict = matrix_type_verdict(k0, pis)
    blocks: dict[int, list[int]] = {}
    for c in range(1, max_n + 1):
        blocks.setdefault(verdict.class_label(c), []).append(c)
    return sorted(blocks.values(), key=lambda block: block[0])


def m_graph(graph: DirectedGraph, m: int) -> DirectedGraph:
    """Graph whose Leavitt path algebra is M_m of the original one.

    Attaches to every vertex v a head of m-1 fresh vertices
    w1 -> w2 -> ... -> w_{m-1} -> v.  Each head vertex has a single edge, so
    its K0 class equals [v]; the unit class of the new graph is m times the
    old one while the group itself is unchanged.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        return graph
    vertices = list(graph.vertices)
    taken = set(vertices)
    edges = list(graph.edges)
    for v in graph.vertices:
        head = []
        for j in range(1, m):
            name = f"{v}__h{j}"
            while name in taken:
                name += "_"
            taken.add(name)
            head.append(name)
        vertices.extend(head)
        for a, b in zip(head, head[1:]):
            edges.append((a, b, 1))
        edges.append((head[-1], v, 1))
    return DirectedGraph(tuple(vertices), tuple(edges))


class IsoReason(Enum):
    GROUP_MISMATCH = "group_mismatch"
    UNIT_ORBIT_MISMATCH = "unit_orbit_mismatch"
    UNIT_ORBIT_MATCH = "unit_orbit_match"
    UNDECIDED_BOUND_EXCEEDED = "undecided_bound_exceeded"


@dataclass(frozen=True)
class IsoVerdict:
    """Outcome of the unit-preserving isomorphism comparison."""

    isomorphic: bool
    reason: IsoReason
    witness: str | None = None

    def __post_init__(self):
        if self.isomorphic and self.reason is not IsoReason.UNIT_ORBIT_MATCH:
            raise ValueError("isomorphic verdicts must carry a unit-orbit match")


def pointed_iso_exists(
    group: FGAbelianGroup,
    x: GroupElement,
    y: GroupElement,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> bool:
    """Does an automorphism of group = T + Z^t send x to y?

    Automorphisms of T + Z^t are block-triangular: an automorphism of T,
    a unimodular map on Z^t, and an arbitrary homomorphism from Z^t into T
    (nothing maps torsion into the free part).  Hence x maps to y iff the
    free parts have the same content c and some automorphism of T moves the
    torsion part of x into y_T + c*T.  The torsion side is decided by
    exhaustive automorphism search, so this raises BoundExceeded when the
    torsion subgroup is larger than size_bound.
    """
    _check_member(group, x)
    _check_member(group, y)
    c = content(x.free)
    if content(y.free) != c:
        return False
    torsion_group = FGAbelianGroup(group.invariant_factors)
    table = _require_oracle_group(torsion_group, size_bound)
    xi = table.index[x.torsion]
    yi = table.index[y.torsion]
    coset_sub = frozenset(table.scalar_row(c))  # the subgroup c*T ({0} when c == 0)
    return table.exists_mapping(xi, yi, coset_sub)


def compare_pointed_k0(
    k_left: K0Data,
    k_right: K0Data,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> IsoVerdict:
    """Decide whether an isomorphism of K0 groups carries unit to unit."""
    if k_left.group != k_right.group:
        return IsoVerdict(isomorphic=False, reason=IsoReason.GROUP_MISMATCH)
    try:
        matched = pointed_iso_exists(
            k_left.group, k_left.unit, k_right.unit, size_bound
        )
    except BoundExceeded:
        return IsoVerdict(isomorphic=False, reason=IsoReason.UNDECIDED_BOUND_EXCEEDED)
    if matched:
        c = content(k_left.unit.free)
        if c:
            witness = (
                f"free parts share content {c}; some torsion automorphism "
                f"matches the units modulo {c}*T"
            )
        else:
            witness = "some automorphism carries one unit exactly to the other"
        return IsoVerdict(
            isomorphic=True, reason=IsoReason.UNIT_ORBIT_MATCH, witness=witness
        )
    return IsoVerdict(isomorphic=False, reason=IsoReason.UNIT_ORBIT_MISMATCH)
