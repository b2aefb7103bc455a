"""Finitely generated abelian groups in invariant-factor form.

A group is stored as Z/d1 + ... + Z/ds + Z^t with 2 <= d1 | d2 | ... | ds.
Elements carry canonical torsion coordinates (reduced into [0, di)) plus
free coordinates.  Besides the cheap arithmetic (orders, scaling, the gcd
criterion for mapping cx to dx), the module houses two exhaustive search
oracles used to validate the classification decisions:

* enumeration of all automorphisms of a small finite group, by candidate
  generator images with a surjectivity check;
* exhaustive search for a bounded unimodular integer matrix sigma with
  n*sigma(x) = m*x.

The searches are deliberately dumb about group theory -- they never assume
order preservation or any orbit classification, since those are exactly the
facts the rest of the package is being checked against.  The only shortcuts
are elementary: an automorphism fixes 0, a partial generator assignment
whose span cannot grow to the whole group is dead, and a partial image sum
that cannot reach the target through the remaining contributions is dead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

from .intmat import IntMatrix, determinant

DEFAULT_SIZE_BOUND = 1024


class BoundExceeded(Exception):
    """An exhaustive oracle was asked about a group beyond its size bound."""


class _InfiniteOrder:
    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _InfiniteOrder()

OrderValue = int | _InfiniteOrder


@dataclass(frozen=True)
class FGAbelianGroup:
    """Invariant-factor presentation Z/d1 + ... + Z/ds + Z^free_rank."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for d in factors:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")

    @property
    def torsion_rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion_size(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def element(self, torsion: Iterable[int] = (), free: Iterable[int] = ()) -> "GroupElement":
        """Build an element, reducing torsion coordinates to canonical form.

        >>> G = FGAbelianGroup((4,))
        >>> G.element([6])
        GroupElement(torsion=(2,), free=())
        """
        raw = tuple(torsion)
        if len(raw) != self.torsion_rank:
            raise ValueError("wrong number of torsion coordinates")
        t = tuple(int(c) % d for c, d in zip(raw, self.invariant_factors))
        f = tuple(int(c) for c in free)
        if len(f) != self.free_rank:
            raise ValueError("wrong number of free coordinates")
        return GroupElement(t, f)

    def identity(self) -> "GroupElement":
        return GroupElement((0,) * self.torsion_rank, (0,) * self.free_rank)

    def elements(self) -> Iterator["GroupElement"]:
        """All elements, in lexicographic coordinate order (finite groups only)."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        for t in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield GroupElement(t, ())


@dataclass(frozen=True)
class GroupElement:
    torsion: tuple[int, ...]
    free: tuple[int, ...] = ()

    def is_identity(self) -> bool:
        return not any(self.torsion) and not any(self.free)


def _check_member(group: FGAbelianGroup, x: GroupElement) -> None:
    if len(x.torsion) != group.torsion_rank or len(x.free) != group.free_rank:
        raise ValueError("element coordinate counts do not match the group")
    for c, d in zip(x.torsion, group.invariant_factors):
        if not 0 <= c < d:
            raise ValueError("torsion coordinates must be canonical representatives")


def element_order(group: FGAbelianGroup, x: GroupElement) -> OrderValue:
    """Order of x: INFINITE when a free coordinate is nonzero, else an int.

    >>> element_order(FGAbelianGroup((4,)), GroupElement((2,)))
    2
    >>> element_order(FGAbelianGroup((2, 6)), GroupElement((1, 3)))
    2
    >>> element_order(FGAbelianGroup((), 1), GroupElement((), (1,)))
    INFINITE
    """
    _check_member(group, x)
    if any(x.free):
        return INFINITE
    n = 1
    for c, d in zip(x.torsion, group.invariant_factors):
        n = lcm(n, d // gcd(c, d))
    return n


def scale(group: FGAbelianGroup, c: int, x: GroupElement) -> GroupElement:
    """c * x for a positive integer c."""
    if not isinstance(c, int) or c < 1:
        raise ValueError("scalar must be a positive integer")
    _check_member(group, x)
    return group.element(
        torsion=(c * v for v in x.torsion),
        free=(c * v for v in x.free),
    )


def add(group: FGAbelianGroup, x: GroupElement, y: GroupElement) -> GroupElement:
    _check_member(group, x)
    _check_member(group, y)
    return group.element(
        torsion=(a + b for a, b in zip(x.torsion, y.torsion)),
        free=(a + b for a, b in zip(x.free, y.free)),
    )


def negate(group: FGAbelianGroup, x: GroupElement) -> GroupElement:
    _check_member(group, x)
    return group.element(torsion=(-v for v in x.torsion), free=(-v for v in x.free))


def gcd_criterion(n: int, c: int, d: int) -> bool:
    """Does some automorphism send c*x to d*x, for x of order n?

    The answer is gcd(c, n) == gcd(d, n); validated against the exhaustive
    automorphism search by the test suite.

    >>> gcd_criterion(4, 2, 6)
    True
    >>> gcd_criterion(4, 1, 2)
    False
    """
    if min(n, c, d) < 1:
        raise ValueError("n, c, d must be positive integers")
    return gcd(c, n) == gcd(d, n)


# ---------------------------------------------------------------------------
# Exhaustive automorphism search
# ---------------------------------------------------------------------------


class _TorsionTable:
    """Dense index arithmetic for one finite torsion group.

    Elements are numbered 0..size-1 in lexicographic coordinate order, with
    0 the identity.  Rows of the addition table are built lazily, and the
    subgroups met during searches are interned so that span bookkeeping is
    a couple of dictionary hits per search step.
    """

    def __init__(self, factors: tuple[int, ...]):
        self.factors = factors
        self.rank = len(factors)
        self.elems: list[tuple[int, ...]] = list(
            itertools.product(*(range(d) for d in factors))
        )
        self.size = len(self.elems)
        self.index = {e: i for i, e in enumerate(self.elems)}
        self._add_rows: list[list[int] | None] = [None] * self.size
        self._neg_row: list[int] | None = None
        self._scalar_rows: dict[int, list[int]] = {}
        self._torsion_cands: dict[int, list[int]] = {}
        self._memo: dict = {}
        # interned subgroups and cached span transitions
        self._sub_ids: dict[frozenset[int], int] = {}
        self._sub_list: list[frozenset[int]] = []
        self._ext_cache: dict[tuple[int, int], int] = {}
        self._cover_cache: dict[tuple[int, int], bool] = {}
        self._trivial_id = self._intern(frozenset((0,)))

    def _intern(self, sub: frozenset[int]) -> int:
        sid = self._sub_ids.get(sub)
        if sid is None:
            sid = len(self._sub_list)
            self._sub_ids[sub] = sid
            self._sub_list.append(sub)
        return sid

    def _extend_id(self, sid: int, g: int) -> int:
        key = (sid, g)
        out = self._ext_cache.get(key)
        if out is None:
            out = self._intern(self.extend_subgroup(self._sub_list[sid], g))
            self._ext_cache[key] = out
        return out

    def _covers(self, sid: int, other_sid: int) -> bool:
        """Does subs[sid] + subs[other_sid] exhaust the group?"""
        key = (sid, other_sid)
        out = self._cover_cache.get(key)
        if out is None:
            total = self.subgroup_sum(self._sub_list[sid], self._sub_list[other_sid])
            out = len(total) == self.size
            self._cover_cache[key] = out
        return out

    def add_row(self, i: int) -> list[int]:
        row = self._add_rows[i]
        if row is None:
            a = self.elems[i]
            index = self.index
            factors = self.factors
            row = [
                index[tuple((p + q) % d for p, q, d in zip(a, b, factors))]
                for b in self.elems
            ]
            self._add_rows[i] = row
        return row

    def neg_row(self) -> list[int]:
        if self._neg_row is None:
            self._neg_row = [
                self.index[tuple((-p) % d for p, d in zip(e, self.factors))]
                for e in self.elems
            ]
        return self._neg_row

    def scalar_row(self, c: int) -> list[int]:
        row = self._scalar_rows.get(c)
        if row is None:
            row = [
                self.index[tuple((c * p) % d for p, d in zip(e, self.factors))]
                for e in self.elems
            ]
            self._scalar_rows[c] = row
        return row

    def torsion_candidates(self, bound: int) -> list[int]:
        """Indices of elements g with bound * g == 0, in index order."""
        cands = self._torsion_cands.get(bound)
        if cands is None:
            steps = [d // gcd(bound, d) for d in self.factors]
            cands = [
                i
                for i, e in enumerate(self.elems)
                if all(c % s == 0 for c, s in zip(e, steps))
            ]
            self._torsion_cands[bound] = cands
        return cands

    def extend_subgroup(self, sub: frozenset[int], g: int) -> frozenset[int]:
        if g in sub:
            return sub
        multiples = []
        x = g
        while x != 0:
            multiples.append(x)
            x = self.add_row(x)[g]
        out = set(sub)
        for kg in multiples:
            row = self.add_row(kg)
            out.update(row[h] for h in sub)
        return frozenset(out)

    def subgroup_sum(self, a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
        if len(a) == 1:
            return b
        if len(b) == 1:
            return a
        out = set()
        for p in a:
            row = self.add_row(p)
            out.update(row[q] for q in b)
        return frozenset(out)

    # -- searches ----------------------------------------------------------

    def exists_mapping(self, x: int, target: int, coset_sub: frozenset[int]) -> bool:
        """Is there an automorphism phi with phi(x) in target + coset_sub?

        coset_sub must be a subgroup (given as a frozenset of indices).
        """
        if x == 0:
            return target in coset_sub  # every automorphism fixes 0
        if target == 0 and len(coset_sub) == 1:
            return False  # injectivity: nonzero x cannot land on 0
        key = (x, target, coset_sub)
        memo = self._memo
        if key in memo:
            return memo[key]
        result = self._search(x, target, coset_sub)
        memo[key] = result
        if len(coset_sub) == 1:
            # exact queries are symmetric via the inverse automorphism
            memo[(target, x, coset_sub)] = result
        return result

    def _torsion_suffix_ids(self, position_order: list[int]) -> list[int]:
        """Interned suffix sums of the torsion subgroups G[d_i].

        Entry p is the subgroup spanned by every possible image of the
        generators at positions >= p; images of the already assigned
        generators must complement it for a surjection to remain possible.
        """
        ids = [self._trivial_id] * (len(position_order) + 1)
        acc = frozenset((0,))
        for p in range(len(position_order) - 1, -1, -1):
            d = self.factors[position_order[p]]
            acc = self.subgroup_sum(
                acc, frozenset(self.torsion_candidates(d))
            )
            ids[p] = self._intern(acc)
        return ids

    def _search(self, x: int, target: int, coset_sub: frozenset[int]) -> bool:
        factors = self.factors
        size = self.size
        xt = self.elems[x]
        # big factors first: their candidate loops shrink fastest under the
        # span prunes, and the trailing torsion suffixes get small early
        constrained = sorted(
            (i for i in range(self.rank) if xt[i]), key=lambda i: (-factors[i], i)
        )
        unconstrained = sorted(
            (i for i in range(self.rank) if not xt[i]), key=lambda i: (-factors[i], i)
        )
        order = constrained + unconstrained
        ncon = len(constrained)
        cands = [self.torsion_candidates(factors[i]) for i in order]
        scal = [self.scalar_row(xt[i]) for i in constrained]

        # reach[p]: subgroup of sums still contributable by constrained
        # positions >= p, plus the allowed coset subgroup
        reach = [coset_sub] * (ncon + 1)
        for p in range(ncon - 1, -1, -1):
            image = frozenset(scal[p][g] for g in cands[p])
            reach[p] = self.subgroup_sum(reach[p + 1], image)

        rem = [1] * (len(order) + 1)
        for p in range(len(order) - 1, -1, -1):
            rem[p] = rem[p + 1] * factors[order[p]]
        tor_ids = self._torsion_suffix_ids(order)

        neg = self.neg_row()
        target_neg = neg[target]
        add_row = self.add_row
        extend_id = self._extend_id
        covers = self._covers
        sub_list = self._sub_list
        npos = len(order)

        if target_neg not in reach[0]:
            return False

        def rec(pos: int, sid: int, psum: int) -> bool:
            if pos == npos:
                return (
                    len(sub_list[sid]) == size
                    and add_row(psum)[target_neg] in coset_sub
                )
            nxt = pos + 1
            rem_next = rem[nxt]
            tor_next = tor_ids[nxt]
            if pos < ncon:
                scal_row = scal[pos]
                allowed = reach[nxt]
                row_p = add_row(psum)
                for g in cands[pos]:
                    p2 = row_p[scal_row[g]]
                    if add_row(p2)[target_neg] not in allowed:
                        continue
                    sid2 = extend_id(sid, g)
                    if len(sub_list[sid2]) * rem_next < size:
                        continue
                    if not covers(sid2, tor_next):
                        continue
                    if rec(nxt, sid2, p2):
                        return True
            else:
                for g in cands[pos]:
                    sid2 = extend_id(sid, g)
                    if len(sub_list[sid2]) * rem_next < size:
                        continue
                    if not covers(sid2, tor_next):
                        continue
                    if rec(nxt, sid2, psum):
                        return True
            return False

        return rec(0, self._trivial_id, 0)

    def enumerate_images(self) -> Iterator[tuple[int, ...]]:
        """All automorphisms, as tuples of generator-image indices."""
        factors = self.factors
        size = self.size
        rank = self.rank
        cands = [self.torsion_candidates(d) for d in factors]
        rem = [1] * (rank + 1)
        for p in range(rank - 1, -1, -1):
            rem[p] = rem[p + 1] * factors[p]
        tor_ids = self._torsion_suffix_ids(list(range(rank)))
        sub_list = self._sub_list

        images: list[int] = []

        def rec(pos: int, sid: int) -> Iterator[tuple[int, ...]]:
            if pos == rank:
                if len(sub_list[sid]) == size:
                    yield tuple(images)
                return
            for g in cands[pos]:
                sid2 = self._extend_id(sid, g)
                if len(sub_list[sid2]) * rem[pos + 1] < size:
                    continue
                if not self._covers(sid2, tor_ids[pos + 1]):
                    continue
                images.append(g)
                yield from rec(pos + 1, sid2)
                images.pop()

        yield from rec(0, self._trivial_id)


@lru_cache(maxsize=None)
def _table_for(factors: tuple[int, ...]) -> _TorsionTable:
    return _TorsionTable(factors)


def _require_oracle_group(group: FGAbelianGroup, size_bound: int) -> _TorsionTable:
    if not group.is_finite:
        raise ValueError("exhaustive automorphism search needs a finite group")
    if group.torsion_size > size_bound:
        raise BoundExceeded(
            f"group of size {group.torsion_size} exceeds the oracle bound {size_bound}"
        )
    return _table_for(group.invariant_factors)


def enumerate_automorphisms(
    group: FGAbelianGroup, size_bound: int = DEFAULT_SIZE_BOUND
) -> Iterator[tuple[GroupElement, ...]]:
    """Yield every automorphism as the images of the canonical generators.

    Candidates are tuples (g1, ..., gs) with order(gi) dividing di; a tuple
    is kept iff the induced endomorphism is surjective.  Search order is
    deterministic (lexicographic in coordinates).
    """
    table = _require_oracle_group(group, size_bound)
    for images in table.enumerate_images():
        yield tuple(GroupElement(table.elems[g], ()) for g in images)


def apply_automorphism(
    group: FGAbelianGroup, images: Sequence[GroupElement], x: GroupElement
) -> GroupElement:
    """Apply the endomorphism sending generator i to images[i]."""
    if not group.is_finite:
        raise ValueError("generator images only describe maps of finite groups")
    if len(images) != group.torsion_rank:
        raise ValueError("one image per canonical generator is required")
    _check_member(group, x)
    coords = [0] * group.torsion_rank
    for xi, img in zip(x.torsion, images):
        _check_member(group, img)
        for j, c in enumerate(img.torsion):
            coords[j] += xi * c
    return group.element(torsion=coords)


def automorphism_maps_x_to_y(
    group: FGAbelianGroup,
    x: GroupElement,
    y: GroupElement,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> bool:
    """Exhaustively decide whether some automorphism sends x to y.

    >>> G = FGAbelianGroup((4,))
    >>> automorphism_maps_x_to_y(G, G.element([1]), G.element([3]))
    True
    >>> automorphism_maps_x_to_y(G, G.element([1]), G.element([2]))
    False
    """
    table = _require_oracle_group(group, size_bound)
    _check_member(group, x)
    _check_member(group, y)
    xi = table.index[x.torsion]
    yi = table.index[y.torsion]
    return table.exists_mapping(xi, yi, frozenset((0,)))


# ---------------------------------------------------------------------------
# Bounded unimodular eigen-relation search
# ---------------------------------------------------------------------------


def eigen_search(
    t: int,
    entry_bound: int,
    x: Sequence[int],
    m: int,
    n: int,
) -> IntMatrix | None:
    """First unimodular integer t x t matrix sigma with n*sigma(x) == m*x.

    Scans matrices with entries in [-entry_bound, entry_bound] in
    lexicographic order and returns the first witness, or None when the
    whole range is exhausted.  For positive m != n no witness should exist;
    keep t small (the range has (2b+1)^(t*t) matrices).
    """
    if t < 1:
        raise ValueError("dimension t must be >= 1")
    if entry_bound < 1:
        raise ValueError("entry bound must be >= 1")
    x = tuple(int(v) for v in x)
    if len(x) != t:
        raise ValueError("x must have length t")
    if not any(x):
        raise ValueError("x must be a nonzero vector")
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive integers")
    values = range(-entry_bound, entry_bound + 1)
    goal = tuple(m * v for v in x)
    for flat in itertools.product(values, repeat=t * t):
        rows = [flat[k * t : (k + 1) * t] for k in range(t)]
        matrix = IntMatrix(rows)
        if determinant(matrix) not in (1, -1):
            continue
        if tuple(n * s for s in matrix.apply(x)) == goal:
            return matrix
    return None
