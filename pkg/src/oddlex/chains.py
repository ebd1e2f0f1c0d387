"""Odd involutive residuated chains closed under partial lexicographic products.

An :class:`Algebra` describes a chain together with its monoidal operation,
residual negation, residuum and the derived structure (group part, covers,
unit-preserving tau map).  Three shapes exist:

* :class:`BaseAlgebra` -- a linearly ordered abelian group viewed as an odd
  chain (``* = +``, ``neg = -``, ``t = f = 0``);
* :class:`PlpAlgebra` -- a type I/II/III/IV partial lexicographic product of a
  chain and a second chain, with top/bottom fiber markers;
* :class:`BoundedAlgebra` -- a chain with two global bounds adjoined, the top
  added first as an annihilator and the bottom added second (so the bottom
  dominates the top under multiplication).

All values are immutable and every operation is pure.  Operations validate
carrier membership of their operands and raise :class:`MembershipError`
otherwise; the ``_``-prefixed variants skip validation and are used for
recursion into components.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .elements import BOT_BOUND, TOP_BOUND, Bound, Elem, Leaf, Marker, Pair, Second
from .errors import MembershipError, PreconditionViolation, ShapeError, UndefinedCover
from .groups import (
    GroupChain,
    QChain,
    SubgroupDescriptor,
    Trivial,
    ZLex,
    coordinate_kinds,
    coords_of,
)


class PlpKind(enum.Enum):
    III = "III"
    IV = "IV"


def _second_rank(s: Second) -> int:
    # Fiber order: bottom marker < any chain value < top marker.
    if s is Marker.BOT:
        return 0
    if s is Marker.TOP:
        return 2
    return 1


class Algebra:
    """Shared derived operations; concrete carriers subclass this."""

    # -- carrier ---------------------------------------------------------

    def contains(self, e: Elem) -> bool:
        raise NotImplementedError

    def ensure_member(self, e: Elem) -> None:
        if not self.contains(e):
            raise MembershipError(f"{e} is not an element of {self}")

    def unit(self) -> Elem:
        raise NotImplementedError

    # -- order -----------------------------------------------------------

    def compare(self, a: Elem, b: Elem) -> int:
        self.ensure_member(a)
        self.ensure_member(b)
        return self._compare(a, b)

    def leq(self, a: Elem, b: Elem) -> bool:
        self.ensure_member(a)
        self.ensure_member(b)
        return self._compare(a, b) <= 0

    def lt(self, a: Elem, b: Elem) -> bool:
        self.ensure_member(a)
        self.ensure_member(b)
        return self._compare(a, b) < 0

    def meet(self, a: Elem, b: Elem) -> Elem:
        return a if self.leq(a, b) else b

    def join(self, a: Elem, b: Elem) -> Elem:
        return b if self.leq(a, b) else a

    # -- operations --------------------------------------------------------

    def mult(self, a: Elem, b: Elem) -> Elem:
        self.ensure_member(a)
        self.ensure_member(b)
        return self._mult(a, b)

    def neg(self, a: Elem) -> Elem:
        self.ensure_member(a)
        return self._neg(a)

    def residuum(self, a: Elem, b: Elem) -> Elem:
        """``a -> b``, computed as ``neg(a * neg b)``; adjoint to ``mult``."""
        self.ensure_member(a)
        self.ensure_member(b)
        return self._neg(self._mult(a, self._neg(b)))

    def tau(self, a: Elem) -> Elem:
        """``a -> a``; its range is exactly the positive idempotents."""
        self.ensure_member(a)
        return self._neg(self._mult(a, self._neg(a)))

    def group_part_contains(self, a: Elem) -> bool:
        """True iff ``a * neg(a) = t``, i.e. ``a`` is invertible."""
        self.ensure_member(a)
        return self._mult(a, self._neg(a)) == self.unit()

    def rank(self) -> int:
        """Sign of ``t`` versus ``f``; zero for every constructible algebra."""
        t = self.unit()
        return self._compare(t, self._neg(t))

    # -- covers ------------------------------------------------------------

    def cover_up(self, a: Elem) -> Elem:
        self._require_cover(a)
        return self._cover_up(a)

    def cover_down(self, a: Elem) -> Elem:
        self._require_cover(a)
        return self._cover_down(a)

    def _require_cover(self, a: Elem) -> None:
        self.ensure_member(a)
        if not self.grpart_discretely_embedded:
            raise UndefinedCover(
                f"group part of {self} is not discretely embedded; covers are undefined")
        if not self._is_group_elem(a):
            raise UndefinedCover(f"{a} lies outside the group part of {self}")

    # -- structural recursion ------------------------------------------------

    def _compare(self, a: Elem, b: Elem) -> int:
        raise NotImplementedError

    def _mult(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def _neg(self, a: Elem) -> Elem:
        raise NotImplementedError

    def _cover_up(self, a: Elem) -> Elem:
        raise NotImplementedError

    def _cover_down(self, a: Elem) -> Elem:
        raise NotImplementedError

    def _is_group_elem(self, e: Elem) -> bool:
        """Structural membership in the group part (no arithmetic involved)."""
        raise NotImplementedError

    def _flatten(self, e: Elem) -> tuple:
        """Coordinates of a group-part element in the ambient lex group."""
        raise NotImplementedError

    def _unflatten(self, coords) -> Elem:
        raise NotImplementedError

    # -- structural properties ------------------------------------------------

    @property
    def ambient_kinds(self) -> tuple[str, ...]:
        """Per-coordinate markers ("Z"/"Q") of the ambient group of the group part."""
        raise NotImplementedError

    @property
    def group_part_descriptor(self) -> SubgroupDescriptor:
        """Which ambient vectors actually occur as group-part elements."""
        raise NotImplementedError

    @property
    def is_unbounded(self) -> bool:
        raise NotImplementedError

    @property
    def grpart_discretely_embedded(self) -> bool:
        raise NotImplementedError

    @property
    def is_dense(self) -> bool:
        """True when the order has no covering pair at all."""
        return self.density_obstruction() is None

    def density_obstruction(self) -> Optional[str]:
        """None when dense, else a description of the first covering source."""
        raise NotImplementedError

    @property
    def covers_confined_to_group_part(self) -> bool:
        """True when every covering pair of the order lies inside the group part."""
        raise NotImplementedError

    @property
    def idempotent_count(self) -> int:
        """Number of positive idempotents (equivalently, distinct tau values)."""
        raise NotImplementedError


@dataclass(frozen=True)
class BaseAlgebra(Algebra):
    """A group chain as an odd residuated chain."""

    chain: GroupChain

    def contains(self, e: Elem) -> bool:
        if not isinstance(e, Leaf):
            return False
        try:
            self.chain.check(e.value)
        except ShapeError:
            return False
        if isinstance(self.chain, QChain) and not isinstance(e.value, Fraction):
            return False  # canonical form: rationals are stored as Fraction
        return True

    def unit(self) -> Elem:
        return Leaf(self.chain.unit())

    def _compare(self, a, b):
        return self.chain.compare(a.value, b.value)

    def _mult(self, a, b):
        return Leaf(self.chain.add(a.value, b.value))

    def _neg(self, a):
        return Leaf(self.chain.invert(a.value))

    def _cover_up(self, a):
        return Leaf(self.chain.succ(a.value))

    def _cover_down(self, a):
        return Leaf(self.chain.pred(a.value))

    def _is_group_elem(self, e):
        return self.contains(e)

    def _flatten(self, e):
        return coords_of(self.chain, e.value)

    def _unflatten(self, coords):
        if isinstance(self.chain, ZLex):
            if len(coords) != self.chain.rank:
                raise ShapeError(f"expected {self.chain.rank} coordinates, got {len(coords)}")
            vals = []
            for c in coords:
                f = Fraction(c)
                if f.denominator != 1:
                    raise ShapeError(f"non-integer coordinate {c} for a Z position")
                vals.append(int(f))
            return Leaf(tuple(vals))
        if isinstance(self.chain, QChain):
            if len(coords) != 1:
                raise ShapeError("expected a single rational coordinate")
            return Leaf(Fraction(coords[0]))
        if coords not in ((), []):
            raise ShapeError("the trivial chain has no coordinates")
        return Leaf(())

    @cached_property
    def ambient_kinds(self):
        return coordinate_kinds(self.chain)

    @cached_property
    def group_part_descriptor(self):
        return SubgroupDescriptor.full(len(self.ambient_kinds))

    @property
    def is_unbounded(self):
        return not isinstance(self.chain, Trivial)

    @property
    def grpart_discretely_embedded(self):
        return isinstance(self.chain, ZLex)

    def density_obstruction(self):
        if isinstance(self.chain, ZLex):
            return f"base chain {self.chain} is discretely ordered"
        return None

    @property
    def covers_confined_to_group_part(self):
        return True

    @property
    def idempotent_count(self):
        return 1

    def __str__(self):
        return str(self.chain)


@dataclass(frozen=True)
class PlpAlgebra(Algebra):
    """A partial lexicographic product.

    ``kind`` is III or IV; the classical type I (resp. II) products are the
    degenerate cases ``vdesc == zdesc`` (resp. ``vdesc`` = the whole group
    part), recognised by :attr:`display_kind`.  Carriers:

    * III: ``(V x (Y+{T,B})) | ((Z\\V) x {T,B}) | ((X\\Z) x {B})``
    * IV:  ``(X x {T}) | (V x Y)``

    Multiplication is coordinatewise with the bottom marker dominating the
    top marker; negation is first-componentwise with a fiber-marker swap for
    type III and the cover shift on top-marked group elements for type IV.
    """

    kind: PlpKind
    first: Algebra
    zdesc: Optional[SubgroupDescriptor]
    vdesc: SubgroupDescriptor
    second: Algebra

    @property
    def has_bot_marker(self) -> bool:
        return self.kind is PlpKind.III

    @cached_property
    def display_kind(self) -> str:
        if self.kind is PlpKind.III:
            return "I" if self.zdesc == self.vdesc else "III"
        return "II" if self.vdesc == self.first.group_part_descriptor else "IV"

    # -- carrier ------------------------------------------------------------

    def _in_subgroup(self, desc: SubgroupDescriptor, x: Elem) -> bool:
        return self.first._is_group_elem(x) and desc.contains_coords(self.first._flatten(x))

    def contains(self, e):
        if not isinstance(e, Pair):
            return False
        if not self.first.contains(e.first):
            return False
        s = e.second
        if s is Marker.BOT:
            return self.has_bot_marker
        if s is Marker.TOP:
            if self.kind is PlpKind.IV:
                return True
            return self._in_subgroup(self.zdesc, e.first)
        return self._in_subgroup(self.vdesc, e.first) and self.second.contains(s)

    @cached_property
    def _unit(self):
        return Pair(self.first.unit(), self.second.unit())

    def unit(self):
        return self._unit

    # -- order ---------------------------------------------------------------

    def _compare(self, a, b):
        c = self.first._compare(a.first, b.first)
        if c != 0:
            return c
        ra, rb = _second_rank(a.second), _second_rank(b.second)
        if ra != rb:
            return -1 if ra < rb else 1
        if ra == 1:
            return self.second._compare(a.second, b.second)
        return 0

    # -- operations -------------------------------------------------------------

    def _mult_second(self, s1: Second, s2: Second) -> Second:
        # The bottom marker was adjoined after the top, so it wins.
        if s1 is Marker.BOT or s2 is Marker.BOT:
            return Marker.BOT
        if s1 is Marker.TOP or s2 is Marker.TOP:
            return Marker.TOP
        return self.second._mult(s1, s2)

    def _mult(self, a, b):
        return Pair(self.first._mult(a.first, b.first),
                    self._mult_second(a.second, b.second))

    def _neg_second(self, s: Second) -> Second:
        if s is Marker.BOT:
            return Marker.TOP
        if s is Marker.TOP:
            return Marker.BOT
        return self.second._neg(s)

    def _neg(self, a):
        x, s = a.first, a.second
        if self.kind is PlpKind.III:
            if self._in_subgroup(self.zdesc, x):
                return Pair(self.first._neg(x), self._neg_second(s))
            return Pair(self.first._neg(x), Marker.BOT)
        # type IV: carrier is (X x {T}) | (V x Y)
        if s is Marker.TOP:
            nx = self.first._neg(x)
            if self.first._is_group_elem(x):
                return Pair(self.first._cover_down(nx), Marker.TOP)
            return Pair(nx, Marker.TOP)
        return Pair(self.first._neg(x), self.second._neg(s))

    def _cover_up(self, a):
        return Pair(a.first, self.second._cover_up(a.second))

    def _cover_down(self, a):
        return Pair(a.first, self.second._cover_down(a.second))

    # -- group part ----------------------------------------------------------

    def _is_group_elem(self, e):
        return (isinstance(e, Pair) and not isinstance(e.second, Marker)
                and self._in_subgroup(self.vdesc, e.first)
                and self.second._is_group_elem(e.second))

    def _flatten(self, e):
        return self.first._flatten(e.first) + self.second._flatten(e.second)

    def _unflatten(self, coords):
        n = len(self.first.ambient_kinds)
        return Pair(self.first._unflatten(tuple(coords[:n])),
                    self.second._unflatten(tuple(coords[n:])))

    @cached_property
    def ambient_kinds(self):
        return self.first.ambient_kinds + self.second.ambient_kinds

    @cached_property
    def group_part_descriptor(self):
        return SubgroupDescriptor(self.vdesc.entries
                                  + self.second.group_part_descriptor.entries)

    # -- structural properties -----------------------------------------------

    @property
    def is_unbounded(self):
        return self.first.is_unbounded

    @cached_property
    def grpart_discretely_embedded(self):
        # Covers of (v, y) move y inside the second factor, so the question
        # reduces to the last lexicographic factor.
        return self.second.grpart_discretely_embedded

    def density_obstruction(self):
        if self.kind is PlpKind.III:
            if self.zdesc != self.vdesc:
                return (f"{self} keeps marker-only fibers over Z\\V, "
                        "which are two-element and hence not dense")
            inner = self.first.density_obstruction()
            if inner is not None:
                return f"first component of {self.display_name()}: {inner}"
        else:
            if not self.first.covers_confined_to_group_part:
                return (f"first component of {self.display_name()} has covers "
                        "outside its group part")
            if not (self.first.is_dense
                    or self.first.group_part_descriptor.refines(self.vdesc)):
                return (f"first component of {self.display_name()} has covers "
                        "whose fibers carry only the top marker")
        if not self.second.is_unbounded:
            return f"second component of {self.display_name()} is bounded"
        inner = self.second.density_obstruction()
        if inner is not None:
            return f"second component of {self.display_name()}: {inner}"
        return None

    @cached_property
    def covers_confined_to_group_part(self):
        if not (self.second.is_unbounded and self.second.covers_confined_to_group_part):
            return False
        if self.kind is PlpKind.III:
            return self.zdesc == self.vdesc and self.first.is_dense
        return (self.first.covers_confined_to_group_part
                and (self.first.is_dense
                     or self.first.group_part_descriptor.refines(self.vdesc)))

    @cached_property
    def idempotent_count(self):
        return self.first.idempotent_count + self.second.idempotent_count

    def display_name(self) -> str:
        return f"PLP{self.display_kind}"

    def __str__(self):
        k = self.display_kind
        if k == "I":
            return f"PLPI({self.first}, {self.zdesc}, {self.second})"
        if k == "II":
            return f"PLPII({self.first}, {self.second})"
        if k == "III":
            return f"PLPIII({self.first}, {self.zdesc}, {self.vdesc}, {self.second})"
        return f"PLPIV({self.first}, {self.vdesc}, {self.second})"


@dataclass(frozen=True)
class BoundedAlgebra(Algebra):
    """A chain with adjoined global bounds.

    The top is adjoined first as an annihilator, then the bottom below it,
    again as an annihilator; consequently ``BOT * TOP = BOT`` and negation
    swaps the two bounds.
    """

    inner: Algebra

    def contains(self, e):
        if isinstance(e, Bound):
            return True
        return self.inner.contains(e)

    def unit(self):
        return self.inner.unit()

    @staticmethod
    def _rank(e) -> int:
        if e is BOT_BOUND:
            return 0
        if e is TOP_BOUND:
            return 2
        return 1

    def _compare(self, a, b):
        ra, rb = self._rank(a), self._rank(b)
        if ra != rb:
            return -1 if ra < rb else 1
        if ra == 1:
            return self.inner._compare(a, b)
        return 0

    def _mult(self, a, b):
        if a is BOT_BOUND or b is BOT_BOUND:
            return BOT_BOUND
        if a is TOP_BOUND or b is TOP_BOUND:
            return TOP_BOUND
        return self.inner._mult(a, b)

    def _neg(self, a):
        if a is BOT_BOUND:
            return TOP_BOUND
        if a is TOP_BOUND:
            return BOT_BOUND
        return self.inner._neg(a)

    def _cover_up(self, a):
        return self.inner._cover_up(a)

    def _cover_down(self, a):
        return self.inner._cover_down(a)

    def _is_group_elem(self, e):
        return not isinstance(e, Bound) and self.inner._is_group_elem(e)

    def _flatten(self, e):
        return self.inner._flatten(e)

    def _unflatten(self, coords):
        return self.inner._unflatten(coords)

    @property
    def ambient_kinds(self):
        return self.inner.ambient_kinds

    @property
    def group_part_descriptor(self):
        return self.inner.group_part_descriptor

    @property
    def is_unbounded(self):
        return False

    @property
    def grpart_discretely_embedded(self):
        return self.inner.grpart_discretely_embedded

    def density_obstruction(self):
        if not self.inner.is_unbounded:
            return "bounds adjoined to a bounded chain create covers"
        return self.inner.density_obstruction()

    @property
    def covers_confined_to_group_part(self):
        return self.inner.is_unbounded and self.inner.covers_confined_to_group_part

    @property
    def idempotent_count(self):
        return self.inner.idempotent_count + 1

    def __str__(self):
        return f"Bounded({self.inner})"


def adjoin_bounds(algebra: Algebra) -> BoundedAlgebra:
    """Adjoin a global top (annihilator) and then a global bottom below it."""
    if isinstance(algebra, BoundedAlgebra):
        raise PreconditionViolation("bounds are already adjoined")
    return BoundedAlgebra(algebra)


# Convenience constructors for the two base chains most code starts from.

def z_chain(rank: int = 1) -> BaseAlgebra:
    return BaseAlgebra(ZLex(rank))


def q_chain() -> BaseAlgebra:
    return BaseAlgebra(QChain())


def trivial_chain() -> BaseAlgebra:
    return BaseAlgebra(Trivial())


def zelem(*coords: int) -> Leaf:
    return Leaf(tuple(coords))


def qelem(num, den: int = 1) -> Leaf:
    return Leaf(Fraction(num, den))
