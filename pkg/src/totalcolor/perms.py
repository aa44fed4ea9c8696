"""Symmetric, alternating and dihedral group elements and generating sets.

Permutations act on ``{1..n}`` and are stored as image tuples.  Products are
right-to-left: ``compose(p, q)`` (also ``p * q``) applies ``q`` first.
Dihedral elements are ``r^refl s^rot`` with ``s r = r s^-1``.
"""
from __future__ import annotations

import enum
import itertools
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def cycle(cls, n: int, *symbols: int) -> Permutation:
        return parse_cycles(_cycle_text(symbols), n)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest symbol."""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc = []
            j = start
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def extend(self, n: int) -> Permutation:
        """Same permutation viewed in S_n (extra symbols fixed)."""
        if n < self.degree:
            raise ValueError("cannot shrink a permutation")
        return Permutation(self.images + tuple(range(self.degree + 1, n + 1)))

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={self.degree})"


@dataclass(frozen=True, order=True)
class DihedralElement:
    """``r^refl s^rot`` in the dihedral group of order ``2n``."""

    rot: int
    refl: bool
    n: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.rot < self.n:
            raise ValueError(f"rotation {self.rot} out of range for n={self.n}")

    @classmethod
    def identity(cls, n: int) -> DihedralElement:
        return cls(0, False, n)

    @classmethod
    def s(cls, n: int, power: int = 1) -> DihedralElement:
        return cls(power % n, False, n)

    @classmethod
    def r(cls, n: int, power: int = 0) -> DihedralElement:
        """The reflection ``r s^power``."""
        return cls(power % n, True, n)

    def __mul__(self, other: DihedralElement) -> DihedralElement:
        return compose(self, other)

    def is_identity(self) -> bool:
        return self.rot == 0 and not self.refl

    def sort_key(self) -> tuple[int, int]:
        return (self.rot, int(self.refl))

    def __str__(self) -> str:
        if self.refl:
            return "r" if self.rot == 0 else ("rs" if self.rot == 1 else f"rs^{self.rot}")
        if self.rot == 0:
            return "e"
        return "s" if self.rot == 1 else f"s^{self.rot}"


GroupElement = Permutation | DihedralElement


def compose(p: GroupElement, q: GroupElement) -> GroupElement:
    """Product ``p q``; for permutations ``q`` is applied first."""
    if isinstance(p, Permutation) and isinstance(q, Permutation):
        if p.degree != q.degree:
            raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
        return Permutation(tuple(p.images[v - 1] for v in q.images))
    if isinstance(p, DihedralElement) and isinstance(q, DihedralElement):
        if p.n != q.n:
            raise ValueError(f"dihedral order mismatch: {p.n} vs {q.n}")
        # (r^f s^a)(r^g s^b) = r^(f+g) s^((-1)^g a + b)
        rot = (-p.rot if q.refl else p.rot) + q.rot
        return DihedralElement(rot % p.n, p.refl != q.refl, p.n)
    raise TypeError(f"cannot compose {type(p).__name__} with {type(q).__name__}")


def inverse(p: GroupElement) -> GroupElement:
    if isinstance(p, Permutation):
        inv = [0] * p.degree
        for i, v in enumerate(p.images, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))
    if p.refl:
        return p
    return DihedralElement((-p.rot) % p.n, False, p.n)


def identity_like(p: GroupElement) -> GroupElement:
    if isinstance(p, Permutation):
        return Permutation.identity(p.degree)
    return DihedralElement.identity(p.n)


def element_key(x: GroupElement):
    """Fixed total order: images for permutations, (rot, refl) for dihedral."""
    if isinstance(x, Permutation):
        return x.images
    return x.sort_key()


# ---------------------------------------------------------------- notation

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _cycle_text(symbols: Iterable[int]) -> str:
    return "(" + " ".join(str(s) for s in symbols) + ")"


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse ``"(1 2)(3 4)"``, ``"(12)(34)"``, ``"(1,2)"`` or ``"e"`` into S_n.

    Cycles are multiplied right-to-left, matching :func:`compose`.
    """
    text = text.strip()
    if text in ("e", "()", ""):
        return Permutation.identity(n)
    if _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    result = Permutation.identity(n)
    for body in _CYCLE_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        if "," in body or " " in body:
            symbols = [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
        else:
            if n > 9:
                raise ValueError("compact cycle notation is ambiguous for n > 9; use spaces")
            symbols = [int(ch) for ch in body]
        if len(set(symbols)) != len(symbols) or not all(1 <= s <= n for s in symbols):
            raise ValueError(f"bad cycle {body!r} for degree {n}")
        img = list(range(1, n + 1))
        for i, a in enumerate(symbols):
            img[a - 1] = symbols[(i + 1) % len(symbols)]
        result = compose(result, Permutation(tuple(img)))
    return result


def format_cycles(p: Permutation, compact: bool = False) -> str:
    cycles = p.cycles()
    if not cycles:
        return "e"
    sep = "" if compact and p.degree <= 9 else " "
    return "".join("(" + sep.join(str(s) for s in c) + ")" for c in cycles)


# ---------------------------------------------------------------- generating sets


class Family(str, enum.Enum):
    MIN_TRANSPOSITIONS = "MIN_TRANSPOSITIONS"
    ALL_TRANSPOSITIONS = "ALL_TRANSPOSITIONS"
    STAR_3CYCLES = "STAR_3CYCLES"
    SN_ADJACENT_CYCLE = "SN_ADJACENT_CYCLE"
    AN_3CYCLE_NCYCLE = "AN_3CYCLE_NCYCLE"
    DIHEDRAL_INTERVAL = "DIHEDRAL_INTERVAL"
    DIHEDRAL_CUSTOM = "DIHEDRAL_CUSTOM"


@dataclass(frozen=True)
class GeneratingSet:
    elements: tuple[GroupElement, ...]
    family: Family
    n: int

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def is_inverse_closed(self) -> bool:
        elems = set(self.elements)
        return all(inverse(s) in elems for s in self.elements)

    def has_identity(self) -> bool:
        return any(s.is_identity() for s in self.elements)


def _dedupe(elements: Iterable[GroupElement]) -> tuple[GroupElement, ...]:
    out = []
    seen = set()
    for x in elements:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return tuple(out)


def standard_generating_set(family: Family | str, n: int, *, k: int | None = None,
                            rotations: Iterable[int] | None = None,
                            reflections: Iterable[int] | None = None) -> GeneratingSet:
    """Build one of the named generating sets.

    ``k`` is the interval half-width for ``DIHEDRAL_INTERVAL``; ``rotations``
    (differences mod n) and ``reflections`` (indices i of ``r s^i``) describe
    ``DIHEDRAL_CUSTOM``.
    """
    family = Family(family)
    if family is Family.MIN_TRANSPOSITIONS:
        if n <= 2:
            raise ValueError("MIN_TRANSPOSITIONS needs n > 2")
        elems = [Permutation.cycle(n, 1, i) for i in range(2, n + 1)]
    elif family is Family.ALL_TRANSPOSITIONS:
        if n < 2:
            raise ValueError("ALL_TRANSPOSITIONS needs n >= 2")
        elems = [Permutation.cycle(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    elif family is Family.STAR_3CYCLES:
        if n < 3:
            raise ValueError("STAR_3CYCLES needs n >= 3")
        forward = [Permutation.cycle(n, 1, 2, m) for m in range(3, n + 1)]
        backward = [Permutation.cycle(n, 1, m, 2) for m in range(n, 2, -1)]
        elems = forward + backward
    elif family is Family.SN_ADJACENT_CYCLE:
        if n < 3:
            raise ValueError("SN_ADJACENT_CYCLE needs n >= 3")
        c = Permutation.cycle(n, *range(1, n + 1))
        elems = [Permutation.cycle(n, 1, 2), c, inverse(c)]
    elif family is Family.AN_3CYCLE_NCYCLE:
        if n < 4:
            raise ValueError("AN_3CYCLE_NCYCLE needs n >= 4")
        c = Permutation.cycle(n, *range(1, n + 1))
        elems = [Permutation.cycle(n, 1, 2, 3), Permutation.cycle(n, 1, 3, 2), c, inverse(c)]
    elif family is Family.DIHEDRAL_INTERVAL:
        if k is None or not 1 <= k < n / 2:
            raise ValueError(f"DIHEDRAL_INTERVAL needs 1 <= k < n/2, got k={k}, n={n}")
        rots = list(range(1, k + 1)) + list(range(n - k, n))
        elems = [DihedralElement.s(n, d) for d in rots] + [DihedralElement.r(n)]
    else:
        rots = sorted({d % n for d in (rotations or ())})
        refls = sorted({i % n for i in (reflections or ())})
        if 0 in rots:
            raise ValueError("rotation difference 0 is the identity")
        if any((n - d) % n not in rots for d in rots):
            raise ValueError(f"rotation differences {rots} are not inverse-closed mod {n}")
        elems = [DihedralElement.s(n, d) for d in rots] + [DihedralElement.r(n, i) for i in refls]
        if not elems:
            raise ValueError("empty generating set")
    return GeneratingSet(_dedupe(elems), family, n)


def generate_group(gens: GeneratingSet | Sequence[GroupElement]) -> list[GroupElement]:
    """Closure of ``gens`` by breadth-first right multiplication from the identity.

    Each BFS layer is sorted by :func:`element_key`, so the order is stable.
    """
    elems = tuple(gens)
    if not elems:
        raise ValueError("empty generating set")
    e = identity_like(elems[0])
    seen = {e}
    order = [e]
    layer = [e]
    while layer:
        fresh = set()
        for x in layer:
            for s in elems:
                y = compose(x, s)
                if y not in seen:
                    seen.add(y)
                    fresh.add(y)
        layer = sorted(fresh, key=element_key)
        order.extend(layer)
    return order


def symmetric_group(n: int) -> list[Permutation]:
    if n < 3:
        return sorted((Permutation(p) for p in itertools.permutations(range(1, n + 1))),
                      key=element_key)
    return generate_group(standard_generating_set(Family.MIN_TRANSPOSITIONS, n))


def alternating_group(n: int) -> list[Permutation]:
    if n < 3:
        return [Permutation.identity(n)]
    return generate_group(standard_generating_set(Family.STAR_3CYCLES, n))


def dihedral_group(n: int) -> list[DihedralElement]:
    """All of D_2n, rotations first then reflections."""
    return [DihedralElement(a, False, n) for a in range(n)] + \
        [DihedralElement(a, True, n) for a in range(n)]


def validate_generating_set(gens: GeneratingSet, group: Sequence[GroupElement]) -> list[str]:
    """Return a list of violated properties; empty means valid."""
    problems = []
    members = set(group)
    outside = [s for s in gens if s not in members]
    for s in outside:
        label = str(s)
        if isinstance(s, Permutation) and not s.is_even():
            problems.append(f"{label} is an odd permutation, not in the alternating group")
        else:
            problems.append(f"{label} is not an element of the group")
    if gens.has_identity():
        problems.append("identity belongs to the generating set")
    missing = [s for s in gens if inverse(s) not in gens]
    if missing:
        problems.append("not inverse-closed: missing inverse of " + ", ".join(str(s) for s in missing))
    if not outside:
        closure = set(generate_group(gens))
        if closure != members:
            problems.append(f"does not generate the group: closure has {len(closure)} "
                            f"of {len(members)} elements")
    return problems
