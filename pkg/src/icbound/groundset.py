"""Ground sets, subset bitmasks, sparse subset-indexed vectors, lattice maps.

Subsets of a ground set are plain Python ints used as bitmasks, bit i of the
mask corresponding to label i in ground-set order. Ints are arbitrary width,
so ground sets well beyond 64 elements (e.g. three-fold lexicographic powers
on 125 messages) work unchanged; only *dense* enumeration of all 2^n subsets
is gated, by the ICB_DENSE_CAP environment variable (default 16).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InputError, ResourceCapError
from .rational import Rational, ZERO, rat

DEFAULT_DENSE_CAP = 16


def dense_cap() -> int:
    raw = os.environ.get("ICB_DENSE_CAP", "")
    try:
        return int(raw) if raw else DEFAULT_DENSE_CAP
    except ValueError:
        raise InputError(f"ICB_DENSE_CAP must be an integer, got {raw!r}")


def bit_indices(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def submasks(mask: int) -> Iterator[int]:
    """All subsets of mask, standard descending-submask walk plus 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class GroundSet:
    """An ordered tuple of distinct hashable labels; immutable."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable):
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise InputError("ground-set labels must be distinct")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown label {label!r}") from None

    def mask_of(self, labels: Iterable) -> int:
        mask = 0
        for lab in labels:
            mask |= 1 << self.index(lab)
        return mask

    def labels_of(self, mask: int) -> tuple:
        self.check_mask(mask)
        return tuple(self.labels[i] for i in bit_indices(mask))

    def check_mask(self, mask: int) -> int:
        if not isinstance(mask, int) or mask < 0 or mask > self.full_mask:
            raise InputError(
                f"mask {mask!r} does not fit a {self.n}-element ground set")
        return mask

    def subsets(self) -> Iterator[int]:
        """Iterate all 2^n subset masks; refused above the dense cap."""
        cap = dense_cap()
        if self.n > cap:
            raise ResourceCapError(
                f"dense enumeration of 2^{self.n} subsets exceeds cap {cap}")
        return iter(range(1 << self.n))

    def append(self, label) -> "GroundSet":
        """New ground set with one extra label at the end."""
        return GroundSet(self.labels + (label,))

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)!r})"


class SetVector:
    """Sparse exact-rational vector indexed by subset masks of a ground set.

    Zero entries are pruned on construction, making == structural equality.
    Treated as immutable; all arithmetic returns new vectors.
    """

    __slots__ = ("gs", "_data")

    def __init__(self, gs: GroundSet, data=None):
        self.gs = gs
        clean: dict[int, Rational] = {}
        if data:
            for mask, value in (data.items() if hasattr(data, "items") else data):
                gs.check_mask(mask)
                v = rat(value)
                if v:
                    prev = clean.get(mask)
                    v = v if prev is None else prev + v
                    if v:
                        clean[mask] = v
                    else:
                        del clean[mask]
        self._data = clean

    @classmethod
    def zero(cls, gs: GroundSet) -> "SetVector":
        return cls(gs)

    @classmethod
    def unit(cls, gs: GroundSet, mask: int, value=1) -> "SetVector":
        return cls(gs, {mask: value})

    def get(self, mask: int) -> Rational:
        return self._data.get(mask, ZERO)

    def items(self):
        return self._data.items()

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._data))

    def __len__(self) -> int:
        return len(self._data)

    def __bool__(self) -> bool:
        return bool(self._data)

    def __add__(self, other: "SetVector") -> "SetVector":
        self._check_mate(other)
        data = dict(self._data)
        for mask, v in other._data.items():
            new = data.get(mask, ZERO) + v
            if new:
                data[mask] = new
            else:
                data.pop(mask, None)
        out = SetVector(self.gs)
        out._data = data
        return out

    def __sub__(self, other: "SetVector") -> "SetVector":
        return self + other.scale(-1)

    def scale(self, factor) -> "SetVector":
        f = rat(factor)
        out = SetVector(self.gs)
        if f:
            out._data = {mask: f * v for mask, v in self._data.items()}
        return out

    def dot(self, other: "SetVector") -> Rational:
        self._check_mate(other)
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        total = ZERO
        for mask, v in small._data.items():
            w = big._data.get(mask)
            if w is not None:
                total += v * w
        return total

    def mass(self) -> Rational:
        """Sum of all entries, i.e. the dot product with the all-ones vector."""
        total = ZERO
        for v in self._data.values():
            total += v
        return total

    def atom_mass(self, atom_index: int) -> Rational:
        """Sum over subsets containing the given atom (dot with 1_i)."""
        bit = 1 << atom_index
        total = ZERO
        for mask, v in self._data.items():
            if mask & bit:
                total += v
        return total

    def pushforward(self, hom: "LatticeHom") -> "SetVector":
        """Image vector: (result)_T is the sum of v_S over S with h(S) = T."""
        if hom.domain != self.gs:
            raise InputError("pushforward along a map with a different domain")
        data: dict[int, Rational] = {}
        for mask, v in self._data.items():
            img = hom.apply(mask)
            new = data.get(img, ZERO) + v
            if new:
                data[img] = new
            else:
                data.pop(img, None)
        out = SetVector(hom.codomain)
        out._data = data
        return out

    def _check_mate(self, other: "SetVector"):
        if not isinstance(other, SetVector) or other.gs != self.gs:
            raise InputError("set vectors over different ground sets")

    def __eq__(self, other) -> bool:
        return (isinstance(other, SetVector) and other.gs == self.gs
                and other._data == self._data)

    def __repr__(self) -> str:
        entries = ", ".join(
            f"{{{','.join(map(str, self.gs.labels_of(m)))}}}: {v}"
            for m, v in sorted(self._data.items()))
        return f"SetVector({entries})"


@dataclass(frozen=True)
class LatticeHom:
    """Boolean lattice homomorphism between two subset lattices.

    Determined by the image of the empty set (base) and per-atom images:
    h(S) = base | union of atom_images[i] for i in S. Preserves union and
    intersection; need not preserve the empty set or the full set. The
    canonical-form invariants (atom images pairwise disjoint and disjoint
    from the base) are exactly what union/intersection preservation needs,
    so they are enforced at construction.
    """

    domain: GroundSet
    codomain: GroundSet
    base: int
    atom_images: tuple[int, ...]

    def __post_init__(self):
        if len(self.atom_images) != self.domain.n:
            raise InputError("need one atom image per domain label")
        self.codomain.check_mask(self.base)
        seen = self.base
        for img in self.atom_images:
            self.codomain.check_mask(img)
            if img & seen:
                raise InputError("atom images must be disjoint from each "
                                 "other and from the base")
            seen |= img

    @classmethod
    def identity(cls, gs: GroundSet) -> "LatticeHom":
        return cls(gs, gs, 0, tuple(1 << i for i in range(gs.n)))

    @classmethod
    def from_labels(cls, domain: GroundSet, codomain: GroundSet,
                    base_labels: Iterable, atom_label_map: dict) -> "LatticeHom":
        """Build from label-level data; atoms absent from the map go to the base."""
        base = codomain.mask_of(base_labels)
        images = []
        for lab in domain.labels:
            images.append(codomain.mask_of(atom_label_map.get(lab, ())))
        return cls(domain, codomain, base, tuple(images))

    def apply(self, mask: int) -> int:
        self.domain.check_mask(mask)
        out = self.base
        for i in bit_indices(mask):
            out |= self.atom_images[i]
        return out

    def compose(self, inner: "LatticeHom") -> "LatticeHom":
        """The map S -> self(inner(S)); inner runs first."""
        if inner.codomain != self.domain:
            raise InputError("composition domains do not line up")
        base = self.apply(inner.base)
        images = tuple(
            self.apply(inner.base | inner.atom_images[i]) & ~base
            for i in range(inner.domain.n))
        return LatticeHom(inner.domain, self.codomain, base, images)

    def key(self) -> tuple:
        """Hashable identity ignoring label objects (used in schema row ids)."""
        return (self.domain.labels, self.codomain.labels, self.base,
                self.atom_images)
