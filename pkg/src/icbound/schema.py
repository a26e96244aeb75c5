"""Constraint schemas: reusable families of valid rows for the bound LP.

A schema assigns to every ground set a family of row vectors over its subset
lattice. Rows carry structured ids so that a dual solution can be mapped
along a lattice homomorphism without re-deriving anything: pushing a row id
forward and taking its vector must equal pushing the vector forward. That
commuting square is what `check_homomorphic` exercises, and it is the whole
reason combined certificates verify on product instances.

Tightness (every row orthogonal to the all-ones vector and to every
indicator-sum vector) is what pins the LP's scale multiplier to 1; schemas
built here are tight by construction and `check_tight` re-checks it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from icbound.errors import InputError, ResourceCapError
from icbound.groundset import GroundSet, LatticeHom, SetVector, bit_indices

__all__ = [
    "SubmodRow",
    "HomExtRow",
    "SideRow",
    "SchemaRow",
    "SubmodSchema",
    "HomExtSchema",
    "UnionSchema",
    "enumerate_homs",
]

_HOM_ENUM_CAP = 5_000_000


@dataclass(frozen=True)
class SubmodRow:
    """Submodularity at a pair of subsets (masks s, t)."""

    s: int
    t: int


@dataclass(frozen=True)
class HomExtRow:
    """Pushforward of a schema's generating row along hom (generator -> instance)."""

    schema: str
    hom: LatticeHom


@dataclass(frozen=True)
class SideRow:
    """Row of one side of a union schema; side is 0 (left) or 1 (right)."""

    side: int
    inner: "SchemaRow"


SchemaRow = Union[SubmodRow, HomExtRow, SideRow]


def enumerate_homs(domain: GroundSet, codomain: GroundSet) -> Iterator[LatticeHom]:
    """All lattice homomorphisms 2^domain -> 2^codomain in canonical form.

    Each codomain element is independently unused, added to the base, or
    assigned to exactly one domain atom, so there are (n_dom + 2)^n_cod homs.
    """
    nd = domain.n
    nc = codomain.n
    total = (nd + 2) ** nc
    if total > _HOM_ENUM_CAP:
        raise ResourceCapError(
            f"hom enumeration would produce {total} maps (cap {_HOM_ENUM_CAP})"
        )
    for assignment in itertools.product(range(nd + 2), repeat=nc):
        base = 0
        atoms = [0] * nd
        for elem, code in enumerate(assignment):
            if code == 0:
                continue
            if code == 1:
                base |= 1 << elem
            else:
                atoms[code - 2] |= 1 << elem
        yield LatticeHom(domain, codomain, base, tuple(atoms))


class SubmodSchema:
    """Elemental submodularity rows S+i, S+j for i < j outside S.

    The elemental family already implies submodularity at every pair of
    subsets, so the LP sees far fewer rows at the same optimum. row_vector
    still accepts an arbitrary pair row, which pushforwards produce.
    """

    name = "submod"

    def rows(self, gs: GroundSet) -> Iterator[SchemaRow]:
        n = gs.n
        for i in range(n):
            for j in range(i + 1, n):
                rest = gs.full_mask & ~(1 << i) & ~(1 << j)
                sub = rest
                while True:
                    yield SubmodRow((sub | 1 << i), (sub | 1 << j))
                    if sub == 0:
                        break
                    sub = (sub - 1) & rest

    def row_vector(self, row: SchemaRow, gs: GroundSet) -> SetVector:
        if not isinstance(row, SubmodRow):
            raise InputError(f"row {row!r} does not belong to schema {self.name}")
        s, t = row.s, row.t
        gs.check_mask(s)
        gs.check_mask(t)
        vec = SetVector.zero(gs)
        if s & ~t and t & ~s:
            vec = (
                SetVector.unit(gs, s)
                + SetVector.unit(gs, t)
                - SetVector.unit(gs, s | t)
                - SetVector.unit(gs, s & t)
            )
        return vec

    def pushforward_row(self, hom: LatticeHom, row: SchemaRow) -> SchemaRow:
        if not isinstance(row, SubmodRow):
            raise InputError(f"row {row!r} does not belong to schema {self.name}")
        return SubmodRow(hom.apply(row.s), hom.apply(row.t))

    def check_tight(self, gs: GroundSet) -> bool:
        for row in self.rows(gs):
            vec = self.row_vector(row, gs)
            if vec.mass() != 0:
                return False
            for i in range(gs.n):
                if vec.atom_mass(i) != 0:
                    return False
        return True

    def check_homomorphic(self, hom: LatticeHom) -> bool:
        dom = hom.domain
        for s in dom.subsets():
            for t in dom.subsets():
                vec = self.row_vector(SubmodRow(s, t), dom)
                pushed_row = self.pushforward_row(hom, SubmodRow(s, t))
                if vec.pushforward(hom) != self.row_vector(pushed_row, hom.codomain):
                    return False
        return True


class HomExtSchema:
    """All pushforwards of one fixed generating row along lattice homs.

    The generating row lives over its own ground set; for an instance ground
    set the schema's rows are its images under every hom from the generator
    lattice. Enumerating all of them is hopeless in general, so the LP-facing
    `rows` follows a policy: the identity embedding (when the instance reuses
    the generator's labels), that embedding composed with label permutations,
    or an explicit list of homs. row_vector and pushforward_row stay total.
    """

    def __init__(
        self,
        name: str,
        generator: GroundSet,
        alpha: SetVector,
        drop_label: object,
        policy: str = "identity",
        perms: Optional[Sequence[Dict[object, object]]] = None,
        homs: Optional[Sequence[LatticeHom]] = None,
    ):
        if alpha.gs != generator:
            raise InputError("generating row must live over the generator ground set")
        if drop_label not in generator.labels:
            raise InputError(f"drop label {drop_label!r} not in generator")
        if policy not in ("identity", "orbit", "file"):
            raise InputError(f"unknown row policy {policy!r}")
        if policy == "orbit" and perms is None:
            raise InputError("orbit policy needs permutations")
        if policy == "file" and homs is None:
            raise InputError("file policy needs explicit homs")
        self.name = name
        self.generator = generator
        self.alpha = alpha
        self.drop_label = drop_label
        self.policy = policy
        self.perms = list(perms) if perms else []
        self.homs = list(homs) if homs else []

    def _identity_hom(self, gs: GroundSet) -> Optional[LatticeHom]:
        atom_map = {}
        for label in self.generator.labels:
            if label == self.drop_label:
                continue
            if label not in gs.labels:
                return None
            atom_map[label] = (label,)
        return LatticeHom.from_labels(self.generator, gs, (), atom_map)

    def rows(self, gs: GroundSet) -> Iterator[SchemaRow]:
        if self.policy == "file":
            for hom in self.homs:
                if hom.domain != self.generator or hom.codomain != gs:
                    raise InputError("explicit hom does not match generator/instance")
                yield HomExtRow(self.name, hom)
            return
        ident = self._identity_hom(gs)
        if ident is None:
            return
        if self.policy == "identity":
            yield HomExtRow(self.name, ident)
            return
        seen = set()
        for perm in [None] + self.perms:
            if perm is None:
                hom = ident
            else:
                atom_map = {}
                for label in self.generator.labels:
                    if label == self.drop_label:
                        continue
                    image = perm.get(label, label)
                    if image not in gs.labels:
                        raise InputError(f"permutation sends {label!r} outside instance")
                    atom_map[label] = (image,)
                hom = LatticeHom.from_labels(self.generator, gs, (), atom_map)
            if hom.key() not in seen:
                seen.add(hom.key())
                yield HomExtRow(self.name, hom)

    def row_vector(self, row: SchemaRow, gs: GroundSet) -> SetVector:
        if not isinstance(row, HomExtRow) or row.schema != self.name:
            raise InputError(f"row {row!r} does not belong to schema {self.name}")
        if row.hom.domain != self.generator:
            raise InputError("row hom domain is not the schema generator")
        if row.hom.codomain != gs:
            raise InputError("row hom codomain does not match the instance")
        return self.alpha.pushforward(row.hom)

    def pushforward_row(self, hom: LatticeHom, row: SchemaRow) -> SchemaRow:
        if not isinstance(row, HomExtRow) or row.schema != self.name:
            raise InputError(f"row {row!r} does not belong to schema {self.name}")
        return HomExtRow(self.name, hom.compose(row.hom))

    def check_tight(self, gs: GroundSet) -> bool:
        if self.alpha.mass() != 0:
            return False
        for i in range(self.generator.n):
            if self.alpha.atom_mass(i) != 0:
                return False
        return True

    def check_homomorphic(self, hom: LatticeHom) -> bool:
        for q in enumerate_homs(self.generator, hom.domain):
            row = HomExtRow(self.name, q)
            vec = self.row_vector(row, hom.domain)
            pushed = self.pushforward_row(hom, row)
            if vec.pushforward(hom) != self.row_vector(pushed, hom.codomain):
                return False
        return True


class UnionSchema:
    """Disjoint union of two schemas; rows are tagged with their side."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.name = f"{left.name}+{right.name}"

    def rows(self, gs: GroundSet) -> Iterator[SchemaRow]:
        for row in self.left.rows(gs):
            yield SideRow(0, row)
        for row in self.right.rows(gs):
            yield SideRow(1, row)

    def _part(self, row: SchemaRow):
        if not isinstance(row, SideRow):
            raise InputError(f"row {row!r} does not belong to schema {self.name}")
        return (self.left, self.right)[row.side]

    def row_vector(self, row: SchemaRow, gs: GroundSet) -> SetVector:
        return self._part(row).row_vector(row.inner, gs)

    def pushforward_row(self, hom: LatticeHom, row: SchemaRow) -> SchemaRow:
        part = self._part(row)
        return SideRow(row.side, part.pushforward_row(hom, row.inner))

    def check_tight(self, gs: GroundSet) -> bool:
        return self.left.check_tight(gs) and self.right.check_tight(gs)

    def check_homomorphic(self, hom: LatticeHom) -> bool:
        return self.left.check_homomorphic(hom) and self.right.check_homomorphic(hom)
