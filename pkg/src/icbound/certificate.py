"""Dual certificates: self-contained, exactly checkable lower-bound proofs.

A certificate for an instance is a nonnegative combination of one-step
decoding inequalities (the x part, keyed by nested subset pairs) and schema
rows (the y part) whose net subset-vector is exactly e_empty - e_full. Its
value, the sum of x weights times the number of newly-decoded wanted
messages per pair, lower-bounds the LP optimum and hence the broadcast rate.

Verification recomputes everything from the instance and schema; it trusts
nothing stored in the certificate beyond the weights themselves. Certificates
for two instances combine into one for their lexicographic product without
any solving, which is how bounds for large products are certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from icbound.errors import CertificateInvalid, InputError
from icbound.groundset import GroundSet, LatticeHom, SetVector
from icbound.instance import ClosureMode, IndexCodingInstance, cycle_instance
from icbound.rational import ONE, ZERO, Rational, rat
from icbound.schema import SchemaRow, SubmodRow, SubmodSchema

__all__ = [
    "DualCertificate",
    "verify_certificate",
    "combine_certificates",
    "certificate_from_solution",
    "c5_certificate",
]


@dataclass
class DualCertificate:
    schema_name: str
    closure: ClosureMode
    x: Dict[Tuple[int, int], Rational] = field(default_factory=dict)
    y: Dict[SchemaRow, Rational] = field(default_factory=dict)
    claimed_value: Optional[Rational] = None


def verify_certificate(
    instance: IndexCodingInstance, schema, cert: DualCertificate
) -> Rational:
    """Check a certificate exactly; returns its value, raises CertificateInvalid."""
    if cert.schema_name != schema.name:
        raise InputError(
            f"certificate was written against schema {cert.schema_name!r}, "
            f"verifying against {schema.name!r}"
        )
    gs = instance.messages
    full = gs.full_mask

    residual = SetVector.zero(gs)
    for (s, t), v in cert.x.items():
        gs.check_mask(s)
        gs.check_mask(t)
        if s & ~t or s == t:
            raise CertificateInvalid(
                f"x entry on ({gs.labels_of(s)}, {gs.labels_of(t)}) is not a strictly nested pair"
            )
        if v < 0:
            raise CertificateInvalid(f"negative x weight {v} on ({s}, {t})")
        if v:
            residual += (SetVector.unit(gs, s) - SetVector.unit(gs, t)).scale(v)
    for row, v in cert.y.items():
        if v < 0:
            raise CertificateInvalid(f"negative y weight {v} on {row!r}")
        if v:
            residual += schema.row_vector(row, gs).scale(v)

    target = SetVector.unit(gs, 0) - SetVector.unit(gs, full)
    if residual != target:
        diff = residual - target
        mask, coeff = next(iter(sorted(diff.items())))
        raise CertificateInvalid(
            f"combination misses e_empty - e_full; first offender "
            f"{gs.labels_of(mask)} with excess {coeff}"
        )

    value = ZERO
    for (s, t), v in cert.x.items():
        if v:
            value += v * rat(instance.dst(s, t, cert.closure))
    if cert.claimed_value is not None and cert.claimed_value != value:
        raise CertificateInvalid(
            f"claimed value {cert.claimed_value} but the combination is worth {value}"
        )
    return value


def certificate_from_solution(
    sol, schema_name: str, closure: ClosureMode = ClosureMode.SINGLE_STEP
) -> DualCertificate:
    """Package an optimal LP solution's dual weights as a certificate."""
    if sol.status != "optimal":
        raise InputError("only optimal solutions yield certificates")
    if sol.w != ONE:
        raise InputError(
            f"certificate extraction needs the scale multiplier at 1, got {sol.w}; "
            "the schema in use is not pinning the full-set row"
        )
    return DualCertificate(schema_name, closure, dict(sol.x), dict(sol.y), sol.value)


def _block_mask(g_mask: int, nf: int) -> int:
    out = 0
    full_f = (1 << nf) - 1
    g = g_mask
    while g:
        low = g & -g
        i = low.bit_length() - 1
        out |= full_f << (i * nf)
        g ^= low
    return out


def _pair_hom(gs_f: GroundSet, gs_p: GroundSet, s: int, t: int, nf: int) -> LatticeHom:
    base = _block_mask(s, nf)
    atoms = []
    diff = t & ~s
    for u in range(nf):
        img = 0
        d = diff
        while d:
            low = d & -d
            i = low.bit_length() - 1
            img |= 1 << (i * nf + u)
            d ^= low
        atoms.append(img)
    return LatticeHom(gs_f, gs_p, base, tuple(atoms))


def combine_certificates(
    inst_g: IndexCodingInstance,
    inst_f: IndexCodingInstance,
    cert_g: DualCertificate,
    cert_f: DualCertificate,
    schema,
    provenance: Optional[Dict] = None,
) -> DualCertificate:
    """Certificate for lex_product(inst_g, inst_f) from certificates of the parts.

    Every decoding pair of the first certificate induces a lattice hom from
    the second instance's subsets into the product's; the second certificate
    is pushed through each of these, weighted, and the first certificate's
    schema rows ride along the block embedding. No LP is involved, and the
    result is verified like any other certificate, so nothing here is
    trusted blindly. Both inputs are verified up front.

    Pass a dict as provenance to get, per product key, the list of factor
    entries that contributed to it (triage aid when a combination misses).
    """
    if cert_g.schema_name != schema.name or cert_f.schema_name != schema.name:
        raise InputError("both certificates must match the schema being combined under")
    if cert_g.closure != cert_f.closure:
        raise InputError("certificates disagree on closure mode")
    verify_certificate(inst_g, schema, cert_g)
    verify_certificate(inst_f, schema, cert_f)
    gs_g = inst_g.messages
    gs_f = inst_f.messages
    product = inst_g.lex_product(inst_f)
    gs_p = product.messages
    nf = gs_f.n

    def note(kind, key, source) -> None:
        if provenance is not None:
            provenance.setdefault((kind, key), []).append(source)

    block_atoms = tuple(((1 << nf) - 1) << (i * nf) for i in range(gs_g.n))
    g_hom = LatticeHom(gs_g, gs_p, 0, block_atoms)

    x: Dict[Tuple[int, int], Rational] = {}
    y: Dict[SchemaRow, Rational] = {}

    for row, v in cert_g.y.items():
        if not v:
            continue
        key = schema.pushforward_row(g_hom, row)
        y[key] = y.get(key, ZERO) + v
        note("y", key, ("left-row", row))

    for (s, t), vg in cert_g.x.items():
        if not vg:
            continue
        hom = _pair_hom(gs_f, gs_p, s, t, nf)
        for (a, b), vf in cert_f.x.items():
            if not vf:
                continue
            ka, kb = hom.apply(a), hom.apply(b)
            if ka == kb:
                continue  # degenerate image, dropped with its mass
            key = (ka, kb)
            x[key] = x.get(key, ZERO) + vg * vf
            note("x", key, ((s, t), (a, b)))
        for row, vf in cert_f.y.items():
            if not vf:
                continue
            key = schema.pushforward_row(hom, row)
            y[key] = y.get(key, ZERO) + vg * vf
            note("y", key, ((s, t), row))

    return DualCertificate(schema.name, cert_g.closure, x, y, None)


def c5_certificate():
    """The pentagon's certificate of 5/2: returns (instance, schema, certificate).

    Weights are hard numbers, not a stored solver trace; the verifier is the
    authority on them. Five messages around a cycle, each receiver knowing
    its two neighbours.
    """
    instance = cycle_instance(5)
    schema = SubmodSchema()
    half = rat("1/2")

    def m(*labels: int) -> int:
        out = 0
        for lab in labels:
            out |= 1 << (lab - 1)
        return out

    x = {
        (0, m(1, 3)): half,
        (0, m(2, 4)): half,
        (0, m(5)): half,
        (m(1, 3), m(1, 2, 3)): half,
        (m(2, 4), m(2, 3, 4)): half,
        (m(1, 2, 3, 4), m(1, 2, 3, 4, 5)): half,
        (m(2, 3, 5), m(1, 2, 3, 4, 5)): half,
    }
    y = {
        SubmodRow(m(2, 3, 4), m(1, 2, 3)): half,
        SubmodRow(m(2, 3), m(5)): half,
    }
    cert = DualCertificate("submod", ClosureMode.SINGLE_STEP, x, y, rat("5/2"))
    return instance, schema, cert
