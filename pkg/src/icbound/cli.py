"""Command-line surface: solve, verify, combine, convert, demo.

Exit codes are part of the contract: 0 success, 1 a verification or claimed
value failed, 2 malformed input, 3 a resource cap was hit. Demos re-run the
headline pipelines end to end and fail loudly on any mismatch, so they double
as an installed smoke test.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from icbound.certificate import (
    c5_certificate,
    certificate_from_solution,
    combine_certificates,
    verify_certificate,
)
from icbound.errors import CertificateInvalid, InputError, ResourceCapError, VerificationError
from icbound.formats import (
    SCHEMA_NAMES,
    certificate_from_json,
    certificate_to_json,
    dump_json,
    instance_from_json,
    instance_to_json,
    load_json,
    matroid_from_json,
    schema_by_name,
)
from icbound.groundset import LatticeHom
from icbound.instance import ClosureMode
from icbound.lincode import min_scalar_linear_rate
from icbound.lp import build_problem, solve_problem
from icbound.matroid import addineq_certificate, fano, nonfano, to_index_coding
from icbound.rational import rat, rat_str
from icbound.schema import SideRow

_CLOSURES = {
    "single": ClosureMode.SINGLE_STEP,
    "iterated": ClosureMode.ITERATED,
}


def _parse_rows_spec(spec: str, schema_name: str, instance):
    """Turn --rows into (policy, perms, homs) for schema_by_name."""
    if spec == "identity":
        return "identity", None, None
    if spec.startswith("orbit:"):
        perms_raw = load_json(spec[len("orbit:"):])
        if not isinstance(perms_raw, list):
            raise InputError("orbit file must be a JSON array of label maps")
        perms = []
        for entry in perms_raw:
            if not isinstance(entry, dict):
                raise InputError("each orbit entry must be a label-to-label object")
            perms.append({str(k): str(v) for k, v in entry.items()})
        return "orbit", perms, None
    if spec.startswith("file:"):
        homs_raw = load_json(spec[len("file:"):])
        if not isinstance(homs_raw, list):
            raise InputError("hom file must be a JSON array")
        probe = schema_by_name(schema_name)
        gen = getattr(probe, "generator", None) or getattr(
            getattr(probe, "right", None), "generator", None
        )
        if gen is None:
            raise InputError(f"schema {schema_name!r} takes no homomorphism rows")
        gs = instance.messages
        homs = []
        for entry in homs_raw:
            base = gs.mask_of(tuple(str(x) for x in entry.get("base", [])))
            images = []
            for lab in gen.labels:
                entry_atoms = entry.get("atoms", {})
                images.append(gs.mask_of(tuple(str(x) for x in entry_atoms.get(str(lab), []))))
            homs.append(LatticeHom(gen, gs, base, tuple(images)))
        return "file", None, homs
    raise InputError(f"--rows must be identity, orbit:PATH, or file:PATH, got {spec!r}")


def _cmd_solve(args) -> int:
    instance = instance_from_json(load_json(args.instance))
    policy, perms, homs = _parse_rows_spec(args.rows, args.schema, instance)
    schema = schema_by_name(args.schema, policy, perms, homs)
    closure = _CLOSURES[args.closure]
    sol = solve_problem(build_problem(instance, schema, closure))
    if sol.status != "optimal":
        raise VerificationError(f"LP status {sol.status}")
    print(f"b = {rat_str(sol.value)}")
    if args.emit_cert:
        cert = certificate_from_solution(sol, schema.name, closure)
        verify_certificate(instance, schema, cert)
        dump_json(certificate_to_json(cert, instance.messages, schema), args.emit_cert)
        print(f"certificate -> {args.emit_cert}")
    return 0


def _cmd_product(args) -> int:
    g = instance_from_json(load_json(args.first))
    f = instance_from_json(load_json(args.second))
    text = dump_json(instance_to_json(g.lex_product(f)), args.out)
    if args.out is None:
        print(text)
    return 0


def _cmd_combine(args) -> int:
    inst_g = instance_from_json(load_json(args.first))
    inst_f = instance_from_json(load_json(args.second))
    cert_g_obj = load_json(args.cert_first)
    cert_f_obj = load_json(args.cert_second)
    cert_g, schema = certificate_from_json(cert_g_obj, inst_g.messages)
    cert_f, _ = certificate_from_json(cert_f_obj, inst_f.messages, schema)
    if cert_g.schema_name != cert_f.schema_name:
        raise InputError(
            f"certificates use different schemas: "
            f"{cert_g.schema_name!r} vs {cert_f.schema_name!r}"
        )
    combined = combine_certificates(inst_g, inst_f, cert_g, cert_f, schema)
    product = inst_g.lex_product(inst_f)
    value = verify_certificate(product, schema, combined)
    combined.claimed_value = value
    text = dump_json(certificate_to_json(combined, product.messages, schema), args.out)
    if args.out is None:
        print(text)
    print(f"value = {rat_str(value)}")
    return 0


def _cmd_verify(args) -> int:
    instance = instance_from_json(load_json(args.instance))
    cert, schema = certificate_from_json(load_json(args.cert), instance.messages)
    value = verify_certificate(instance, schema, cert)
    print(f"value = {rat_str(value)}")
    return 0


def _cmd_matroid2ic(args) -> int:
    matroid = matroid_from_json(load_json(args.matroid))
    instance = to_index_coding(matroid, minimal=not args.full_receivers)
    text = dump_json(instance_to_json(instance), args.out)
    if args.out is None:
        print(text)
    return 0


def _cmd_alpha(args) -> int:
    instance = instance_from_json(load_json(args.instance))
    print(f"alpha = {instance.independence_number(cap=args.cap)}")
    return 0


def _cmd_search_linear(args) -> int:
    instance = instance_from_json(load_json(args.instance))
    result = min_scalar_linear_rate(instance, args.p, args.l_max)
    if result is None:
        print(f"exceeds {args.l_max}")
    else:
        print(f"lambda1 = {result}")
    return 0


def _check(ok: bool, label: str, failures: List[str]) -> None:
    print(("ok:   " if ok else "FAIL: ") + label)
    if not ok:
        failures.append(label)


def _demo_c5(failures: List[str]) -> None:
    instance, schema, builtin = c5_certificate()
    value = verify_certificate(instance, schema, builtin)
    _check(value == rat("5/2"), f"built-in pentagon certificate verifies to {rat_str(value)}", failures)
    sol = solve_problem(build_problem(instance))
    _check(sol.value == rat("5/2"), f"LP optimum b = {rat_str(sol.value)}", failures)
    cert = certificate_from_solution(sol, schema.name)
    _check(
        verify_certificate(instance, schema, cert) == sol.value,
        "extracted certificate re-verifies to the optimum",
        failures,
    )
    alpha = instance.independence_number()
    _check(alpha == 2, f"independence number alpha = {alpha}", failures)
    print(f"gap ratio b/alpha = {rat_str(sol.value / rat(alpha))}")


def _demo_alpha_beta(failures: List[str]) -> None:
    instance, schema, cert = c5_certificate()
    product = instance.lex_product(instance)
    combined = combine_certificates(instance, instance, cert, cert, schema)
    value = verify_certificate(product, schema, combined)
    _check(
        value == rat("25/4"),
        f"squared-pentagon certificate verifies to {rat_str(value)} on "
        f"{product.messages.n} messages",
        failures,
    )
    alpha = product.independence_number()
    _check(alpha == 4, f"alpha of the squared pentagon = {alpha}", failures)
    print(f"certified beta/alpha >= {rat_str(value / rat(alpha))}")


def _demo_fano_gap(failures: List[str]) -> None:
    for label, matroid, parity in (("binary", fano(), "odd"), ("ternary", nonfano(), "even")):
        instance = to_index_coding(matroid)
        sol = solve_problem(build_problem(instance))
        _check(
            sol.value == rat(4),
            f"plain LP bound for the {label} matroid instance = {rat_str(sol.value)}",
            failures,
        )
        schema = schema_by_name(f"submod+fano-{parity}")
        row = _identity_row(schema, instance)
        cert = addineq_certificate(matroid, row, schema)
        value = verify_certificate(instance, schema, cert)
        _check(
            value > rat(4),
            f"{parity}-row certificate for the {label} instance = {rat_str(value)} > 4",
            failures,
        )


def _identity_row(schema, instance) -> SideRow:
    rows = [r for r in schema.rows(instance.messages) if isinstance(r, SideRow) and r.side == 1]
    if not rows:
        raise InputError("schema yields no homomorphism rows on this instance")
    return rows[0]


def _demo_separation(failures: List[str]) -> None:
    mat_f, mat_n = fano(), nonfano()
    inst_f, inst_n = to_index_coding(mat_f), to_index_coding(mat_n)
    product = inst_f.lex_product(inst_n)

    submod = schema_by_name("submod")
    sol_f = solve_problem(build_problem(inst_f))
    sol_n = solve_problem(build_problem(inst_n))
    base = combine_certificates(
        inst_f,
        inst_n,
        certificate_from_solution(sol_f, submod.name),
        certificate_from_solution(sol_n, submod.name),
        submod,
    )
    base_value = verify_certificate(product, submod, base)
    _check(
        base_value == rat(16),
        f"submodular certificate pins b of the product at {rat_str(base_value)}",
        failures,
    )

    for parity, good, other, name in (
        ("odd", (mat_f, inst_f), (mat_n, inst_n), "odd-characteristic"),
        ("even", (mat_n, inst_n), (mat_f, inst_f), "even-characteristic"),
    ):
        schema = schema_by_name(f"submod+fano-{parity}")
        cut_mat, cut_inst = good
        _, flat_inst = other
        cut_cert = addineq_certificate(cut_mat, _identity_row(schema, cut_inst), schema)
        flat_sol = solve_problem(build_problem(flat_inst, schema))
        flat_cert = certificate_from_solution(flat_sol, schema.name)
        if parity == "odd":
            combined = combine_certificates(
                cut_inst, flat_inst, cut_cert, flat_cert, schema
            )
        else:
            combined = combine_certificates(
                flat_inst, cut_inst, flat_cert, cut_cert, schema
            )
        value = verify_certificate(product, schema, combined)
        _check(
            value > rat(16),
            f"{name} certificate on the 49-message product = {rat_str(value)} > 16",
            failures,
        )


_DEMOS = {
    "c5": _demo_c5,
    "alpha-beta": _demo_alpha_beta,
    "fano-gap": _demo_fano_gap,
    "separation": _demo_separation,
}


def _cmd_demo(args) -> int:
    failures: List[str] = []
    _DEMOS[args.name](failures)
    if failures:
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icb",
        description="Exact lower bounds on the index-coding broadcast rate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve the bound LP for an instance file")
    p.add_argument("instance")
    p.add_argument("--schema", default="submod", choices=SCHEMA_NAMES)
    p.add_argument("--rows", default="identity", metavar="identity|orbit:PATH|file:PATH")
    p.add_argument("--closure", default="single", choices=sorted(_CLOSURES))
    p.add_argument("--emit-cert", metavar="PATH")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("product", help="lexicographic product of two instance files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("combine", help="combine two certificates onto the product")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("cert_first")
    p.add_argument("cert_second")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=_cmd_combine)

    p = sub.add_parser("verify", help="verify a certificate file against an instance")
    p.add_argument("instance")
    p.add_argument("cert")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("matroid2ic", help="matroid file to index-coding instance")
    p.add_argument("matroid")
    p.add_argument("--full-receivers", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=_cmd_matroid2ic)

    p = sub.add_parser("alpha", help="independence number by branch and bound")
    p.add_argument("instance")
    p.add_argument("--cap", type=int, default=40)
    p.set_defaults(func=_cmd_alpha)

    p = sub.add_parser("search-linear", help="minimum scalar linear code length")
    p.add_argument("instance")
    p.add_argument("p", type=int)
    p.add_argument("--l-max", type=int, default=None)
    p.set_defaults(func=_cmd_search_linear)

    p = sub.add_parser("demo", help="scripted pipelines with pass/fail output")
    p.add_argument("name", choices=sorted(_DEMOS))
    p.set_defaults(func=_cmd_demo)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except CertificateInvalid as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
