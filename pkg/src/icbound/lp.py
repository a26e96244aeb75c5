"""Build and solve the broadcast-rate bound LP for an index coding instance.

The LP minimizes the value assigned to the empty set subject to: the full
message set scores n, adding one message to a known set costs at most 1 (and
costs 0 when that message is already implied), and every schema row is
nonnegative. Solving happens on the dual in standard form, whose simplex
multipliers are exactly the primal subset values; that keeps the basis at
size 2^n instead of the number of constraints.

The solution is re-audited here against the instance itself (closures are
recomputed, schema rows re-evaluated), independently of the solver's own
audit, so a bug in column construction cannot survive unnoticed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from icbound.errors import InputError, VerificationError
from icbound.groundset import GroundSet, SetVector, bit_indices
from icbound.instance import ClosureMode, IndexCodingInstance
from icbound.rational import ONE, ZERO, Rational, rat
from icbound.schema import SchemaRow, SubmodSchema
from icbound.simplex import StandardFormLP, solve_standard_form

__all__ = [
    "BoundSolution",
    "LPProblem",
    "build_problem",
    "solve_problem",
    "bound_b",
    "bound_with_schema",
]


@dataclass
class LPProblem:
    instance: IndexCodingInstance
    gs: GroundSet
    schema: object
    closure: ClosureMode
    dec_pairs: List[Tuple[int, int]]
    dec_cost: List[int]
    schema_rows: List[SchemaRow]
    lp: StandardFormLP
    crash: List[Tuple[int, int]]
    w_plus: int
    w_minus: int


@dataclass
class BoundSolution:
    status: str
    value: Optional[Rational]
    z: Dict[int, Rational]
    x: Dict[Tuple[int, int], Rational]
    y: Dict[SchemaRow, Rational]
    w: Optional[Rational]
    iterations: int


def build_problem(
    instance: IndexCodingInstance,
    schema=None,
    closure: ClosureMode = ClosureMode.SINGLE_STEP,
) -> LPProblem:
    if schema is None:
        schema = SubmodSchema()
    gs = instance.messages
    n = gs.n
    nrows = 1 << n
    masks = list(gs.subsets())

    cols_idx: List[Tuple[int, ...]] = []
    cols_val: List[tuple] = []
    cobj: list = []

    dec_pairs: List[Tuple[int, int]] = []
    dec_cost: List[int] = []
    dec_col: Dict[Tuple[int, int], int] = {}
    for s in masks:
        cl = instance.closure(s, closure)
        for i in range(n):
            bit = 1 << i
            if s & bit:
                continue
            t = s | bit
            cost = 0 if cl & bit else 1
            dec_col[(s, t)] = len(cols_idx)
            dec_pairs.append((s, t))
            dec_cost.append(cost)
            if s < t:
                cols_idx.append((s, t))
                cols_val.append((ONE, -ONE))
            else:  # unreachable for single-step pairs, kept for clarity
                cols_idx.append((t, s))
                cols_val.append((-ONE, ONE))
            cobj.append(rat(-cost))

    schema_rows: List[SchemaRow] = []
    for row in schema.rows(gs):
        vec = schema.row_vector(row, gs)
        if not vec:
            continue
        schema_rows.append(row)
        items = sorted(vec.items())
        cols_idx.append(tuple(k for k, _ in items))
        cols_val.append(tuple(v for _, v in items))
        cobj.append(ZERO)

    full = gs.full_mask
    w_plus = len(cols_idx)
    cols_idx.append((full,))
    cols_val.append((ONE,))
    cobj.append(rat(n))
    w_minus = len(cols_idx)
    cols_idx.append((full,))
    cols_val.append((-ONE,))
    cobj.append(rat(-n))

    rhs = [ZERO] * nrows
    rhs[0] = ONE

    crash = []
    prefix = 0
    for k in range(n):
        nxt = prefix | (1 << k)
        crash.append((dec_col[(prefix, nxt)], prefix))
        prefix = nxt
    crash.append((w_plus, full))

    lp = StandardFormLP(nrows, cols_idx, cols_val, cobj, rhs)
    return LPProblem(
        instance, gs, schema, closure, dec_pairs, dec_cost, schema_rows, lp, crash, w_plus, w_minus
    )


def solve_problem(problem: LPProblem) -> BoundSolution:
    res = solve_standard_form(problem.lp, crash=problem.crash)
    if res.status == "unbounded":
        return BoundSolution("unbounded", None, {}, {}, {}, None, res.iterations)

    z = {mask: res.y[mask] for mask in range(1 << problem.gs.n)}
    x: Dict[Tuple[int, int], Rational] = {}
    for col, pair in enumerate(problem.dec_pairs):
        if res.x[col]:
            x[pair] = res.x[col]
    y: Dict[SchemaRow, Rational] = {}
    base = len(problem.dec_pairs)
    for k, row in enumerate(problem.schema_rows):
        if res.x[base + k]:
            y[row] = res.x[base + k]
    w = res.x[problem.w_plus] - res.x[problem.w_minus]
    sol = BoundSolution("optimal", res.objective, z, x, y, w, res.iterations)
    _audit_against_instance(problem, sol)
    return sol


def bound_with_schema(
    instance: IndexCodingInstance,
    schema=None,
    closure: ClosureMode = ClosureMode.SINGLE_STEP,
) -> Rational:
    """Optimum of the bound LP under the given schema (default submodular)."""
    sol = solve_problem(build_problem(instance, schema, closure))
    if sol.status != "optimal":
        raise VerificationError(f"bound LP came back {sol.status}")
    return sol.value


def bound_b(
    instance: IndexCodingInstance,
    closure: ClosureMode = ClosureMode.SINGLE_STEP,
) -> Rational:
    """The headline broadcast-rate lower bound, submodularity only."""
    return bound_with_schema(instance, None, closure)


def _audit_against_instance(problem: LPProblem, sol: BoundSolution) -> None:
    """Check the claimed optimum against the instance, not the built columns."""
    inst = problem.instance
    gs = problem.gs
    z = sol.z
    n = gs.n
    if z[gs.full_mask] != rat(n):
        raise VerificationError("full-set value is not pinned to n")
    if z[0] != sol.value:
        raise VerificationError("empty-set value disagrees with the LP objective")
    for s in gs.subsets():
        cl = inst.closure(s, problem.closure)
        for i in range(n):
            bit = 1 << i
            if s & bit:
                continue
            cost = 0 if cl & bit else 1
            if z[s | bit] - z[s] > cost:
                raise VerificationError(
                    f"solution violates the one-step decoding bound at {gs.labels_of(s)}+{gs.labels[i]}"
                )
    for row in problem.schema_rows:
        vec = problem.schema.row_vector(row, gs)
        acc = ZERO
        for mask, coeff in vec.items():
            acc += coeff * z[mask]
        if acc < 0:
            raise VerificationError(f"solution violates schema row {row!r}")
    # Dual side: the reported multipliers must reproduce the objective.
    total = ZERO
    for (s, t), xv in sol.x.items():
        d = inst.dst(s, t, problem.closure)
        total += xv * rat(d)
    if sol.w is not None and sol.w == ONE and total != sol.value:
        raise VerificationError("dual value identity failed at w = 1")
