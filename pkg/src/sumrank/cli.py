"""Batch JSON front end.

A job file carries one field tower, named codes, and an ordered command
list; the output is one JSON report entry per command.  Field elements
travel as integer codes and matrices row-major, so fixtures stay readable
by any other implementation.  Reports are byte-identical across runs:
every enumeration order in the library is fixed and the JSON is dumped
with sorted keys.

Exit status: 0 when every command succeeded, otherwise the code of the
first failure (2 schema, 3 budget, 4 math domain).

Job shape:

    {
      "tower": {"p": 2, "m": 2, "modulus": [1, 1, 1],
                "blocks": [{"n": 2, "d": 1}]},
      "codes": {"C": [[1, 2]]},
      "budget": 10000000,
      "seed": 0,
      "commands": [{"command": "hierarchy", "code": "C"}]
    }

Code-producing commands accept "save": "name" to register their result
for later commands.  Saved codes keep their own towers, so analyses of
restricted or shortened codes run over the derived block structure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from .codes import LinearCode
from .errors import BudgetExceeded, SchemaError, SumRankError, exit_code_for
from .field import FieldTower, FiniteField
from .lattice import (
    DEFAULT_BUDGET,
    SupportList,
    count_supports,
    enumerate_supports,
    gaussian_binomial,
)
from .metric import (
    BlockVector,
    NotASupportSpace,
    subspace_support,
    sum_rank_distance,
    sum_rank_weight,
    support_space_of,
    vector_support,
)
from .skew import (
    FunctionTable,
    PClosedSet,
    p_basis_decompose,
    phi_B,
    skew_evaluation_code,
    skew_support,
    skew_support_space_check,
    skew_weight,
)
from .weights import (
    check_bounds,
    effective_length,
    is_msrd,
    min_distance,
    msrd_rank,
    msrd_support_characterization,
    wei_duality_check,
    weight_report,
)


# ---------------------------------------------------------------------------
# schema helpers
# ---------------------------------------------------------------------------


def _req(args: dict, key: str, path: str):
    if key not in args:
        raise SchemaError(f"missing '{key}'", path)
    return args[key]


def _as_int(value, path: str, low: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError("expected an integer", path)
    if low is not None and value < low:
        raise SchemaError(f"expected an integer >= {low}", path)
    return value


def _as_str(value, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaError("expected a string", path)
    return value


def _as_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError("expected a list", path)
    return value


def _as_dict(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError("expected an object", path)
    return value


def _int_list(value, path: str) -> list[int]:
    value = _as_list(value, path)
    return [_as_int(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _parse_tower(data, path: str = "$.tower") -> FieldTower:
    data = _as_dict(data, path)
    p = _as_int(_req(data, "p", path), f"{path}.p", 2)
    m = _as_int(_req(data, "m", path), f"{path}.m", 1)
    modulus = _int_list(_req(data, "modulus", path), f"{path}.modulus")
    blocks = []
    for i, bd in enumerate(_as_list(_req(data, "blocks", path), f"{path}.blocks")):
        bpath = f"{path}.blocks[{i}]"
        bd = _as_dict(bd, bpath)
        n = _as_int(_req(bd, "n", bpath), f"{bpath}.n", 0)
        d = _as_int(_req(bd, "d", bpath), f"{bpath}.d", 1)
        if "basis" in bd:
            blocks.append((n, d, tuple(_int_list(bd["basis"], f"{bpath}.basis"))))
        else:
            blocks.append((n, d))
    try:
        field = FiniteField(p, m, tuple(modulus))
        return FieldTower(field, blocks)
    except (ValueError, SumRankError) as exc:
        raise SchemaError(str(exc), path) from exc


def _parse_vector(tower: FieldTower, data, path: str) -> BlockVector:
    codes = _int_list(data, path)
    if len(codes) != tower.n:
        raise SchemaError(f"vector length {len(codes)} != n = {tower.n}", path)
    q = tower.field.q
    for i, v in enumerate(codes):
        if not 0 <= v < q:
            raise SchemaError(f"element code {v} outside the field", f"{path}[{i}]")
    return BlockVector(tower, tuple(codes))


def _parse_code(tower: FieldTower, data, path: str) -> LinearCode:
    rows = _as_list(data, path)
    vectors = [_parse_vector(tower, r, f"{path}[{i}]") for i, r in enumerate(rows)]
    return LinearCode.from_rows(tower, [v.codes for v in vectors])


class _Job:
    def __init__(self, tower: FieldTower, codes: dict, budget: int, seed: int):
        self.tower = tower
        self.codes = codes
        self.budget = budget
        self.seed = seed

    def code(self, args: dict, path: str, key: str = "code") -> LinearCode:
        name = _as_str(_req(args, key, path), f"{path}.{key}")
        if name not in self.codes:
            raise SchemaError(f"unknown code '{name}'", f"{path}.{key}")
        return self.codes[name]

    def save(self, args: dict, path: str, code: LinearCode) -> dict:
        if "save" not in args:
            return {}
        name = _as_str(args["save"], f"{path}.save")
        self.codes[name] = code
        return {"saved": name}


def _support_json(support: SupportList) -> dict:
    return {"rank": support.rank(), "support": support.to_json()}


def _parse_skew(job: _Job, args: dict, path: str):
    data = _as_dict(_req(args, "skew", path), f"{path}.skew")
    t = _as_int(_req(data, "sigma_power", f"{path}.skew"), f"{path}.skew.sigma_power", 0)
    points = _int_list(_req(data, "pbasis", f"{path}.skew"), f"{path}.skew.pbasis")
    field = job.tower.field
    for i, a in enumerate(points):
        if not 0 <= a < field.q:
            raise SchemaError(
                f"element code {a} outside the field", f"{path}.skew.pbasis[{i}]"
            )
    return p_basis_decompose(field, t, points)


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------


def _cmd_weight(job, args, path):
    v = _parse_vector(job.tower, _req(args, "vector", path), f"{path}.vector")
    return {"weight": sum_rank_weight(v)}


def _cmd_distance(job, args, path):
    v = _parse_vector(job.tower, _req(args, "vector", path), f"{path}.vector")
    w = _parse_vector(job.tower, _req(args, "other", path), f"{path}.other")
    return {"distance": sum_rank_distance(v, w)}


def _cmd_support(job, args, path):
    if "vector" in args:
        v = _parse_vector(job.tower, args["vector"], f"{path}.vector")
        return _support_json(vector_support(v))
    code = job.code(args, path)
    if code.dim == 0:
        return _support_json(SupportList.zero(code.tower))
    return _support_json(subspace_support(code.generators()))


def _cmd_support_space(job, args, path):
    if "tables" in args:
        decomp = _parse_skew(job, args, path)
        omega = decomp.closure()
        tables = []
        for i, vals in enumerate(_as_list(args["tables"], f"{path}.tables")):
            codes = _int_list(vals, f"{path}.tables[{i}]")
            if len(codes) != decomp.n:
                raise SchemaError("table length mismatch", f"{path}.tables[{i}]")
            tables.append(FunctionTable(decomp, tuple(codes)))
        verdict = skew_support_space_check(tables, omega, seed=job.seed)
        if isinstance(verdict, PClosedSet):
            return {
                "is_support_space": True,
                "rank": verdict.rank,
                "closure_points": list(verdict.points),
                "minimal_poly": list(verdict.minimal_poly.coeffs),
            }
        return {
            "is_support_space": False,
            "dimension": verdict.dimension,
            "support_rank": verdict.support_rank,
            "closure": _support_json(verdict.closure),
        }
    vectors_data = _as_list(_req(args, "vectors", path), f"{path}.vectors")
    if not vectors_data:
        raise SchemaError("need at least one vector", f"{path}.vectors")
    vectors = [
        _parse_vector(job.tower, v, f"{path}.vectors[{i}]")
        for i, v in enumerate(vectors_data)
    ]
    verdict = support_space_of(vectors)
    if isinstance(verdict, NotASupportSpace):
        return {
            "is_support_space": False,
            "dimension": verdict.dimension,
            "support_rank": verdict.support_rank,
            "closure": _support_json(verdict.closure),
        }
    return {"is_support_space": True, **_support_json(verdict)}


def _cmd_dual(job, args, path):
    out = job.code(args, path).dual()
    return {"code": out.to_json(), **job.save(args, path, out)}


def _cmd_change_bases(job, args, path):
    code = job.code(args, path)
    mats_data = _as_list(_req(args, "matrices", path), f"{path}.matrices")
    mats = []
    for i, mat in enumerate(mats_data):
        rows = _as_list(mat, f"{path}.matrices[{i}]")
        mats.append([_int_list(r, f"{path}.matrices[{i}][{j}]") for j, r in enumerate(rows)])
    out = code.change_of_bases(mats)
    return {"code": out.to_json(), **job.save(args, path, out)}


def _with_support(job, args, path, method):
    code = job.code(args, path)
    support = SupportList.from_json(
        code.tower, _req(args, "support", path), f"{path}.support"
    )
    out = method(code, support)
    return {"code": out.to_json(), **job.save(args, path, out)}


def _cmd_pre_shorten(job, args, path):
    return _with_support(job, args, path, LinearCode.pre_shorten)


def _cmd_restrict(job, args, path):
    return _with_support(job, args, path, LinearCode.restrict)


def _cmd_shorten(job, args, path):
    return _with_support(job, args, path, LinearCode.shorten)


def _cmd_hierarchy(job, args, path):
    report = weight_report(job.code(args, path), budget=job.budget)
    return {
        "k": report.k,
        "n": report.n,
        "d": list(report.d),
        "k_profile": list(report.k_profile),
        "msrd_rank": report.msrd_rank,
        "effective_length": report.effective_length,
        "degenerate": report.degenerate,
    }


def _cmd_wei_check(job, args, path):
    res = wei_duality_check(job.code(args, path), budget=job.budget)
    return {
        "ok": res.ok,
        "weights": list(res.weights),
        "dual_complement": list(res.dual_complement),
    }


def _cmd_bounds(job, args, path):
    code = job.code(args, path)
    checks = check_bounds(weight_report(code, budget=job.budget), code.tower.field.q)
    return {
        "all_hold": all(c.holds for c in checks),
        "checks": [
            {"bound": c.bound, "r": c.r, "s": c.s, "holds": c.holds, "slack": c.slack}
            for c in checks
        ],
    }


def _cmd_msrd_check(job, args, path):
    code = job.code(args, path)
    out = {
        "is_msrd": is_msrd(code, budget=job.budget),
        "msrd_rank": msrd_rank(code, budget=job.budget),
    }
    if "r" in args:
        r = _as_int(args["r"], f"{path}.r", 1)
        out["characterization"] = msrd_support_characterization(
            code, r, budget=job.budget
        )
    return out


def _cmd_effective_length(job, args, path):
    res = effective_length(job.code(args, path), budget=job.budget)
    return {
        "n_effective": res.n_effective,
        "degenerate": res.degenerate,
        "dual_min_distance": res.dual_min_distance,
        "projection_dims": list(res.projection_dims),
        "sufficient_condition_fires": res.sufficient_condition_fires,
        "support": res.support.to_json(),
    }


def _cmd_skew_eval_code(job, args, path):
    decomp = _parse_skew(job, args, path)
    k = _as_int(_req(args, "k", path), f"{path}.k", 1)
    out = skew_evaluation_code(decomp, k)
    return {
        "code": out.to_json(),
        "tower_blocks": [[b.n, b.d] for b in out.tower.blocks],
        **job.save(args, path, out),
    }


def _cmd_skew_weight(job, args, path):
    decomp = _parse_skew(job, args, path)
    values = _int_list(_req(args, "values", path), f"{path}.values")
    if len(values) != decomp.n:
        raise SchemaError("value count does not match the P-basis", f"{path}.values")
    table = FunctionTable(decomp, tuple(values))
    omega = decomp.closure()
    support = skew_support(table, omega)
    return {
        "weight": skew_weight(table, omega),
        "support_rank": support.rank,
        "support_points": list(support.points),
    }


def _cmd_isometry_check(job, args, path):
    decomp = _parse_skew(job, args, path)
    omega = decomp.closure()
    tower = decomp.make_tower()
    field = job.tower.field
    count = field.q**decomp.n
    if count > job.budget:
        raise BudgetExceeded(count, job.budget, "isometry scan")
    counterexample = None
    for codes in itertools.product(range(field.q), repeat=decomp.n):
        c = BlockVector(tower, codes)
        if skew_weight(phi_B(c, decomp), omega) != sum_rank_weight(c):
            counterexample = list(codes)
            break
    out = {"checked": count, "ok": counterexample is None}
    if counterexample is not None:
        out["counterexample"] = counterexample
    return out


def _cmd_enumerate(job, args, path):
    tower = job.tower
    field = tower.field
    by_rank = [1]
    for b in tower.blocks:
        s = field.p**b.d
        block = [gaussian_binomial(b.n, k, s) for k in range(b.n + 1)]
        merged = [0] * (len(by_rank) + len(block) - 1)
        for i, x in enumerate(by_rank):
            for j, y in enumerate(block):
                merged[i + j] += x * y
        by_rank = merged
    total = count_supports(tower)
    out = {"total": total, "by_rank": by_rank}
    target = None
    if "target_rank" in args:
        target = _as_int(args["target_rank"], f"{path}.target_rank", 0)
        out["count_at_rank"] = by_rank[target] if target < len(by_rank) else 0
    if args.get("list"):
        out["supports"] = [
            L.to_json()
            for L in enumerate_supports(tower, target_rank=target, budget=job.budget)
        ]
    return out


_COMMANDS = {
    "weight": _cmd_weight,
    "distance": _cmd_distance,
    "support": _cmd_support,
    "support-space": _cmd_support_space,
    "dual": _cmd_dual,
    "change-bases": _cmd_change_bases,
    "pre-shorten": _cmd_pre_shorten,
    "restrict": _cmd_restrict,
    "shorten": _cmd_shorten,
    "hierarchy": _cmd_hierarchy,
    "wei-check": _cmd_wei_check,
    "bounds": _cmd_bounds,
    "msrd-check": _cmd_msrd_check,
    "effective-length": _cmd_effective_length,
    "skew-eval-code": _cmd_skew_eval_code,
    "skew-weight": _cmd_skew_weight,
    "isometry-check": _cmd_isometry_check,
    "enumerate": _cmd_enumerate,
}


# ---------------------------------------------------------------------------
# job runner
# ---------------------------------------------------------------------------


def _error_entry(exc: SumRankError) -> dict:
    return {
        "kind": type(exc).__name__,
        "code": exit_code_for(exc),
        "message": str(exc),
    }


def run_job(data, budget: int | None = None, seed: int | None = None):
    """Run one parsed job; returns (report dict, exit status)."""
    try:
        data = _as_dict(data, "$")
        tower = _parse_tower(_req(data, "tower", "$"))
        if budget is None:
            budget = _as_int(data.get("budget", DEFAULT_BUDGET), "$.budget", 1)
        if seed is None:
            seed = _as_int(data.get("seed", 0), "$.seed", 0)
        job = _Job(tower, {}, budget, seed)
        for name, rows in _as_dict(data.get("codes", {}), "$.codes").items():
            job.codes[name] = _parse_code(tower, rows, f"$.codes.{name}")
        commands = _as_list(_req(data, "commands", "$"), "$.commands")
    except SumRankError as exc:
        return {"error": _error_entry(exc)}, exit_code_for(exc)

    results = []
    status = 0
    for i, entry in enumerate(commands):
        path = f"$.commands[{i}]"
        try:
            entry = _as_dict(entry, path)
            name = _as_str(_req(entry, "command", path), f"{path}.command")
            if name not in _COMMANDS:
                raise SchemaError(f"unknown command '{name}'", f"{path}.command")
            result = _COMMANDS[name](job, entry, path)
            results.append({"command": name, "ok": True, "result": result})
        except SumRankError as exc:
            results.append(
                {
                    "command": entry.get("command", "?")
                    if isinstance(entry, dict)
                    else "?",
                    "ok": False,
                    "error": _error_entry(exc),
                }
            )
            if status == 0:
                status = exit_code_for(exc)
    return {"results": results}, status


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sumrank",
        description="Run a batch of sum-rank code analyses from a JSON job file.",
    )
    parser.add_argument(
        "jobfile",
        nargs="?",
        default="-",
        help="path to the JSON job, or - for stdin (default)",
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=None,
        help="override every enumeration guard in the job",
    )
    parser.add_argument(
        "--seed", type=int, default=None, help="seed for sampled property checks"
    )
    opts = parser.parse_args(argv)
    if opts.jobfile == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(opts.jobfile, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            report = {"error": {"kind": "SchemaError", "code": 2, "message": str(exc)}}
            print(json.dumps(report, indent=2, sort_keys=True))
            return 2
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        report = {"error": {"kind": "SchemaError", "code": 2, "message": str(exc)}}
        print(json.dumps(report, indent=2, sort_keys=True))
        return 2
    report, status = run_job(data, budget=opts.budget, seed=opts.seed)
    print(json.dumps(report, indent=2, sort_keys=True))
    return status


if __name__ == "__main__":
    sys.exit(main())
