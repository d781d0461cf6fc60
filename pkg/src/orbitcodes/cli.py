"""Command-line surface: reproducible analyses, censuses, and oracle runs.

Exit codes: 0 all checks pass, 1 verification mismatch, 2 usage or parse
error, 3 work budget exceeded.  Output is deterministic for a fixed command
line: JSON payloads have sorted keys, CSV columns are fixed, and the
provenance header (field, modulus, tool version) stays outside the payload so
golden-file comparisons can diff payloads alone.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .equivalence import (
    frobenius_isometry_test,
    frobenius_structure,
    galois_action_oracle,
    orbit_canon_set,
    orbit_member,
)
from .field import TABLE_LIMIT, Field, build_field
from .linear_set import fU_from_linear_set, linear_set_bounds, uxu_weight_distribution
from .orbit import (
    classify_dim3,
    fractions_oracle,
    orbit_profile,
    q2_shift_count,
    sidon_test,
    verify_structure,
)
from .subspace import intersect_dim, span
from .usg import (
    BudgetExceededError,
    UsGammaParams,
    census,
    closed_form_counts,
    contains_q2_shift,
    enumerate_representatives,
    falpha_kernel_dim,
    make_usg,
    split_prime_power,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

DEFAULT_BUDGET = 10**7

#: Fixed CSV column order for census rows; absent values print empty.
CENSUS_COLUMNS = (
    "s",
    "ell",
    "classification",
    "contains_q2_shift",
    "frobenius_group_order",
    "frobenius_orbit_size",
    "distance",
    "lambda2",
    "r_param",
)


class UsageError(ValueError):
    pass


# -- argument plumbing -------------------------------------------------------


def _add_field_args(sp, need_k=False, p_required=True):
    sp.add_argument("--p", type=int, required=p_required, help="characteristic (prime)")
    sp.add_argument("--h", type=int, default=1, help="degree of F_q over F_p (default 1)")
    if need_k:
        sp.add_argument("--k", type=int, required=True, help="subspace dimension; ambient degree n = 2k")
    else:
        sp.add_argument("--n", type=int, help="ambient extension degree over F_q")
        sp.add_argument("--k", type=int, help="alternative to --n: sets n = 2k")
    sp.add_argument(
        "--modulus",
        type=str,
        default=None,
        help="defining polynomial as comma-separated F_p coefficients c0,...,c_hn (lowest first)",
    )


def _add_output_args(sp):
    sp.add_argument("--format", choices=("json", "csv", "table"), default="json")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max intersection computations")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for heavy verification")


def _resolve_n(args) -> int:
    n = getattr(args, "n", None)
    k = getattr(args, "k", None)
    if n is None and k is None:
        raise UsageError("one of --n or --k is required")
    if n is not None and k is not None and n != 2 * k:
        raise UsageError(f"--n {n} and --k {k} conflict (expected n = 2k)")
    return n if n is not None else 2 * k


def _parse_modulus(args):
    if args.modulus is None:
        return None
    try:
        return tuple(int(c) for c in args.modulus.split(","))
    except ValueError as exc:
        raise UsageError(f"bad --modulus: {exc}") from None


def _make_field(args, n: int) -> Field:
    if args.p is None:
        raise UsageError("--p is required")
    try:
        return build_field(args.p, args.h, n, _parse_modulus(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subspace input ----------------------------------------------------------


def read_subspace_file(path: str):
    """Field-descriptor header (one JSON object line) then one element per line.

    Returns (header dict, list of element strings).  Blank lines and lines
    starting with '#' are skipped.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise UsageError(f"{path}: empty subspace file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: bad field descriptor header: {exc}") from None
    if not isinstance(header, dict) or "p" not in header:
        raise UsageError(f"{path}: header must be an object with at least 'p', 'h', 'n'")
    return header, lines[1:]


def _load_subspace(args):
    """Resolve (field, subspace) from --file or --gens plus field flags."""
    gens_text = None
    header = {}
    if args.file:
        header, gens_text = read_subspace_file(args.file)
        if args.gens:
            raise UsageError("--file and --gens are mutually exclusive")
    elif args.gens:
        gens_text = [g.strip() for g in args.gens.split(",") if g.strip()]
    else:
        raise UsageError("a subspace is required: --file or --gens")

    p = header.get("p", args.p)
    h = header.get("h", args.h)
    n = header.get("n")
    if n is None:
        n = _resolve_n(args)
    if p is None:
        raise UsageError("--p is required when the file header does not fix it")
    modulus = header.get("modulus") or _parse_modulus(args)
    try:
        field = build_field(p, h, n, modulus)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ground = args.ground_deg or header.get("ground_deg") or field.h
    try:
        gens = [field.parse(g) for g in gens_text]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    gens = [g for g in gens if g is not None]
    if not gens:
        raise UsageError("the zero subspace has no orbit; give a nonzero generator")
    return field, span(field, gens, ground)


# -- output ------------------------------------------------------------------


def _provenance(command: str, field_desc: dict | None) -> dict:
    prov = {"tool": f"orbitcodes {__version__}", "command": command}
    if field_desc:
        prov["field"] = field_desc
    return prov


def _flatten(prefix: str, value, out: list):
    if isinstance(value, dict):
        for key in sorted(value, key=str):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], out)
    elif isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            out.append((prefix, ";".join(str(v) for v in value)))
        else:
            for i, v in enumerate(value):
                _flatten(f"{prefix}.{i}", v, out)
    else:
        out.append((prefix, value))


def _format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(command: str, payload: dict, fmt: str, field_desc: dict | None = None, out=None) -> None:
    out = out or sys.stdout
    prov = _provenance(command, field_desc)
    if fmt == "json":
        print(json.dumps({"payload": payload, "provenance": prov}, sort_keys=True, indent=2), file=out)
        return
    prov_pairs: list = []
    _flatten("", prov, prov_pairs)
    for key, val in sorted(prov_pairs):
        print(f"# {key}: {_format_cell(val)}", file=out)
    rows = payload.get("rows")
    rest = {k: v for k, v in payload.items() if k != "rows"} if rows is not None else payload
    pairs = []
    _flatten("", rest, pairs)
    if fmt == "csv":
        print("key,value", file=out)
        for key, val in pairs:
            cell = _format_cell(val)
            if "," in cell or '"' in cell:
                cell = '"' + cell.replace('"', '""') + '"'
            print(f"{key},{cell}", file=out)
        if rows is not None:
            print(",".join(CENSUS_COLUMNS), file=out)
            for row in rows:
                print(",".join(_format_cell(row.get(c)) for c in CENSUS_COLUMNS), file=out)
    else:
        width = max((len(k) for k, _ in pairs), default=0)
        for key, val in pairs:
            print(f"{key.ljust(width)}  {_format_cell(val)}", file=out)
        if rows is not None:
            cols = [c for c in CENSUS_COLUMNS if any(c in row for row in rows)] or list(CENSUS_COLUMNS)
            widths = [max(len(c), max((len(_format_cell(r.get(c))) for r in rows), default=0)) for c in cols]
            print("  ".join(c.ljust(w) for c, w in zip(cols, widths)), file=out)
            for row in rows:
                print("  ".join(_format_cell(row.get(c)).ljust(w) for c, w in zip(cols, widths)), file=out)


def _collect_statuses(payload) -> list[str]:
    found = []
    if isinstance(payload, dict):
        if "status" in payload and isinstance(payload["status"], str):
            found.append(payload["status"])
        for v in payload.values():
            found.extend(_collect_statuses(v))
    elif isinstance(payload, (list, tuple)):
        for v in payload:
            found.extend(_collect_statuses(v))
    return found


def _exit_from_checks(payload) -> int:
    return EXIT_MISMATCH if "fail" in _collect_statuses(payload) else EXIT_OK


# -- commands ----------------------------------------------------------------


def cmd_field(args) -> int:
    n = _resolve_n(args)
    field = _make_field(args, n)
    payload = {
        "descriptor": field.descriptor(),
        "q": field.q,
        "order": field.order,
        "units": field.N,
        "omega": field.fmt(field.omega),
        "table_limit": TABLE_LIMIT,
    }
    emit("field", payload, args.format, field.descriptor())
    return EXIT_OK


def cmd_analyze(args) -> int:
    field, u = _load_subspace(args)
    stab_units = field.p ** u.stabilizer_degree() - 1
    sweep = field.N // stab_units
    if sweep > args.budget:
        raise BudgetExceededError(f"orbit sweep needs {sweep} intersections, budget is {args.budget}")
    pr = orbit_profile(u)
    dist = uxu_weight_distribution(u, pr)
    checks = list(verify_structure(u, pr))
    bounds = linear_set_bounds(dist, pr.f_u)
    payload = {
        "profile": pr.to_dict(),
        "weight_distribution": dist.to_dict(),
        "f_u_from_points": fU_from_linear_set(dist),
        "bounds": bounds,
        "checks": checks,
    }
    if u.dim == 3 and u.ground_deg == field.h and pr.full_length:
        try:
            payload["dim3_case"] = classify_dim3(u, pr)
        except ValueError as exc:
            payload["dim3_case"] = None
            payload["checks"] = checks + [
                {"name": "dim3_classification", "status": "fail", "detail": str(exc)}
            ]
    emit("analyze", payload, args.format, field.descriptor())
    return _exit_from_checks(payload)


def cmd_census(args) -> int:
    q = args.p**args.h
    counts_only = args.p ** (args.h * 2 * args.k) > TABLE_LIMIT
    if counts_only and args.verify != "none":
        raise BudgetExceededError(
            f"field of size {q}^{2 * args.k} exceeds the table limit; "
            "only --verify none (counts-only) is possible"
        )
    field = None
    field_desc = None
    if args.verify != "none":
        field = _make_field(args, 2 * args.k)
        field_desc = field.descriptor()
    elif not counts_only:
        field_desc = {"p": args.p, "h": args.h, "n": 2 * args.k}
    result = census(
        q,
        args.k,
        verify=args.verify,
        budget=args.budget,
        field=field,
        counts_only=counts_only,
        jobs=args.jobs,
    )
    emit("census-usg", result, args.format, field_desc)
    return _exit_from_checks(result)


def cmd_frobenius(args) -> int:
    try:
        report = frobenius_structure(args.p**args.h, args.k)
    except AssertionError as exc:
        print(f"inconsistent Frobenius structure: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    payload = report.to_dict()
    payload["checks"] = [
        {
            "name": "orbit_mass",
            "status": "pass",
            "detail": f"{report.total_codes} codes tiled by {sum(report.histogram.values())} orbits",
        }
    ]
    emit("frobenius", payload, args.format)
    return _exit_from_checks(payload)


# -- oracle runs -------------------------------------------------------------


def _oracle_sidon(args):
    field = _make_field(args, _resolve_n(args))
    pairs = field.N * (field.N - 1) // 2
    if pairs > args.budget:
        raise BudgetExceededError(f"sidon oracle needs {pairs} spans, budget is {args.budget}")
    seen = set()
    subs = []
    for a in range(field.N):
        for b in range(a + 1, field.N):
            u = span(field, [a, b])
            if u.dim != 2 or u.rows in seen:
                continue
            seen.add(u.rows)
            subs.append(u)
    mismatches = []
    sidon_count = 0
    for u in subs:
        fast = sidon_test(u)
        pr = orbit_profile(u)
        brute = pr.full_length and pr.distance == 2 * u.dim - 2
        if fast:
            sidon_count += 1
        if fast != brute:
            mismatches.append(f"U=span({','.join(field.fmt(g) for g in u.basis_logs())}): "
                              f"quadruple test {fast}, orbit says {brute}")
    return field, {"instances": len(subs), "sidon_count": sidon_count}, mismatches


def _need_k_field(args) -> Field:
    if args.k is None:
        raise UsageError("this oracle needs --k (ambient degree n = 2k)")
    if args.n is not None and args.n != 2 * args.k:
        raise UsageError(f"--n {args.n} and --k {args.k} conflict (expected n = 2k)")
    return _make_field(args, 2 * args.k)


def _oracle_falpha(args):
    field = _need_k_field(args)
    k = args.k
    q = field.q
    reps = list(enumerate_representatives(q, k))
    work = len(reps) * field.N
    if work > args.budget:
        raise BudgetExceededError(f"falpha oracle needs {work} kernel computations, budget is {args.budget}")
    mismatches = []
    total = 0
    for params in reps:
        u = make_usg(field, params)
        for alpha in range(field.N):
            total += 1
            fast = falpha_kernel_dim(field, params, alpha)
            brute = intersect_dim(u, u.shift(alpha))
            if fast != brute:
                mismatches.append(f"(s={params.s}, ell={params.ell}, alpha=w^{alpha}): kernel {fast}, intersection {brute}")
    return field, {"instances": total}, mismatches


def _oracle_fractions(args):
    import random

    if args.file or args.gens:
        field, u = _load_subspace(args)
        subs = [u]
    else:
        field = _make_field(args, _resolve_n(args))
        rng = random.Random(args.seed)
        dim = args.dim or 3
        subs = []
        for _ in range(args.samples):
            gens = [rng.randrange(field.N) for _ in range(dim)]
            u = span(field, gens)
            if u.dim > 0 and u.fp_dim < field.m:
                subs.append(u)
    work = sum(field.N // (field.p ** s.stabilizer_degree() - 1) for s in subs)
    if work > args.budget:
        raise BudgetExceededError(f"fractions oracle needs {work} intersections, budget is {args.budget}")
    mismatches = []
    for u in subs:
        pr = orbit_profile(u)
        direct = fractions_oracle(u)
        stab_points = (field.p**pr.stab_deg - 1) // (field.q - 1)
        from_lambda = stab_points + sum(pr.lam[1:])
        from_points = fU_from_linear_set(uxu_weight_distribution(u, pr))
        if not direct == from_lambda == from_points == pr.f_u:
            mismatches.append(
                f"U=span({','.join(field.fmt(g) for g in u.basis_logs())}): "
                f"direct {direct}, lambda route {from_lambda}, point route {from_points}, profile {pr.f_u}"
            )
    return field, {"instances": len(subs)}, mismatches


def _oracle_galois(args):
    field = _need_k_field(args)
    k = args.k
    q = field.q
    reps = list(enumerate_representatives(q, k))
    hn = field.m
    work = len(reps) * (field.N // (q - 1)) + len(reps) * len(reps) * hn
    if work > args.budget:
        raise BudgetExceededError(f"galois oracle needs ~{work} operations, budget is {args.budget}")
    subs = {(r.s, r.ell): make_usg(field, r) for r in reps}
    canon = {key: orbit_canon_set(v) for key, v in subs.items()}
    mismatches = []
    total = 0
    for r1 in reps:
        u = subs[(r1.s, r1.ell)]
        for i in range(hn):
            img = galois_action_oracle(u, i)
            for r2 in reps:
                total += 1
                fast = frobenius_isometry_test(r1, r2, i)
                brute = orbit_member(img, subs[(r2.s, r2.ell)], canon[(r2.s, r2.ell)])
                if fast != brute:
                    mismatches.append(
                        f"sigma_p^{i} of (s={r1.s}, ell={r1.ell}) vs (s={r2.s}, ell={r2.ell}): "
                        f"criterion {fast}, action {brute}"
                    )
    return field, {"instances": total}, mismatches


def _oracle_shift(args):
    field = _need_k_field(args)
    k = args.k
    q = field.q
    reps = list(enumerate_representatives(q, k))
    work = len(reps) * (field.N // (q * q - 1) + field.N // (q - 1))
    if work > args.budget:
        raise BudgetExceededError(f"shift oracle needs ~{work} membership tests, budget is {args.budget}")
    mismatches = []
    for params in reps:
        fast = contains_q2_shift(params)
        brute = q2_shift_count(make_usg(field, params)) > 0
        if fast != brute:
            mismatches.append(f"(s={params.s}, ell={params.ell}): criterion {fast}, search {brute}")
    return field, {"instances": len(reps)}, mismatches


_ORACLES = {
    "sidon": _oracle_sidon,
    "falpha": _oracle_falpha,
    "fractions": _oracle_fractions,
    "galois": _oracle_galois,
    "shift": _oracle_shift,
}


def cmd_oracle(args) -> int:
    field, extra, mismatches = _ORACLES[args.which](args)
    payload = {
        "which": args.which,
        "mismatch_count": len(mismatches),
        "mismatches": mismatches,
        "checks": [
            {
                "name": f"oracle_{args.which}",
                "status": "pass" if not mismatches else "fail",
                "detail": f"{len(mismatches)} mismatches over {extra.get('instances', 0)} instances",
            }
        ],
    }
    payload.update(extra)
    emit("oracle", payload, args.format, field.descriptor())
    return _exit_from_checks(payload)


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="orbitcodes",
        description="Cyclic orbit subspace codes: analysis, census, and verification oracles.",
    )
    ap.add_argument("--version", action="version", version=f"orbitcodes {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field", help="build a field tower and print its descriptor")
    _add_field_args(sp)
    _add_output_args(sp)
    sp.set_defaults(func=cmd_field)

    sp = sub.add_parser("analyze", help="full orbit profile, weight distribution, and checks for one subspace")
    _add_field_args(sp, p_required=False)
    sp.add_argument("--file", type=str, help="subspace file: JSON header line, then one element per line")
    sp.add_argument("--gens", type=str, help="comma-separated generators, e.g. 'w^0,w^1,w^5'")
    sp.add_argument("--ground-deg", type=int, default=None, help="F_p-degree of the ground field (default h)")
    _add_output_args(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("census-usg", help="classify the whole twisted-embedding family for q, k")
    _add_field_args(sp, need_k=True)
    sp.add_argument("--verify", choices=("none", "fast", "brute"), default="none")
    _add_output_args(sp)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("frobenius", help="Frobenius stabilizer structure of the family, arithmetic only")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--h", type=int, default=1)
    sp.add_argument("--k", type=int, required=True)
    _add_output_args(sp)
    sp.set_defaults(func=cmd_frobenius)

    sp = sub.add_parser("oracle", help="run an independent brute-force oracle against the fast path")
    sp.add_argument("--which", choices=sorted(_ORACLES), required=True)
    _add_field_args(sp, p_required=False)
    sp.add_argument("--file", type=str, help="subspace file for the fractions oracle")
    sp.add_argument("--gens", type=str, help="generators for the fractions oracle")
    sp.add_argument("--ground-deg", type=int, default=None)
    sp.add_argument("--samples", type=int, default=40, help="random subspaces when no input is given")
    sp.add_argument("--dim", type=int, default=None, help="generator count for random subspaces")
    sp.add_argument("--seed", type=int, default=0)
    _add_output_args(sp)
    sp.set_defaults(func=cmd_oracle)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
