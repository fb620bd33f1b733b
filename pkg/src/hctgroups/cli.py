"""Command-line interface.

    hctgroups verify <n> [--lemmas] [--json] [--force]
    hctgroups bridges <n> [--json]
    hctgroups decompose <n> <perm> [--trust] [--json] [--force]
    hctgroups connect <n> <a> <b> [--json]
    hctgroups oracle <n> [--cap K] [--json] [--force]

Exit status: 0 when every requested check passes, 2 for bad input or an
unmet precondition, 3 when a mathematical assertion is falsified.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from . import bridges as br
from .bsgs import NotAMemberError, build_chain, is_k_transitive
from .gens import combined_generators, ct_family_generators
from .oracle import DEFAULT_CAP, enumerate_group, max_transitivity
from .perm import PermutationParseError, evaluate, parse_permutation
from .residue import GapConditionError, Parameters

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_FALSIFIED = 3

#: Largest n accepted without --force.
MAX_N = 8
#: Largest degree the brute-force oracle accepts without --force.
ORACLE_MAX_DEGREE = 12


class PreconditionError(Exception):
    pass


@dataclass
class VerificationReport:
    n: int
    N: int
    prime_power_case: bool
    p: Optional[int]
    k: Optional[int]
    M: Optional[int]
    generator_count: int
    group_order: str
    expected_order: str
    theorem_holds: bool
    six_transitive: Optional[bool] = None
    bridge_summary: list = field(default_factory=list)
    pier_exclusions: Optional[dict] = None
    stabilizer_orbit: Optional[dict] = None
    timings_ms: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        checks = [self.theorem_holds]
        if self.six_transitive is not None:
            checks.append(self.six_transitive)
        if self.stabilizer_orbit is not None:
            checks.append(self.stabilizer_orbit["transitive"])
        return all(checks)

    def as_record(self) -> dict:
        return asdict(self)


class _Timer:
    def __init__(self, sink: dict, name: str):
        self.sink, self.name = sink, name

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.sink[self.name] = round((time.perf_counter() - self.t0) * 1000, 1)


def _check_n(n: int, force: bool) -> Parameters:
    if n < 2:
        raise PreconditionError(f"n must be at least 2, got {n}")
    if n > MAX_N and not force:
        raise PreconditionError(
            f"n={n} exceeds the default limit {MAX_N} (degree lcm(2..{n}) = "
            f"{Parameters.from_n(n).N}); pass --force to run anyway"
        )
    return Parameters.from_n(n)


def cmd_verify(n: int, lemmas: bool = False, force: bool = False) -> VerificationReport:
    params = _check_n(n, force)
    timings: dict = {}
    with _Timer(timings, "generators"):
        gens = ct_family_generators(n, params.N)
    try:
        with _Timer(timings, "chain"):
            chain = build_chain(gens)
    except MemoryError:
        raise PreconditionError(
            f"out of memory building the chain at degree {params.N}; try a smaller n"
        ) from None
    order = chain.order()
    expected = math.factorial(params.N)
    report = VerificationReport(
        n=n,
        N=params.N,
        prime_power_case=params.has_gap,
        p=params.p,
        k=params.k,
        M=params.M,
        generator_count=len(gens),
        group_order=str(order),
        expected_order=str(expected),
        theorem_holds=order == expected,
        timings_ms=timings,
    )
    if lemmas and params.has_gap:
        with _Timer(timings, "bridges"):
            report.bridge_summary = [b.as_record() for b in br.all_bridges(params)]
            report.pier_exclusions = br.pier_exclusions(params).check().as_record()
        with _Timer(timings, "stabilizer_orbit"):
            st = br.stabilizer_orbit_report(params, [2])
            report.stabilizer_orbit = {
                "delta": st.delta,
                "fixed": st.fixed,
                "orbit_size": st.orbit_size,
                "complement_size": st.complement_size,
                "transitive": st.transitive,
            }
        with _Timer(timings, "six_transitive"):
            report.six_transitive = is_k_transitive(combined_generators(params), 6)
    return report


def cmd_bridges(n: int) -> dict:
    params = Parameters.from_n(n).require_gap()
    return {
        "n": n,
        "bridges": [b.as_record() for b in br.all_bridges(params)],
        "pier_exclusions": br.pier_exclusions(params).check().as_record(),
    }


def cmd_decompose(n: int, text: str, trust: bool = False, force: bool = False) -> dict:
    params = _check_n(n, force)
    g = parse_permutation(text, params.N)
    gens = ct_family_generators(n, params.N)
    chain = build_chain(gens)
    full = chain.order() == math.factorial(params.N)
    if not full and not trust:
        raise PreconditionError(
            f"the generators of n={n} do not give the full symmetric group; "
            "pass --trust to decompose members anyway"
        )
    try:
        word = chain.decompose(g)
    except NotAMemberError as exc:
        if full:
            raise br.FalsifiedClaim(str(exc), {"perm": text}) from None
        raise PreconditionError(str(exc)) from None
    check = evaluate(word, gens) == g
    return {
        "n": n,
        "degree": params.N,
        "word": [gens.labels[i] + ("^-1" if inv else "") for i, inv in word],
        "length": len(word),
        "check": check,
    }


def cmd_connect(n: int, alpha: int, beta: int) -> dict:
    params = Parameters.from_n(n).require_gap()
    for x in (alpha, beta):
        if not 0 <= x < params.degree:
            raise PreconditionError(f"point {x} outside [0, {params.degree})")
    gens = combined_generators(params)
    word = br.connect(params, alpha, beta)
    image = alpha
    for i, inv in word:
        image = gens[i](image)
    return {
        "n": n,
        "alpha": alpha,
        "beta": beta,
        "word": [gens.labels[i] for i, _ in word],
        "length": len(word),
        "check": image == beta,
    }


def cmd_oracle(n: int, cap: int = DEFAULT_CAP, force: bool = False) -> dict:
    params = _check_n(n, force)
    if params.N > ORACLE_MAX_DEGREE and not force:
        raise PreconditionError(
            f"degree {params.N} is too large for brute-force enumeration "
            f"(limit {ORACLE_MAX_DEGREE}); pass --force to run anyway"
        )
    grp = enumerate_group(ct_family_generators(n, params.N), cap=cap)
    out = {"n": n, "degree": params.N, "cap": cap, "capped": grp.capped}
    if grp.capped:
        out["order"] = None
        out["elements_seen"] = len(grp)
    else:
        out["order"] = str(grp.order)
        out["max_transitivity"] = max_transitivity(grp)
    return out


def _print_table(rows: Sequence[tuple]) -> None:
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k.ljust(width)}  {v}")


def _show_verify(rep: VerificationReport) -> None:
    rows = [("n", rep.n), ("N", rep.N), ("prime power case", rep.prime_power_case)]
    if rep.prime_power_case:
        rows += [("p, k, M", f"{rep.p}, {rep.k}, {rep.M}")]
    rows += [
        ("generators", rep.generator_count),
        ("group order", rep.group_order),
        ("N!", rep.expected_order),
        ("order = N!", rep.theorem_holds),
    ]
    if rep.stabilizer_orbit is not None:
        so = rep.stabilizer_orbit
        rows.append(("stabilizer of {2}", f"orbit {so['orbit_size']} of {so['complement_size']}"))
    if rep.six_transitive is not None:
        rows.append(("6-transitive", rep.six_transitive))
    for name, ms in rep.timings_ms.items():
        rows.append((f"time {name}", f"{ms} ms"))
    _print_table(rows)
    if rep.bridge_summary:
        print()
        _show_bridges(rep.bridge_summary)
    if not rep.theorem_holds and rep.n <= 3:
        print("\nnote: equality with N! is only expected for n > 3")


def _show_bridges(records: list) -> None:
    print(f"{'i':>3} {'j':>5}  {'kind':<17} {'left':>4} {'right':>5}  pier")
    for r in records:
        pier = "" if r["pier"] is None else r["pier"]
        print(f"{r['i']:>3} {r['j']:>5}  {r['kind']:<17} {r['overlap_left']:>4} "
              f"{r['overlap_right']:>5}  {pier}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hctgroups", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="compare the group order with N!")
    v.add_argument("n", type=int)
    v.add_argument("--lemmas", action="store_true",
                   help="also run the degree N*p checks (bridges, stabilizer orbit, 6-transitivity)")
    v.add_argument("--json", action="store_true")
    v.add_argument("--force", action="store_true", help=f"allow n > {MAX_N}")

    b = sub.add_parser("bridges", help="list the bridges and pier exclusions")
    b.add_argument("n", type=int)
    b.add_argument("--json", action="store_true")

    d = sub.add_parser("decompose", help="write a permutation of [0, N) over the generators")
    d.add_argument("n", type=int)
    d.add_argument("perm", help='cycle notation "(0 1 2)(3 4)" or image list "[1,0,2]"')
    d.add_argument("--trust", action="store_true",
                   help="decompose even if the group is not the full symmetric group")
    d.add_argument("--json", action="store_true")
    d.add_argument("--force", action="store_true", help=f"allow n > {MAX_N}")

    c = sub.add_parser("connect", help="word carrying point a to point b at degree N*p")
    c.add_argument("n", type=int)
    c.add_argument("a", type=int)
    c.add_argument("b", type=int)
    c.add_argument("--json", action="store_true")

    o = sub.add_parser("oracle", help="enumerate the group by breadth-first search")
    o.add_argument("n", type=int)
    o.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help=f"stop after this many elements (default {DEFAULT_CAP}, "
                        "env HCTGROUPS_ORACLE_CAP)")
    o.add_argument("--json", action="store_true")
    o.add_argument("--force", action="store_true")
    return ap


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _run(args) -> int:
    if args.command == "verify":
        rep = cmd_verify(args.n, lemmas=args.lemmas, force=args.force)
        if args.lemmas and not rep.prime_power_case:
            print(f"note: n+1 = {args.n + 1} divides N, so there is no degree N*p step",
                  file=sys.stderr)
        if args.json:
            _dump(rep.as_record())
        else:
            _show_verify(rep)
        return EXIT_OK if rep.ok else EXIT_FALSIFIED

    if args.command == "bridges":
        out = cmd_bridges(args.n)
        if args.json:
            _dump(out)
        else:
            _show_bridges(out["bridges"])
            pe = out["pier_exclusions"]
            print(f"\nleft pier hits in E: {pe['left_hits']}")
            print(f"right pier hits in E: {len(pe['right_hits'])} (excluded: {pe['excluded']})")
        return EXIT_OK

    if args.command == "decompose":
        out = cmd_decompose(args.n, args.perm, trust=args.trust, force=args.force)
        if args.json:
            _dump(out)
        else:
            print(" * ".join(out["word"]) if out["word"] else "(empty word)")
            print(f"length {out['length']}; re-evaluation {'OK' if out['check'] else 'FAILED'}")
        return EXIT_OK if out["check"] else EXIT_FALSIFIED

    if args.command == "connect":
        out = cmd_connect(args.n, args.a, args.b)
        if args.json:
            _dump(out)
        else:
            print(" * ".join(out["word"]) if out["word"] else "(empty word)")
            status = "OK" if out["check"] else "FAILED"
            print(f"length {out['length']}; maps {args.a} to {args.b}: {status}")
        return EXIT_OK if out["check"] else EXIT_FALSIFIED

    if args.command == "oracle":
        out = cmd_oracle(args.n, cap=args.cap, force=args.force)
        if args.json:
            _dump(out)
        elif out["capped"]:
            print(f"more than {out['cap']} elements (the cap); order unknown")
        else:
            print(f"order {out['order']}; {out['max_transitivity']}-transitive "
                  f"on {out['degree']} points")
        return EXIT_OK
    raise AssertionError(args.command)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except br.FalsifiedClaim as exc:
        print(f"FALSIFIED: {exc}", file=sys.stderr)
        print(json.dumps({"counterexample": exc.counterexample}, sort_keys=True, default=str))
        return EXIT_FALSIFIED
    except (PreconditionError, GapConditionError, PermutationParseError,
            br.DeltaPreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
