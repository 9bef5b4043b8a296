"""Batch command-line front end.

Three subcommands: ``check`` runs the law suite (plus optional assertion
files) for one space/truncation configuration and emits JSON lines or a
table; ``eval`` parses and evaluates one expression against JSON bindings;
``repro`` replays the named scripted demonstrations with pinned seeds.

Exit codes: 0 on success (counterexamples predicted by the theory are
reported but do not fail the run), 1 on an unexpected refutation, 2 on a
configuration or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .dsl import (
    EvalContext,
    check_assertion,
    evaluate,
    free_variables,
    load_assertion_text,
    parse,
)
from .engine import (
    LawContext,
    archimedean_check,
    band,
    band_component,
    band_component_oracle,
    catalog,
    check_thm33_sup,
    default_certified_fixtures,
    default_limit_candidates,
    derive_seed,
    expected_violations,
    in_unitized_band,
    project_band_unitized,
    repro_c00_ruc,
    repro_example43,
    run_suite,
    UnitizedBand,
)
from .errors import DslError, TrunclatError
from .report import REFUTED, LawReport, render_table, reports_to_jsonl
from .sampling import SampleGen
from .spaces import (
    FinitePointwise,
    IdentityLine,
    LexPlane,
    SparseSeq,
    element_from_json,
    element_to_json,
    fp_const,
    leq,
    scale,
    space_from_json,
    sparse,
    zero,
)
from .truncation import (
    IdentityTruncation,
    LexMeetZeroOne,
    MeetWithOne,
    MeetWithUnit,
    SymbolicPass,
    SymbolicViolation,
    check_tau1,
    check_tau2,
    check_tau3,
    truncate,
    truncation,
    truncation_from_json,
)
from .unitization import abs_u, leq_u, meet_u, truncate_u, unitize, unitized_from_json, unitized_to_json

DEFAULT_SEED = 42
DEFAULT_TRIALS = 200

REPRO_IDS = (
    "lex-trunc-archimedean",
    "identity-trunc-tau3",
    "c00-ruc",
    "unitization-not-ruc",
    "thm33-sup",
    "band-decomposition",
)


class CliError(Exception):
    pass


def _parse_space(text: str | None):
    if text is None:
        return SparseSeq()
    text = text.strip()
    try:
        if text.startswith("{"):
            return space_from_json(json.loads(text))
    except (json.JSONDecodeError, TrunclatError) as exc:
        raise CliError(f"bad space descriptor: {exc}") from exc
    name, _, arg = text.partition(":")
    if name == "sparse_seq":
        return SparseSeq()
    if name == "lex_plane":
        return LexPlane()
    if name == "identity_line":
        return IdentityLine()
    if name == "finite_pointwise":
        try:
            return FinitePointwise(int(arg) if arg else 3)
        except ValueError as exc:
            raise CliError(f"bad dimension {arg!r}") from exc
    raise CliError(f"unknown space {text!r}")


def _parse_trunc(space, text: str | None):
    if text is None:
        defaults = {
            SparseSeq: MeetWithOne(),
            LexPlane: LexMeetZeroOne(),
            IdentityLine: IdentityTruncation(),
        }
        if type(space) in defaults:
            return truncation(space, defaults[type(space)])
        return truncation(space, MeetWithUnit(fp_const(space.dim, 1)))
    text = text.strip()
    try:
        if text.startswith("{"):
            return truncation_from_json(space, json.loads(text))
        if text == "meet_with_one":
            return truncation(space, MeetWithOne())
        if text == "lex_meet_zero_one":
            return truncation(space, LexMeetZeroOne())
        if text == "identity":
            return truncation(space, IdentityTruncation())
        if text == "meet_with_unit":
            if isinstance(space, FinitePointwise):
                return truncation(space, MeetWithUnit(fp_const(space.dim, 1)))
            raise CliError(
                "meet_with_unit needs an explicit unit on this space; pass a JSON descriptor"
            )
    except (json.JSONDecodeError, ValueError, TrunclatError) as exc:
        raise CliError(f"bad truncation descriptor: {exc}") from exc
    raise CliError(f"unknown truncation {text!r}")


def _default_seed() -> int:
    env = os.environ.get("TRUNCLAT_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError as exc:
        raise CliError(f"TRUNCLAT_SEED must be an integer, got {env!r}") from exc


def _run_assertion_file(path: str, cli_ctx: EvalContext, seed: int, trials: int) -> list[LawReport]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            loaded = load_assertion_text(handle.read())
    except OSError as exc:
        raise CliError(f"cannot read assertions file: {exc}") from exc
    except TrunclatError as exc:
        raise CliError(f"bad assertions file: {exc}") from exc
    ctx = loaded.ctx or cli_ctx
    reports = []
    for lineno, assertion in loaded.assertions:
        law_id = f"assert:{lineno:03d}"
        gen = SampleGen(derive_seed(seed, law_id), ctx.space)
        names = sorted(free_variables(assertion.lhs) | free_variables(assertion.rhs))
        witness = None
        for _ in range(trials):
            env = {
                name: (gen.unitized() if ctx.unitized else gen.element()) for name in names
            }
            try:
                outcome = check_assertion(assertion, env, ctx)
            except DslError as exc:
                raise CliError(f"assertion at line {lineno} failed to evaluate: {exc}") from exc
            if not outcome.holds:
                witness = {
                    name: (unitized_to_json(v) if ctx.unitized else element_to_json(v))
                    for name, v in env.items()
                }
                break
        if witness is None:
            reports.append(LawReport.passed(law_id, trials, seed))
        else:
            reports.append(LawReport.refuted(law_id, trials, seed, witness))
    return reports


def cmd_check(args) -> int:
    space = _parse_space(args.space)
    trunc = _parse_trunc(space, args.trunc)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.trials < 1:
        raise CliError("--trials must be >= 1")
    reports = run_suite(space, trunc, seed, args.trials)
    if args.assertions:
        ctx = EvalContext(space, trunc, unitized=False)
        reports = reports + _run_assertion_file(args.assertions, ctx, seed, args.trials)
    expected = expected_violations(LawContext(space, trunc))
    if args.format == "json":
        output = reports_to_jsonl(reports)
    else:
        output = render_table(reports, expected)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(output)
    else:
        sys.stdout.write(output)
    unexpected = [r for r in reports if r.verdict == REFUTED and r.law_id not in expected]
    inconclusive = [r for r in reports if r.verdict == "inconclusive"]
    if inconclusive:
        print(
            f"note: {len(inconclusive)} inconclusive report(s) (bounded search exhausted)",
            file=sys.stderr,
        )
    return 1 if unexpected else 0


def cmd_eval(args) -> int:
    space = _parse_space(args.space)
    trunc = _parse_trunc(space, args.trunc)
    ctx = EvalContext(space, trunc, unitized=args.unitize)
    env = {}
    for binding in args.bind or ():
        name, sep, payload = binding.partition("=")
        if not sep:
            raise CliError(f"--bind needs name=JSON, got {binding!r}")
        try:
            obj = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise CliError(f"bad JSON for binding {name!r}: {exc}") from exc
        if args.unitize and isinstance(obj, dict) and "e" in obj and "lambda" in obj:
            env[name] = unitized_from_json(space, obj)
        else:
            env[name] = element_from_json(space, obj)
    term = parse(args.expr)
    value = evaluate(term, env, ctx)
    encoded = unitized_to_json(value) if args.unitize else element_to_json(value)
    print(json.dumps(encoded, separators=(",", ":")))
    return 0


# ---------------------------------------------------------------------------
# Scripted reproductions
# ---------------------------------------------------------------------------

def _repro_lex_trunc_archimedean(out) -> bool:
    ctx = catalog()["lex_plane"]
    seed = 1001
    ok = True
    gen = SampleGen(derive_seed(seed, "tau1"), ctx.space)
    r1 = check_tau1(ctx.trunc, [gen.positive_pair() for _ in range(1000)], gen.seed)
    gen = SampleGen(derive_seed(seed, "tau2"), ctx.space)
    r2 = check_tau2(ctx.trunc, [gen.positive() for _ in range(1000)], gen.seed)
    t3 = check_tau3(ctx.trunc, [], bound=100)
    out(f"tau1 on the lex plane: {r1.verdict} ({r1.trials} trials)")
    out(f"tau2 on the lex plane: {r2.verdict} ({r2.trials} trials)")
    ok &= r1.ok and r2.ok
    if isinstance(t3, SymbolicPass):
        out(f"tau3 holds symbolically: {t3.reason}")
    else:
        out("tau3: unexpected result")
        ok = False
    decision = archimedean_check(ctx.space)
    if decision.archimedean:
        out("space decided Archimedean: unexpected")
        ok = False
    else:
        x, y = decision.witness
        verified = all(
            leq(zero(ctx.space), scale(n, x)) and leq(scale(n, x), y) for n in range(1, 65)
        )
        out(
            "space is not Archimedean: witness x="
            + json.dumps(element_to_json(x))
            + ", y="
            + json.dumps(element_to_json(y))
            + f", 0 <= n*x <= y verified for n <= 64: {verified}"
        )
        ok &= verified
    return ok


def _repro_identity_trunc_tau3(out) -> bool:
    ctx = catalog()["identity_line"]
    seed = 1002
    ok = True
    gen = SampleGen(derive_seed(seed, "tau1"), ctx.space)
    r1 = check_tau1(ctx.trunc, [gen.positive_pair() for _ in range(1000)], gen.seed)
    gen = SampleGen(derive_seed(seed, "tau2"), ctx.space)
    r2 = check_tau2(ctx.trunc, [gen.positive() for _ in range(1000)], gen.seed)
    out(f"tau1 on the identity-truncated axis: {r1.verdict} ({r1.trials} trials)")
    out(f"tau2 on the identity-truncated axis: {r2.verdict} ({r2.trials} trials)")
    ok &= r1.ok and r2.ok
    t3 = check_tau3(ctx.trunc, [], bound=100)
    if isinstance(t3, SymbolicViolation):
        w = t3.witness
        verified = all(
            truncate(ctx.trunc, scale(n, w)) == scale(n, w) for n in range(1, 65)
        )
        out(
            "tau3 fails symbolically: witness x="
            + json.dumps(element_to_json(w))
            + f", tr(n*x) = n*x verified for n <= 64: {verified}"
        )
        ok &= verified
    else:
        out("tau3: unexpected result")
        ok = False
    decision = archimedean_check(ctx.space)
    out(f"the axis itself is Archimedean: {decision.archimedean}")
    ok &= decision.archimedean
    return ok


def _repro_c00_ruc(out) -> bool:
    report = repro_c00_ruc(default_certified_fixtures(), seed=1003)
    out(f"certified limits extracted and re-verified: {report.verdict} ({report.detail})")
    return report.ok and report.verdict == "pass"


def _repro_unitization_not_ruc(out) -> bool:
    ctx = unitize(catalog()["sparse_seq"].trunc)
    report = repro_example43(
        ctx,
        [Fraction(1, 10), Fraction(1, 100)],
        window=50,
        candidates=default_limit_candidates(),
        seed=1004,
    )
    out(f"uniform-Cauchy windows and candidate refutations: {report.verdict} ({report.detail})")
    return report.verdict == "pass"


def _repro_thm33_sup(out) -> bool:
    ctx = unitize(catalog()["sparse_seq"].trunc)
    seed = 1005
    ok = True

    x = ctx.one
    y = sparse({1: 1})
    z = ctx.scalar(Fraction(1, 2))
    ty = truncate(ctx.trunc, y)
    escaped = not leq_u(ctx, ctx.embed(ty), z)
    out(
        "below the unit: tr({1:1}) = "
        + json.dumps(element_to_json(ty))
        + " escapes the strictly smaller candidate (0,1/2): "
        + str(escaped)
    )
    ok &= escaped
    gen = SampleGen(derive_seed(seed, "thm33"), ctx.space)
    ys = [meet_u(ctx, ctx.embed(gen.positive()), x).e for _ in range(50)] + [y]
    report = check_thm33_sup(ctx, x, ys, [z], seed)
    out(f"supremum characterization at x = 1: {report.verdict} ({report.detail})")
    ok &= report.verdict == "pass"

    x2 = ctx.embed(sparse({1: 3}))
    xbar = truncate_u(ctx, x2)
    attained = xbar == ctx.embed(truncate(ctx.trunc, sparse({1: 3})))
    out(
        "attainment at x = {1:3}: tr(x) = "
        + json.dumps(unitized_to_json(xbar))
        + f" equals the truncation of the base element: {attained}"
    )
    ok &= attained
    ys2 = [meet_u(ctx, ctx.embed(gen.positive()), x2).e for _ in range(50)]
    zs2 = []
    for _ in range(10):
        z2 = meet_u(ctx, gen.unitized(), xbar)
        if z2 != xbar:
            zs2.append(z2)
    report2 = check_thm33_sup(ctx, x2, ys2, zs2, seed)
    out(f"supremum characterization at x = {{1:3}}: {report2.verdict} ({report2.detail})")
    ok &= report2.verdict == "pass"
    return ok


def _repro_band_decomposition(out) -> bool:
    seed = 1006
    matched = 0
    total = 500
    for i in range(total):
        dim = (i % 4) + 1
        space = FinitePointwise(dim)
        gen = SampleGen(derive_seed(seed, f"component:{i}"), space)
        coords = gen.index_subset(dim)
        b = band(space, coords)
        x = gen.positive()
        if band_component(space, b, x) == band_component_oracle(space, b, x):
            matched += 1
    out(f"band components matching the corner-join oracle: {matched}/{total}")

    ctx = unitize(catalog()["finite_pointwise"].trunc)
    space = ctx.space
    good = 0
    for i in range(total):
        gen = SampleGen(derive_seed(seed, f"project:{i}"), space)
        coords = set(gen.index_subset(space.dim))
        include = bool(gen.randint(0, 1))
        uband = UnitizedBand(band(space, coords), include)
        co_band = UnitizedBand(band(space, set(range(1, space.dim + 1)) - coords), not include)
        x = gen.unitized()
        part, rest = project_band_unitized(ctx, uband, x)
        if (
            part + rest == x
            and meet_u(ctx, abs_u(ctx, part), abs_u(ctx, rest)) == ctx.zero
            and in_unitized_band(ctx, uband, part)
            and in_unitized_band(ctx, co_band, rest)
        ):
            good += 1
    out(f"unitized band projections disjoint, summing, and member-checked: {good}/{total}")
    return matched == total and good == total


_REPROS = {
    "lex-trunc-archimedean": _repro_lex_trunc_archimedean,
    "identity-trunc-tau3": _repro_identity_trunc_tau3,
    "c00-ruc": _repro_c00_ruc,
    "unitization-not-ruc": _repro_unitization_not_ruc,
    "thm33-sup": _repro_thm33_sup,
    "band-decomposition": _repro_band_decomposition,
}


def cmd_repro(args) -> int:
    if args.id not in _REPROS:
        raise CliError(f"unknown reproduction id {args.id!r}; known: {', '.join(REPRO_IDS)}")
    lines = []

    def out(text: str) -> None:
        lines.append(text)

    ok = _REPROS[args.id](out)
    for text in lines:
        print(text)
    print(("REPRODUCED: " if ok else "FAILED: ") + args.id)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trunclat",
        description="Exact law checking for truncated vector lattices and their unitizations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run the law suite for one configuration")
    check.add_argument("--space", help="sparse_seq | lex_plane | identity_line | finite_pointwise[:N] | JSON")
    check.add_argument("--trunc", help="meet_with_one | lex_meet_zero_one | identity | meet_with_unit | JSON")
    check.add_argument("--seed", type=int, default=None, help="default: $TRUNCLAT_SEED or 42")
    check.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    check.add_argument("--out", help="write the report here instead of stdout")
    check.add_argument("--format", choices=("json", "table"), default="table")
    check.add_argument("--assertions", help="assertion file to run alongside the suite")
    check.set_defaults(fn=cmd_check)

    evaluate_cmd = sub.add_parser("eval", help="evaluate one expression")
    evaluate_cmd.add_argument("expr")
    evaluate_cmd.add_argument("--bind", action="append", metavar="NAME=JSON")
    evaluate_cmd.add_argument("--space")
    evaluate_cmd.add_argument("--trunc")
    evaluate_cmd.add_argument("--unitize", action="store_true")
    evaluate_cmd.set_defaults(fn=cmd_eval)

    repro = sub.add_parser("repro", help="replay a scripted demonstration")
    repro.add_argument("id", help=" | ".join(REPRO_IDS))
    repro.set_defaults(fn=cmd_repro)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (CliError, TrunclatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
