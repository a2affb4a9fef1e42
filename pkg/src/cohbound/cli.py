"""Command-line surface: profiles, bound reports, sweeps, fuzz, verify.

Exit codes are a stable contract: 0 success, 1 verification failure,
2 usage or validation error, 3 no applicable bound.
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from itertools import combinations, permutations
from pathlib import Path

import click
import numpy as np

from .bounds import (
    AMPLIFIED_IDS,
    BOUND_IDS,
    BoundParams,
    best_params,
    evaluate_bound,
    safe_evaluate,
)
from .coherence import profile as state_profile, synthetic_profile
from .config import config
from .errors import CohboundError
from .ineq import powf
from .oracle import (
    FuzzConfig,
    VerifySummary,
    bound_validity_fuzz,
    coherence_oracle,
    lemma_grid_verify,
    random_applicable_profile,
    superadditivity_fuzz,
)
from .stateio import as_density, load_state

AXIS_NAMES = ("alpha", "k", "k1", "delta")
_MODE_FOR = {
    "Thm1": "Thm1",
    "Thm2": "Thm2",
    "Thm3": "Thm3",
    "Thm4": "Thm4",
    "Cor1": "Cor1",
    "Ref29": "Thm1",
    "Ref30": "Thm1",
    "Ref31": "Thm1",
}


def _fail(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(2)


def _hfmt(x: float) -> str:
    return f"{x:.12g}"


def _csv_cell(x) -> str:
    return repr(float(x)) if isinstance(x, float) else str(x)


def _write_csv(path: str, header, rows, force: bool):
    """Deterministic CSV: UTF-8, LF endings, shortest round-trip floats."""
    target = Path(path)
    if target.exists() and not force:
        _fail(f"{path} exists; pass --force to overwrite")
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(c) for c in row) for row in rows)
    target.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _parse_floats(text: str, flag: str):
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        _fail(f"{flag} expects comma-separated numbers, got {text!r}")


def _parse_ordering(text, n: int):
    if text is None:
        return None
    try:
        ordering = tuple(int(part) for part in text.split(","))
    except ValueError:
        _fail(f"--ordering expects comma-separated qubit indices, got {text!r}")
    if sorted(ordering) != list(range(n)):
        _fail(f"--ordering must be a permutation of 0..{n - 1}, got {text!r}")
    return ordering


def _parse_bounds(text):
    if text is None:
        return BOUND_IDS
    ids = []
    for part in text.split(","):
        part = part.strip()
        if part not in BOUND_IDS:
            _fail(f"unknown bound id {part!r}; valid: {', '.join(BOUND_IDS)}")
        if part not in ids:
            ids.append(part)
    if not ids:
        _fail("--bounds selected no bound ids")
    return tuple(ids)


def _build_params(alpha, delta, k, kn_text, m, pattern):
    kn = _parse_floats(kn_text, "--kn") if kn_text is not None else None
    try:
        return BoundParams(alpha=alpha, delta=delta, k=k, kn=kn, m=m, pattern=pattern)
    except CohboundError as exc:
        _fail(str(exc))


def _params_dict(p: BoundParams) -> dict:
    out = {"alpha": p.alpha, "delta": p.delta}
    if p.k is not None:
        out["k"] = p.k
    if p.kn is not None:
        out["kn"] = list(p.kn)
    if p.m is not None:
        out["m"] = p.m
    if p.pattern is not None:
        out["pattern"] = p.pattern
    return out


def _load(state_file):
    try:
        return load_state(state_file)
    except CohboundError as exc:
        _fail(str(exc))


@click.group()
@click.option("--tolerance", type=float, default=1e-9, show_default=True,
              help="Slack tolerance for fuzz verdicts.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.option("--force", is_flag=True, help="Overwrite existing output files.")
@click.pass_context
def main(ctx, tolerance, as_json, force):
    """Coherence profiles and superadditivity bounds for multiqubit states."""
    if tolerance <= 0.0:
        _fail("--tolerance must be positive")
    ctx.obj = {"tolerance": tolerance, "json": as_json, "force": force}


@main.command()
@click.argument("state_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--ordering", default=None, help="Comma-separated qubit order.")
@click.pass_context
def coherence(ctx, state_file, ordering):
    """Total, single-qubit, and tail coherences of a state file."""
    state, note = _load(state_file)
    order = _parse_ordering(ordering, state.n_qubits)
    try:
        prof = state_profile(state, order)
    except CohboundError as exc:
        _fail(str(exc))
    if ctx.obj["json"]:
        payload = {
            "total": prof.total,
            "singles": list(prof.singles),
            "tails": list(prof.tails),
            "ordering": list(prof.ordering),
        }
        if note is not None:
            payload["note"] = note
        click.echo(json.dumps(payload, indent=2))
        return
    click.echo(f"ordering: {' '.join(str(q) for q in prof.ordering)}")
    click.echo(f"total: {_hfmt(prof.total)}")
    click.echo("singles: " + " ".join(_hfmt(c) for c in prof.singles))
    click.echo("tails: " + " ".join(_hfmt(c) for c in prof.tails))
    if note is not None:
        click.echo(f"note: {note}")


def _choose_report(profiles, bid, base_params, auto_params):
    """Evaluate one bound over candidate orderings, keep the best applicable."""
    candidates = []
    for perm, prof in profiles:
        params = base_params
        if auto_params and bid in _MODE_FOR:
            try:
                params = best_params(prof, _MODE_FOR[bid], alpha=base_params.alpha)
            except CohboundError:
                params = base_params
        candidates.append((perm, params, safe_evaluate(bid, prof, params)))
    applicable = [c for c in candidates if c[2].applicable]
    if applicable:
        return max(applicable, key=lambda c: c[2].rhs)
    return candidates[0]


@main.command()
@click.argument("state_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--alpha", type=float, default=2.0, show_default=True)
@click.option("--k", type=float, default=None)
@click.option("--kn", default=None, help="Comma-separated per-position k values.")
@click.option("--delta", type=float, default=1.0, show_default=True)
@click.option("--m", type=int, default=None, help="Descending-prefix length.")
@click.option("--pattern", default=None, help="Regime pattern, e.g. dda or ad.")
@click.option("--ordering", default=None, help="Comma-separated qubit order.")
@click.option("--bounds", "bounds_text", default=None,
              help="Comma-separated bound ids (default: all).")
@click.option("--auto-params", is_flag=True,
              help="Use condition-boundary parameters per bound.")
@click.option("--auto-ordering", is_flag=True,
              help="Search qubit orderings per bound.")
@click.pass_context
def bounds(ctx, state_file, alpha, k, kn, delta, m, pattern, ordering,
           bounds_text, auto_params, auto_ordering):
    """Evaluate the bound family on one state and report gaps."""
    state, _ = _load(state_file)
    n = state.n_qubits
    ids = _parse_bounds(bounds_text)
    if kn is not None and len(kn.split(",")) != n - 1:
        _fail(f"--kn needs {n - 1} values for a {n}-qubit state")
    base_params = _build_params(alpha, delta, k, kn, m, pattern)
    order = _parse_ordering(ordering, n) or tuple(range(n))
    if auto_ordering and n > config.ordering_search_cap:
        _fail(f"--auto-ordering is capped at {config.ordering_search_cap} qubits")
    dm = as_density(state)
    perms = sorted(permutations(range(n))) if auto_ordering else [order]
    try:
        profiles = [(perm, state_profile(dm, perm)) for perm in perms]
    except CohboundError as exc:
        _fail(str(exc))
    chosen = {bid: _choose_report(profiles, bid, base_params, auto_params) for bid in ids}
    reports = sorted(
        chosen.items(),
        key=lambda item: (0, -item[1][2].rhs, item[0]) if item[1][2].applicable else (1, 0.0, item[0]),
    )
    if ctx.obj["json"]:
        payload = {
            "params": _params_dict(base_params),
            "ordering": list(order),
            "reports": [rep.to_dict() for _, (_, _, rep) in reports],
        }
        if auto_params:
            payload["auto_params"] = {bid: _params_dict(p) for bid, (_, p, _) in reports}
        if auto_ordering:
            payload["orderings"] = {bid: list(perm) for bid, (perm, _, _) in reports}
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(f"ordering: {' '.join(str(q) for q in order)}")
        for bid, (perm, params, rep) in reports:
            flag = "applicable" if rep.applicable else "not-applicable"
            click.echo(
                f"{bid:<9} {flag:<15} rhs={_hfmt(rep.rhs)} lhs={_hfmt(rep.lhs)} gap={_hfmt(rep.gap)}"
            )
            extras = []
            if auto_params:
                extras.append("params " + json.dumps(_params_dict(params)))
            if auto_ordering:
                extras.append("ordering " + ",".join(str(q) for q in perm))
            if rep.dropped:
                extras.append("dropped " + ",".join(str(i) for i in rep.dropped))
            for extra in extras:
                click.echo(f"    {extra}")
            for cond in rep.verdict.per_condition:
                mark = "ok" if cond.satisfied else "FAIL"
                click.echo(
                    f"    [{mark}] {cond.description}: {_hfmt(cond.lhs)} vs {_hfmt(cond.rhs)}"
                )
    if not any(rep.applicable for _, (_, _, rep) in reports):
        sys.exit(3)


def _parse_axis(text: str):
    parts = text.split(":")
    if len(parts) != 4:
        _fail(f"--axis expects name:min:max:steps, got {text!r}")
    name = parts[0]
    if name not in AXIS_NAMES:
        _fail(f"unknown axis {name!r}; valid: {', '.join(AXIS_NAMES)}")
    try:
        lo, hi = float(parts[1]), float(parts[2])
        steps = int(parts[3])
    except ValueError:
        _fail(f"--axis expects numeric min:max:steps, got {text!r}")
    if steps < 2:
        _fail(f"axis {name}: steps must be >= 2, got {steps}")
    if not lo < hi:
        _fail(f"axis {name}: min must be below max, got {lo} .. {hi}")
    return name, lo, hi, steps


@main.command()
@click.argument("state_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--axis", "axes_text", multiple=True, required=True,
              help="name:min:max:steps with name in alpha, k, k1, delta; 1-2 axes.")
@click.option("--alpha", type=float, default=2.0, show_default=True)
@click.option("--k", type=float, default=None)
@click.option("--kn", default=None, help="Comma-separated per-position k values.")
@click.option("--delta", type=float, default=1.0, show_default=True)
@click.option("--m", type=int, default=None)
@click.option("--pattern", default=None)
@click.option("--ordering", default=None)
@click.option("--bounds", "bounds_text", default=None,
              help="Comma-separated bound ids (default: all).")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def sweep(ctx, state_file, axes_text, alpha, k, kn, delta, m, pattern, ordering,
          bounds_text, out):
    """Grid-evaluate bounds over 1-2 parameter axes into a CSV file.

    Columns: one per axis, rhs_<bound> per requested bound, lhs, and
    rhs_<A>_minus_rhs_<B> for every requested pair. Rows follow grid
    order, last axis fastest. rhs cells always hold the formula value;
    applicability must be judged from the conditions, via the bounds
    command.
    """
    state, _ = _load(state_file)
    n = state.n_qubits
    ids = _parse_bounds(bounds_text)
    axes = [_parse_axis(text) for text in axes_text]
    if not 1 <= len(axes) <= 2:
        _fail("give 1 or 2 --axis options")
    if len({a[0] for a in axes}) != len(axes):
        _fail("axis names must be distinct")
    axis_names = [a[0] for a in axes]
    alpha_floor = 2.0 if any(b in AMPLIFIED_IDS for b in ids) else 1.0
    for name, lo, hi, _steps in axes:
        if name == "alpha" and lo < alpha_floor:
            _fail(f"axis alpha must start at or above {alpha_floor:g} for these bounds")
        if name in ("k", "k1") and (lo <= 0.0 or hi > 1.0):
            _fail(f"axis {name} must stay within (0, 1]")
        if name == "delta" and lo < 1.0:
            _fail("axis delta must start at or above 1")
    if "alpha" not in axis_names and alpha < alpha_floor:
        _fail(f"--alpha must be at least {alpha_floor:g} for these bounds")
    if "k" in axis_names and ("k1" in axis_names or kn is not None or k is not None):
        _fail("axis k conflicts with --k, --kn, and axis k1")
    kn_tuple = _parse_floats(kn, "--kn") if kn is not None else None
    if kn_tuple is not None and len(kn_tuple) != n - 1:
        _fail(f"--kn needs {n - 1} values for a {n}-qubit state")
    if "k1" in axis_names:
        if k is not None:
            _fail("axis k1 varies kn; drop --k")
        if kn_tuple is None:
            kn_tuple = (1.0,) * (n - 1)
    order = _parse_ordering(ordering, n)
    try:
        prof = state_profile(state, order)
    except CohboundError as exc:
        _fail(str(exc))

    def params_at(point: dict) -> BoundParams:
        alpha_v = point.get("alpha", alpha)
        delta_v = point.get("delta", delta)
        k_v, kn_v = k, kn_tuple
        if "k" in point:
            k_v, kn_v = point["k"], None
        if "k1" in point:
            filled = list(kn_tuple)
            filled[0] = point["k1"]
            k_v, kn_v = None, tuple(filled)
        try:
            return BoundParams(alpha=alpha_v, delta=delta_v, k=k_v, kn=kn_v,
                               m=m, pattern=pattern)
        except CohboundError as exc:
            _fail(str(exc))

    grids = [np.linspace(lo, hi, steps) for _, lo, hi, steps in axes]
    points = (
        [{axis_names[0]: float(v)} for v in grids[0]]
        if len(axes) == 1
        else [
            {axis_names[0]: float(u), axis_names[1]: float(v)}
            for u in grids[0]
            for v in grids[1]
        ]
    )
    first = params_at(points[0])
    for bid in ids:
        try:
            evaluate_bound(bid, prof, first)
        except CohboundError as exc:
            _fail(f"bound {bid} cannot run on this state: {exc}")
    header = axis_names + [f"rhs_{b}" for b in ids] + ["lhs"]
    header += [f"rhs_{a}_minus_rhs_{b}" for a, b in combinations(ids, 2)]
    rows = []
    for point in points:
        params = params_at(point)
        rhs = {bid: safe_evaluate(bid, prof, params).rhs for bid in ids}
        row = [point[name] for name in axis_names]
        row += [rhs[bid] for bid in ids]
        row.append(powf(prof.total, params.alpha))
        row += [rhs[a] - rhs[b] for a, b in combinations(ids, 2)]
        rows.append(row)
    _write_csv(out, header, rows, ctx.obj["force"])
    click.echo(f"wrote {len(rows)} rows to {out}")


def _worst(summary: VerifySummary) -> float:
    return summary.worst_slack if summary.checks_run else 0.0


@main.command("random")
@click.option("--n", "n_states", type=int, required=True, help="Number of states.")
@click.option("--qubits", type=int, default=3, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Per-state CSV output path.")
@click.pass_context
def random_cmd(ctx, n_states, qubits, seed, out):
    """Fuzz random pure states against superadditivity and every bound."""
    tol = ctx.obj["tolerance"]
    try:
        FuzzConfig(n_states=n_states, n_qubits=qubits, seed=seed, tolerance=tol)
    except CohboundError as exc:
        _fail(str(exc))
    total_super = VerifySummary()
    total_bound = VerifySummary()
    rows = []
    for i in range(n_states):
        cfg = FuzzConfig(n_states=1, n_qubits=qubits, seed=seed + i, tolerance=tol)
        s_super = superadditivity_fuzz(cfg)
        s_bound = bound_validity_fuzz(cfg, alphas=(2.0,))
        evaluated = sum(e["evaluated"] for e in s_bound.rates.values())
        applicable = sum(e["applicable"] for e in s_bound.rates.values())
        rows.append([
            i, seed + i,
            s_super.checks_run, _worst(s_super),
            s_bound.checks_run, _worst(s_bound),
            evaluated, applicable,
        ])
        total_super = total_super.merge(s_super)
        total_bound = total_bound.merge(s_bound)
    if out is not None:
        header = [
            "index", "seed", "superadd_checks", "superadd_worst",
            "bound_checks", "bound_worst", "bounds_evaluated", "bounds_applicable",
        ]
        _write_csv(out, header, rows, ctx.obj["force"])
    merged = total_super.merge(total_bound)
    if ctx.obj["json"]:
        click.echo(json.dumps(merged.to_dict(), indent=2))
    else:
        click.echo(f"states: {n_states}  qubits: {qubits}  seed: {seed}")
        click.echo(
            f"superadditivity checks: {total_super.checks_run}  worst slack: {_hfmt(_worst(total_super))}"
        )
        click.echo(
            f"bound checks: {total_bound.checks_run}  worst slack: {_hfmt(_worst(total_bound))}"
        )
        for bid in BOUND_IDS:
            entry = total_bound.rates.get(bid)
            if entry:
                click.echo(f"  {bid}: applicable {entry['applicable']}/{entry['evaluated']}")
        click.echo(f"violations: {len(merged.violations)}")
    if merged.violations:
        sys.exit(1)


def _record_close(summary, check_id, got, want, tol):
    summary.record(check_id, (got, want), -abs(got - want), tol)


def _golden_checks() -> VerifySummary:
    """Pinned end-to-end values from the bundled example states."""
    from .bounds import cor1_bound, ref_scheme_bound, thm1_bound, thm3_bound, thm4_bound

    summary = VerifySummary()
    data = resources.files("cohbound").joinpath("data")
    with resources.as_file(data.joinpath("example1_product.json")) as path:
        ex1_state, _ = load_state(path)
    prof1 = state_profile(ex1_state)
    for label, got, want in [
        ("c1", prof1.singles[0], 1.0),
        ("c2", prof1.singles[1], 0.8),
        ("c3", prof1.singles[2], 0.6),
        ("c23", prof1.tails[0], 1.88),
        ("total", prof1.total, 4.76),
    ]:
        _record_close(summary, f"golden-ex1-{label}", got, want, 1e-12)
    _record_close(
        summary, "golden-ex1-oracle",
        coherence_oracle(as_density(ex1_state)), prof1.total, 1e-10,
    )
    p_ex1 = BoundParams(alpha=2.0, k=0.9, delta=2.0)
    r_cor = cor1_bound(prof1, p_ex1)
    r_ref = ref_scheme_bound(prof1, p_ex1, "Ref31")
    _record_close(summary, "golden-ex1-cor1-rhs", r_cor.rhs, 5.182653007617547, 1e-9)
    _record_close(summary, "golden-ex1-ref31-rhs", r_ref.rhs, 5.3580246913580245, 1e-9)
    summary.record("golden-ex1-cor1-valid", (r_cor.rhs, r_cor.lhs), r_cor.gap, 1e-9)
    summary.record("golden-ex1-ref31-valid", (r_ref.rhs, r_ref.lhs), r_ref.gap, 1e-9)
    with resources.as_file(data.joinpath("example2_schmidt.json")) as path:
        ex2_state, _ = load_state(path)
    prof2 = state_profile(ex2_state)
    for label, got, want in [
        ("c1", prof2.singles[0], 0.4),
        ("c2", prof2.singles[1], 0.8),
        ("c3", prof2.singles[2], 0.8),
        ("c23", prof2.tails[0], 2.4),
    ]:
        _record_close(summary, f"golden-ex2-{label}", got, want, 1e-12)
    _record_close(
        summary, "golden-ex2-total-vs-oracle",
        prof2.total, coherence_oracle(as_density(ex2_state)), 1e-12,
    )
    _record_close(summary, "golden-ex2-total", prof2.total, 4.0, 1e-12)
    p_unit = BoundParams(alpha=2.0, delta=2.0, kn=(1.0, 1.0), pattern="ad")
    s1 = thm4_bound(prof2, p_unit).rhs
    s2 = ref_scheme_bound(prof2, p_unit, "Ref31").rhs
    _record_close(summary, "golden-ex2-s2-minus-s1", s1 - s2, 4.0 / 15.0, 1e-10)
    pinned = synthetic_profile((1.0, 0.2, 0.1), (0.32, 0.1), 1.64)
    _record_close(
        summary, "golden-thm1-pinned",
        thm1_bound(pinned, BoundParams(alpha=2.0, k=0.5)).rhs, 1.59, 1e-12,
    )
    _record_close(
        summary, "golden-thm3-pinned",
        thm3_bound(pinned, BoundParams(alpha=2.0, kn=(0.32, 0.5))).rhs, 1.69125, 1e-12,
    )
    _record_close(
        summary, "golden-ref29-pinned",
        ref_scheme_bound(pinned, BoundParams(alpha=2.0, m=2), "Ref29").rhs, 1.21, 1e-12,
    )
    return summary


def _degeneracy_checks() -> VerifySummary:
    """Uniform per-position coefficients must reduce to the global forms."""
    import random as _random

    from .bounds import ref_scheme_bound, thm1_bound, thm2_bound, thm3_bound, thm4_bound

    summary = VerifySummary()
    rng = _random.Random(1105)
    for i in range(20):
        n = rng.choice([3, 4, 5])
        k = rng.uniform(0.3, 1.0)
        alpha = rng.uniform(2.0, 5.0)
        prof = random_applicable_profile(rng, n, "d" * (n - 1), [k] * (n - 1))
        a = thm3_bound(prof, BoundParams(alpha=alpha, kn=(k,) * (n - 1))).rhs
        b = thm1_bound(prof, BoundParams(alpha=alpha, k=k)).rhs
        _record_close(summary, f"degeneracy-thm3-thm1-{i}", a, b, 1e-12)
        r31 = ref_scheme_bound(prof, BoundParams(alpha=alpha, k=1.0), "Ref31").rhs
        r29 = ref_scheme_bound(prof, BoundParams(alpha=alpha), "Ref29").rhs
        _record_close(summary, f"degeneracy-ref31-ref29-{i}", r31, r29, 1e-12)
        bp3 = best_params(prof, "Thm3", alpha=alpha)
        bp1 = best_params(prof, "Thm1", alpha=alpha)
        refine = thm3_bound(prof, bp3).rhs - thm1_bound(prof, bp1).rhs
        summary.record(f"refine-thm3-ge-thm1-{i}", (n, alpha), refine, 1e-12)
        m = rng.randint(1, n - 2)
        pat = "d" * m + "a" * (n - 1 - m)
        prof = random_applicable_profile(rng, n, pat, [k] * (n - 1))
        a = thm4_bound(prof, BoundParams(alpha=alpha, kn=(k,) * (n - 1), m=m)).rhs
        b = thm2_bound(prof, BoundParams(alpha=alpha, k=k, m=m)).rhs
        _record_close(summary, f"degeneracy-thm4-thm2-{i}", a, b, 1e-12)
    return summary


@main.command()
@click.option("--self-test", is_flag=True,
              help="Negate one slack internally; the run must then fail.")
@click.pass_context
def verify(ctx, self_test):
    """Scalar-inequality grids plus pinned example and degeneracy checks."""
    summary = lemma_grid_verify(self_test=self_test)
    summary = summary.merge(_golden_checks())
    summary = summary.merge(_degeneracy_checks())
    if ctx.obj["json"]:
        click.echo(json.dumps(summary.to_dict(), indent=2))
    else:
        click.echo(f"checks run: {summary.checks_run}")
        click.echo(f"worst slack: {_hfmt(_worst(summary))}")
        click.echo(f"violations: {len(summary.violations)}")
        for check_id, inputs, slack in summary.violations[:10]:
            click.echo(f"  {check_id} {inputs}: slack {_hfmt(slack)}")
    if summary.violations:
        sys.exit(1)


if __name__ == "__main__":
    main()
