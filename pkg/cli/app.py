"""
QuarticPell CLI Application

Main Typer application with all commands registered. Every command writes
CommandResult JSON lines to stdout; diagnostics go to stderr.
"""

import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Iterable, Optional

import typer

from cli.results import CommandResult, CommandStatus, ResultWriter, jsonable, worst
from cli.tui.console import console, print_error
from src.errors import (
    ConjectureViolation,
    ErrorRecord,
    PreconditionError,
    UndecidedError,
    VerificationError,
)
from src.observability import (
    configure_from_settings,
    log_failure,
    log_run_finished,
    log_run_started,
)

Payload = tuple[dict[str, Any], CommandStatus]

# ============================================================================
# Main Application
# ============================================================================

app = typer.Typer(
    name="quarticpell",
    help="Exact-arithmetic toolkit for aX^4 - bY^2 = 1.\n\nSolves, scans and verifies every constructive step behind the two-solution bound.",
    add_completion=False,
    no_args_is_help=True,
    rich_markup_mode="rich",
)


@dataclass
class GlobalOptions:
    pretty: bool = False
    out: Optional[Path] = None
    jobs: int = 0


def version_callback(value: bool):
    """Print version and exit."""
    if value:
        from importlib.metadata import version as get_version
        try:
            ver = get_version("quarticpell")
        except Exception:
            ver = "0.1.0-dev"
        console.print(f"[bold cyan]QuarticPell[/] version [bold]{ver}[/]")
        raise typer.Exit()


@app.callback()
def main(
    ctx: typer.Context,
    version: bool = typer.Option(
        False,
        "--version",
        "-v",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit.",
    ),
    pretty: bool = typer.Option(
        False,
        "--pretty",
        help="Render results as tables instead of JSON lines.",
    ),
    out: Optional[Path] = typer.Option(
        None,
        "--out",
        "-o",
        help="Also append JSON lines to this file.",
        dir_okay=False,
        resolve_path=True,
    ),
    jobs: Optional[int] = typer.Option(
        None,
        "--jobs",
        "-j",
        min=0,
        help="Worker processes for range commands (0 = all cores).",
    ),
    log_level: Optional[str] = typer.Option(
        None,
        "--log-level",
        help="Diagnostic log level on stderr (DEBUG, INFO, WARNING, ERROR).",
    ),
):
    """
    QuarticPell: exact solver and verifier for aX^4 - bY^2 = 1.

    [bold cyan]Quick Start:[/]

        quarticpell solve 2 1

        quarticpell family --t-from 1 --t-to 2000

        quarticpell --pretty gap --t 205 --r-max 10
    """
    from src.config import get_config

    configure_from_settings(log_level)
    ctx.obj = GlobalOptions(
        pretty=pretty,
        out=out,
        jobs=get_config().settings.scan.jobs if jobs is None else jobs,
    )


# ============================================================================
# Command Runner
# ============================================================================

def _failure_payload(exc: Exception) -> dict[str, Any]:
    record = ErrorRecord.from_exception(exc)
    payload: dict[str, Any] = {"error": record.to_dict()}
    if isinstance(exc, ConjectureViolation):
        payload["solutions"] = [s.to_dict() for s in exc.solutions]
    return payload


def _execute(
    ctx: typer.Context,
    command: str,
    inputs: dict[str, Any],
    produce: Callable[[], Iterable[Payload]],
) -> None:
    """Run produce(), emitting one CommandResult per payload, then exit with the worst status."""
    opts: GlobalOptions = ctx.obj or GlobalOptions()
    writer = ResultWriter(opts.pretty, opts.out)
    t = inputs.get("t")
    log_run_started(
        command,
        t=t if isinstance(t, int) else None,
        **{k: str(v) for k, v in inputs.items() if k != "t"},
    )
    echoed = jsonable(inputs)
    started = last = time.perf_counter()
    statuses: list[CommandStatus] = []

    def emit(payload: dict[str, Any], status: CommandStatus) -> None:
        nonlocal last
        now = time.perf_counter()
        writer.emit(CommandResult(
            command=command,
            input=echoed,
            result=jsonable(payload),
            status=status,
            runtime_ms=(now - last) * 1000,
        ))
        last = now
        statuses.append(status)

    try:
        for payload, status in produce():
            emit(payload, status)
    except PreconditionError as exc:
        print_error(str(exc))
        log_failure("run_rejected", ErrorRecord.from_exception(exc))
        log_run_finished("usage_error", (time.perf_counter() - started) * 1000)
        raise typer.Exit(1)
    except (VerificationError, UndecidedError, ConjectureViolation) as exc:
        record = ErrorRecord.from_exception(exc)
        log_failure("run_failed", record)
        emit(_failure_payload(exc), CommandStatus.from_classification(record.classification))

    final = worst(statuses)
    log_run_finished(final.value, (time.perf_counter() - started) * 1000)
    if final.exit_code:
        raise typer.Exit(final.exit_code)


def _status(ok: bool) -> CommandStatus:
    return CommandStatus.OK if ok else CommandStatus.VERIFICATION_FAILED


# ============================================================================
# Solve / Family
# ============================================================================

@app.command()
def solve(
    ctx: typer.Context,
    a: int = typer.Argument(..., min=1, help="Coefficient a of aX^4."),
    b: int = typer.Argument(..., min=1, help="Coefficient b of bY^2."),
    x_max: Optional[int] = typer.Option(None, "--x-max", min=1, help="Brute-force bound on X."),
    k_max: Optional[int] = typer.Option(None, "--k-max", min=0, help="Largest sequence index k of V_{2k+1}."),
):
    """
    Find and verify every solution of aX^4 - bY^2 = 1 within the limits.

    [bold cyan]Examples:[/]

        quarticpell solve 3 2

        quarticpell solve 2 1 --x-max 100000

        quarticpell solve 4 3
    """
    from src.config import get_config
    from src.solver import solve as run_solve

    base = get_config().settings.limits
    limits = base.model_copy(update={
        "x_max": base.x_max if x_max is None else x_max,
        "k_max": base.k_max if k_max is None else k_max,
    })

    def produce():
        records, outcome = run_solve(a, b, limits)
        yield {
            "solutions": [r.to_dict() for r in records],
            "count": len(records),
            "reduction": outcome.to_dict(),
            "searched": {"x_max": limits.x_max, "k_max": limits.k_max},
        }, CommandStatus.OK

    _execute(ctx, "solve", {"a": a, "b": b, "x_max": limits.x_max, "k_max": limits.k_max}, produce)


@app.command()
def family(
    ctx: typer.Context,
    t: Optional[int] = typer.Option(None, "--t", min=1, help="Single family parameter t."),
    t_from: Optional[int] = typer.Option(None, "--t-from", min=1, help="First t of a range."),
    t_to: Optional[int] = typer.Option(None, "--t-to", min=1, help="Last t of a range."),
    k_max: Optional[int] = typer.Option(None, "--k-max", min=0, help="Largest sequence index k."),
    x_max: Optional[int] = typer.Option(None, "--x-max", min=1, help="Brute-force bound on X."),
):
    """
    Solve (t+1)X^4 - tY^2 = 1 for one t or stream one line per t of a range.

    [bold cyan]Examples:[/]

        quarticpell family --t 2

        quarticpell family --t 6

        quarticpell -j 8 family --t-from 1 --t-to 2000 --x-max 10000
    """
    from src.config import get_config
    from src.solver import family_scan, family_solve

    limits = get_config().settings.limits
    k = limits.k_max if k_max is None else k_max
    x = limits.x_max if x_max is None else x_max
    opts: GlobalOptions = ctx.obj

    def produce():
        if t is not None:
            records = family_solve(t, k, x)
            yield {"t": t, "solutions": [r.to_dict() for r in records], "count": len(records)}, CommandStatus.OK
            return
        if t_from is None or t_to is None:
            raise PreconditionError("give --t or both --t-from and --t-to")
        for row in family_scan(t_from, t_to, k, x, jobs=opts.jobs):
            payload = {"t": row.t, "solutions": [r.to_dict() for r in row.solutions], "count": len(row.solutions)}
            if row.message:
                payload["message"] = row.message
            yield payload, CommandStatus(row.status)

    inputs = {"t": t, "t_from": t_from, "t_to": t_to, "k_max": k, "x_max": x}
    _execute(ctx, "family", inputs, produce)


# ============================================================================
# Pade
# ============================================================================

@app.command()
def pade(
    ctx: typer.Context,
    verify_order: bool = typer.Option(False, "--verify-order", help="Vanishing order and leading coefficient."),
    tables: bool = typer.Option(False, "--tables", help="The explicit tables for r = 1..5."),
    ledger: bool = typer.Option(False, "--ledger", help="The nine bilinear identities."),
    det: bool = typer.Option(False, "--det", help="Determinant monomials for h = 0, 1."),
    reflection: bool = typer.Option(False, "--reflection", help="C, D reflections and positivity."),
    r_max: int = typer.Option(10, "--r-max", min=1, help="Largest r for order, det and reflection checks."),
):
    """
    Verify the Pade identities exactly. With no flag, runs every check.

    [bold cyan]Examples:[/]

        quarticpell pade --tables

        quarticpell pade --verify-order --r-max 10

        quarticpell pade --ledger
    """
    from src import pade_hypergeometric as ph

    run_all = not (verify_order or tables or ledger or det or reflection)

    def produce():
        result: dict[str, Any] = {}
        ok = True
        if run_all or verify_order:
            rows = []
            for r in range(1, r_max + 1):
                for g in (0, 1):
                    order, leading = ph.remainder_order_check(r, g)
                    rows.append({"r": r, "g": g, "order": order, "leading": leading})
            result["order"] = rows
        if run_all or tables:
            rows = []
            for r in sorted(ph.EXPLICIT_TABLES):
                table = ph.explicit_table(r)
                floor_ok = ph.table_floor_check(r)
                ok = ok and floor_ok
                rows.append({
                    "r": r,
                    "scale": table.scale,
                    "A": str(table.A),
                    "B": str(table.B),
                    "F": str(table.F),
                    "floor_ok": floor_ok,
                })
            result["tables"] = rows
        if run_all or ledger:
            entries = ph.ledger_check()
            ok = ok and all(e.status != "mismatch" for e in entries)
            result["ledger"] = [e.to_dict() for e in entries]
        if run_all or det:
            rows = []
            for r in range(1, r_max + 1):
                for h in (0, 1):
                    k, c = ph.determinant_check(r, h)
                    rows.append({"r": r, "h": h, "k": k, "c": c})
            result["determinant"] = rows
        if run_all or reflection:
            rows = []
            for r in range(1, r_max + 1):
                for g in (0, 1):
                    reflected = ph.reflection_check(r, g)
                    positive = ph.c_coefficients_positive(r, g)
                    ok = ok and reflected and positive
                    rows.append({"r": r, "g": g, "reflection": reflected, "c_positive": positive})
            result["reflection"] = rows
        yield result, _status(ok)

    inputs = {"verify_order": verify_order, "tables": tables, "ledger": ledger,
              "det": det, "reflection": reflection, "r_max": r_max}
    _execute(ctx, "pade", inputs, produce)


# ============================================================================
# Gap / Roots / Sequences / Scan
# ============================================================================

@app.command()
def gap(
    ctx: typer.Context,
    t: int = typer.Option(205, "--t", min=1, help="Family parameter t (> 204)."),
    r_max: int = typer.Option(10, "--r-max", min=1, help="Induction depth."),
):
    """
    Replay the induction chain for one t, with the closing inequalities.

    [bold cyan]Examples:[/]

        quarticpell gap --t 205 --r-max 10

        quarticpell gap --t 1000000 --r-max 3
    """
    from src import gap_principle as gp

    def produce():
        report = gp.chain_replay(t, r_max)
        idol = [gp.idol_check(r, t) for r in range(1, 6)]
        exclusion = gp.exclusion_check(t)
        ok = report.ok and all(i.refuted for i in idol) and exclusion
        yield {
            "chain": report.to_dict(),
            "idol": [{"r": i.r, "lhs": i.lhs, "rhs": i.rhs, "refuted": i.refuted} for i in idol],
            "exclusion": exclusion,
        }, _status(ok)

    _execute(ctx, "gap", {"t": t, "r_max": r_max}, produce)


@app.command()
def roots(
    ctx: typer.Context,
    t: int = typer.Option(..., "--t", min=1, help="Family parameter t (>= 18)."),
):
    """
    Certified brackets of the four real roots of P(x, 1).

    [bold cyan]Examples:[/]

        quarticpell roots --t 205
    """
    from src.quartic_forms import root_bounds

    def produce():
        bounds = root_bounds(t)
        yield {
            "brackets": [b.describe(30) for b in bounds.brackets],
            "sign_change": [{"P_lo": lo, "P_hi": hi} for lo, hi in bounds.endpoint_values],
            "nominal_widths": list(bounds.nominal_widths),
        }, CommandStatus.OK

    _execute(ctx, "roots", {"t": t}, produce)


@app.command()
def sequences(
    ctx: typer.Context,
    t: int = typer.Option(..., "--t", min=1, help="Family parameter t."),
    k_max: int = typer.Option(10, "--k-max", min=0, help="Largest index k."),
):
    """
    V, W, T, U up to k_max with their norm and cross identities.

    [bold cyan]Examples:[/]

        quarticpell sequences --t 2 --k-max 10
    """
    from src.pell_sequences import PellContext, cross_identity, sequence_table

    def produce():
        ctx_t = PellContext(t)
        rows = sequence_table(ctx_t, k_max)
        cross = [cross_identity(ctx_t, n) for n in range(k_max + 1)]
        ok = all(r["odd_norm_ok"] and r["even_norm_ok"] for r in rows) and all(
            c["square_split"] and c["u_step"] and c["coprime"] for c in cross
        )
        yield {"rows": rows, "cross": cross}, _status(ok)

    _execute(ctx, "sequences", {"t": t, "k_max": k_max}, produce)


@app.command("scan-v7v11")
def scan_v7v11(
    ctx: typer.Context,
    t_from: int = typer.Option(205, "--t-from", min=1, help="First t."),
    t_to: int = typer.Option(..., "--t-to", min=1, help="Last t."),
):
    """
    Every t in the range where V_7 or V_11 is a perfect square.

    [bold cyan]Examples:[/]

        quarticpell -j 8 scan-v7v11 --t-from 205 --t-to 1000000

        quarticpell scan-v7v11 --t-from 1 --t-to 204
    """
    from src.config import get_config
    from src.gap_principle import THRESHOLD_T
    from src.pell_sequences import v7_v11_square_scan

    opts: GlobalOptions = ctx.obj

    def produce():
        hits = v7_v11_square_scan(t_from, t_to, opts.jobs, get_config().settings.scan.chunk_size)
        above = [t for t, _ in hits if t > THRESHOLD_T]
        yield {
            "hits": [{"t": t, "index": index} for t, index in hits],
            "count": len(hits),
        }, _status(not above)

    _execute(ctx, "scan-v7v11", {"t_from": t_from, "t_to": t_to}, produce)


# ============================================================================
# Witness / Integrality / Bounds
# ============================================================================

@app.command()
def witness(
    ctx: typer.Context,
    t: int = typer.Option(..., "--t", min=1, help="Family parameter t."),
    n_max: Optional[int] = typer.Option(None, "--n-max", min=0, help="Largest n of V_{4n+3}."),
):
    """
    Small values P(x, y) = t1^2 built from square V_{4n+3}.

    [bold cyan]Examples:[/]

        quarticpell witness --t 1 --n-max 3
    """
    from src.solver import witness_search

    def produce():
        found = witness_search(t, n_max)
        yield {"witnesses": [w.to_dict() for w in found], "count": len(found)}, CommandStatus.OK

    _execute(ctx, "witness", {"t": t, "n_max": n_max}, produce)


def _integrality_instance(t: int, r: int, g: int, pair1, pair2) -> dict[str, Any]:
    from src import pade_hypergeometric as ph

    kinds = {kind: str(ph.fourth_power_integrality(t, pair1, pair2, kind)) for kind in ph.INTEGRALITY_KINDS}
    star = ph.astar_integrality(t, r, g, *pair1)
    lam0 = ph.lambda_exact(t, r, 0, pair1, pair2)
    lam1 = ph.lambda_exact(t, r, 1, pair1, pair2)
    return {
        "t": t, "r": r, "g": g, "pair1": list(pair1), "pair2": list(pair2),
        "fourth_powers": kinds,
        "A_star": str(star.A),
        "B_star": str(star.B),
        "lambda_0": str(lam0.value),
        "lambda_1_fourth": str(lam1.fourth_power),
        "lambda_1_integral": lam1.integral,
    }


@app.command()
def integrality(
    ctx: typer.Context,
    t: int = typer.Option(1, "--t", min=1, help="Family parameter t."),
    x1: int = typer.Option(1, "--x1"),
    y1: int = typer.Option(0, "--y1"),
    x2: int = typer.Option(0, "--x2"),
    y2: int = typer.Option(1, "--y2"),
    r: int = typer.Option(1, "--r", min=1, help="Approximant degree."),
    g: int = typer.Option(0, "--g", min=0, max=1),
    sigma: bool = typer.Option(False, "--sigma", help="Also enclose Sigma and cross-check |Lambda|."),
    count: int = typer.Option(0, "--random", min=0, help="Run this many seeded random instances instead."),
    seed: int = typer.Option(0, "--seed"),
    t_max: int = typer.Option(50, "--t-max", min=1, help="Largest t for random instances."),
):
    """
    Exact membership checks in Z[omega]: fourth powers, A*/B* and Lambda.

    [bold cyan]Examples:[/]

        quarticpell integrality --t 1 --x1 1 --y1 0 --x2 0 --y2 1

        quarticpell integrality --t 2 --x1 1 --y1 1 --x2 1 --y2 2 --r 2 --sigma

        quarticpell integrality --random 1000 --seed 7
    """
    from src.pade_hypergeometric import sigma_eval

    def produce():
        if count:
            rng = random.Random(seed)
            for _ in range(count):
                t_i = rng.randint(1, t_max)
                pairs = []
                while len(pairs) < 2:
                    p = (rng.randint(-20, 20), rng.randint(-20, 20))
                    if p != (0, 0):
                        pairs.append(p)
                instance = _integrality_instance(t_i, rng.randint(1, 5), rng.randint(0, 1), *pairs)
                yield instance, CommandStatus.OK
            return
        result = _integrality_instance(t, r, g, (x1, y1), (x2, y2))
        if sigma:
            evaluated = sigma_eval(t, r, g, (x1, y1), (x2, y2))
            result["sigma"] = evaluated.sigma.describe(20)
            result["lambda_abs"] = evaluated.lambda_abs.describe(20)
            result["consistent"] = evaluated.consistent
        yield result, CommandStatus.OK

    inputs = {"t": t, "pair1": [x1, y1], "pair2": [x2, y2], "r": r, "g": g,
              "random": count, "seed": seed}
    _execute(ctx, "integrality", inputs, produce)


@app.command()
def bounds(
    ctx: typer.Context,
    r_max: int = typer.Option(5, "--r-max", min=1, help="Largest r for the (A) and (F) bounds."),
    sweep: int = typer.Option(10_000, "--sweep", min=1, help="Range of the Stirling and X_r sweeps."),
):
    """
    Analytic bounds: |A| and |F| samples, Stirling, X_r, table floors.

    [bold cyan]Examples:[/]

        quarticpell bounds

        quarticpell bounds --r-max 8 --sweep 1000
    """
    from src import gap_principle as gp
    from src import pade_hypergeometric as ph

    def produce():
        bound_a = {f"{r},{g}": ph.bound_a_check(r, g) for r in range(1, r_max + 1) for g in (0, 1)}
        bound_f = {f"{r},{g}": ph.bound_f_check(r, g) for r in range(1, min(r_max, 5) + 1) for g in (0, 1)}
        floors = {r: ph.table_floor_check(r) for r in range(1, 6)}
        stirling_failures = gp.stirling_sweep(sweep)
        xr_failures = gp.xr_sweep(sweep)
        ok = (
            all(bound_a.values()) and all(bound_f.values()) and all(floors.values())
            and not stirling_failures and not xr_failures
        )
        yield {
            "bound_a": bound_a,
            "bound_f": bound_f,
            "table_floors": floors,
            "stirling_failures": stirling_failures,
            "xr_failures": xr_failures,
        }, _status(ok)

    _execute(ctx, "bounds", {"r_max": r_max, "sweep": sweep}, produce)


if __name__ == "__main__":
    app()
