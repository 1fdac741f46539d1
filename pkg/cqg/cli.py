"""
CQG Toolbox — Command-line interface.

Usage examples::

    # Run the invariant suite on a built-in instance
    cqg verify --instance s3 --seed 42
    cqg verify --instance suq2 --q 0.5 --level 4 --out report.json

    # Inspect irreps and fusion rules
    cqg info --instance onplus --n 3 --level 3
    cqg fusion --instance s3 --product v v

    # Write basis elements, convolve and project them
    cqg element --instance suq2 --space L1 --irrep 1 --row 0 --col 1 --out a.json
    cqg element --instance suq2 --space L1 --irrep 1 --row 1 --col 0 --out b.json
    cqg conv a.json b.json --instance suq2 --out ab.json
    cqg project x.json --kind beta2 --instance suq2

    # Save a built-in instance as a JSON file
    cqg export --instance dual:s3 --out dual_s3.json

    # Launch the web dashboard
    cqg web

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from cqg.config.constants import (
    BUILTIN_S3,
    DEFAULT_ONPLUS_N,
    DEFAULT_Q,
    DEFAULT_SEED,
    EXIT_CHECK_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    PROJECTION_KINDS,
    RANDOM_SAMPLE_COUNT,
    REPORT_FORMATS,
    SPACE_L1,
    SPACE_L2,
    SPACE_LINF,
    STATUS_FAIL,
    STATUS_PASS,
)
from cqg.core.errors import CQGError, InstanceValidationError

app = typer.Typer(
    name="cqg",
    help="Finite-truncation harmonic analysis on compact quantum groups",
    add_completion=False,
    rich_markup_mode="rich",
)
console = Console()

logger = logging.getLogger("cqg")

_ICONS = {STATUS_PASS: "[green]✓[/green]", STATUS_FAIL: "[red]✗[/red]"}


# ─────────────────────────────────────────────────────────────────────────────
#  shared plumbing
# ─────────────────────────────────────────────────────────────────────────────

@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress at DEBUG level."),
):
    """Finite-truncation harmonic analysis on compact quantum groups."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


@contextmanager
def _input_errors() -> Iterator[None]:
    """Map toolbox and file errors to exit code 2."""
    try:
        yield
    except InstanceValidationError as exc:
        console.print(f"[red]✗ Invalid instance:[/red] {exc}")
        for r in exc.report.violations:
            console.print(f"    {r.check_name}: {r.witness}")
        raise typer.Exit(EXIT_USAGE)
    except (CQGError, FileNotFoundError, OSError) as exc:
        console.print(f"[red]✗ {type(exc).__name__}:[/red] {exc}")
        raise typer.Exit(EXIT_USAGE)


def _resolve(instance: str, q: float, level: Optional[int], n: int, *, validate: bool = True):
    from cqg.core.instances import resolve_instance

    return resolve_instance(instance, q=q, level=level, n=n, validate=validate)


def _element_table(x, title: str) -> Table:
    from cqg.core.fusion_data import CharacterRingElement

    table = Table(title=title)
    table.add_column("Irrep", style="cyan")
    if isinstance(x, CharacterRingElement):
        table.add_column("Coefficient", justify="right")
        for label, c in x.coeffs.items():
            if abs(c) > 1e-15:
                table.add_row(label, f"{complex(c):.6g}")
        return table
    table.add_column("Row", justify="right")
    table.add_column("Col", justify="right")
    table.add_column("Coefficient", justify="right")
    for label, i, j, c in x.terms(1e-15):
        table.add_row(label, str(i), str(j), f"{c:.6g}")
    return table


InstanceOpt = typer.Option(
    BUILTIN_S3, "--instance", "-i",
    help="Built-in selector (s3, fun:<group>, dual:<group>, suq2, onplus) or a JSON instance file.",
)
QOpt = typer.Option(DEFAULT_Q, "--q", help="Deformation parameter for suq2, in (0, 1].")
LevelOpt = typer.Option(None, "--level", "-L", help="Truncation level for suq2 / onplus.")
NOpt = typer.Option(DEFAULT_ONPLUS_N, "--n", help="N for onplus (N ≥ 2).")
OutOpt = typer.Option(None, "--out", "-o", help="Write the result to this file.")


# ─────────────────────────────────────────────────────────────────────────────
#  verify
# ─────────────────────────────────────────────────────────────────────────────

@app.command()
def verify(
    instance: str = InstanceOpt,
    q: float = QOpt,
    level: Optional[int] = LevelOpt,
    n: int = NOpt,
    seed: int = typer.Option(DEFAULT_SEED, "--seed", help="Seed for every randomized check."),
    tolerance: Optional[float] = typer.Option(
        None, "--tolerance", "-t", help="Residual threshold (defaults to the instance tolerance).",
    ),
    samples: int = typer.Option(
        RANDOM_SAMPLE_COUNT, "--samples", min=1, help="Random cases per randomized check.",
    ),
    workers: int = typer.Option(1, "--workers", "-w", min=1, help="Run checks on this many threads."),
    checks: Optional[List[str]] = typer.Option(
        None, "--checks", help="Run only these check ids (e.g. l1.matrix_units). Omit to run all.",
    ),
    out: Optional[Path] = OutOpt,
    report_format: str = typer.Option("json", "--format", "-f", help="Report format: json, txt or csv."),
):
    """Run the invariant suite on an instance."""
    from cqg.core.verify import run_suite
    from cqg.io.reporters import write_csv_report, write_json_report, write_text_report

    if report_format not in REPORT_FORMATS:
        console.print(f"[red]✗ Unknown report format {report_format!r}[/red] (expected {', '.join(REPORT_FORMATS)})")
        raise typer.Exit(EXIT_USAGE)

    with _input_errors():
        bundle = _resolve(instance, q, level, n, validate=False)
        g = bundle.data
        console.print(f"\n[bold]Running checks on {g.name}…[/bold]")
        report = run_suite(
            g,
            seed,
            tolerance,
            norm_oracle=bundle.norm_oracle,
            brute_force=bundle.brute_force,
            samples=samples,
            workers=workers,
            checks=checks or None,
        )

    summary = Table(title=f"Verification Summary — {g.name}")
    summary.add_column("Check", style="cyan")
    summary.add_column("Status", justify="center")
    summary.add_column("Residual", justify="right")
    summary.add_column("Witness / reason")
    for r in report.checks:
        icon = _ICONS.get(r.status, "[dim]–[/dim]")
        if r.expected_failure:
            icon += " [dim](xfail)[/dim]"
        summary.add_row(r.check_id, icon, f"{r.worst_residual:.2e}", r.witness or r.reason)
    console.print(summary)

    if out is not None:
        with _input_errors():
            writer = {"json": write_json_report, "txt": write_text_report, "csv": write_csv_report}[report_format]
            path = writer(report, out)
        console.print(f"\n  Report: [cyan]{path}[/cyan]")

    if report.ok:
        console.print("\n[green]✓ All checks passed![/green]\n")
        raise typer.Exit(EXIT_OK)
    console.print(f"\n[red]✗ {len(report.violations)} check(s) failed.[/red]\n")
    raise typer.Exit(EXIT_CHECK_FAILURE)


# ─────────────────────────────────────────────────────────────────────────────
#  conv
# ─────────────────────────────────────────────────────────────────────────────

@app.command()
def conv(
    left: Path = typer.Argument(..., help="Left element file."),
    right: Path = typer.Argument(..., help="Right element file."),
    instance: str = InstanceOpt,
    q: float = QOpt,
    level: Optional[int] = LevelOpt,
    n: int = NOpt,
    out: Optional[Path] = OutOpt,
):
    """Convolve two L¹ (or two L²) elements."""
    from cqg.core.errors import SpaceMismatchError
    from cqg.core.l1_algebra import convolve
    from cqg.core.l2_space import convolve_l2
    from cqg.io.readers import element_space, load_element, save_element

    with _input_errors():
        g = _resolve(instance, q, level, n).data
        left_space, right_space = element_space(left), element_space(right)
        if left_space != right_space:
            raise SpaceMismatchError(f"cannot convolve a {left_space} element with a {right_space} element")
        if left_space not in (SPACE_L1, SPACE_L2):
            raise SpaceMismatchError(f"convolution is defined on L1 and L2, not {left_space}")
        f, h = load_element(left, g), load_element(right, g)
        result = convolve(g, f, h) if left_space == SPACE_L1 else convolve_l2(g, f, h)
        console.print(_element_table(result, f"{left.name} ⋆ {right.name}"))
        if out is not None:
            console.print(f"\n  Saved: [cyan]{save_element(result, out, instance=g.name)}[/cyan]\n")


# ─────────────────────────────────────────────────────────────────────────────
#  project
# ─────────────────────────────────────────────────────────────────────────────

@app.command()
def project(
    element: Path = typer.Argument(..., help="Element file to project."),
    kind: str = typer.Option(..., "--kind", "-k", help="beta2, beta2-coproduct, pq, beta1 or r."),
    instance: str = InstanceOpt,
    q: float = QOpt,
    level: Optional[int] = LevelOpt,
    n: int = NOpt,
    out: Optional[Path] = OutOpt,
):
    """Apply β₂(φ), P_q, β₁ or the restriction map r to an element."""
    from cqg.core.elements import L1Element, L2Vector, LinfElement, require_space
    from cqg.core.errors import SpaceMismatchError
    from cqg.core.l1_algebra import beta1
    from cqg.core.l2_space import beta2_haar, beta2_haar_via_coproduct, pq_projection, restrict_r
    from cqg.io.readers import load_element, save_element

    if kind not in PROJECTION_KINDS:
        console.print(f"[red]✗ Unknown projection {kind!r}[/red] (expected {', '.join(PROJECTION_KINDS)})")
        raise typer.Exit(EXIT_USAGE)

    operations = {
        "beta2": (L2Vector, beta2_haar),
        "beta2-coproduct": (L2Vector, beta2_haar_via_coproduct),
        "pq": (L2Vector, pq_projection),
        "beta1": (L1Element, beta1),
        "r": (LinfElement, restrict_r),
    }
    with _input_errors():
        g = _resolve(instance, q, level, n).data
        x = load_element(element, g)
        cls, operation = operations[kind]
        if not hasattr(x, "space"):
            raise SpaceMismatchError(f"{kind} needs an {cls.space} element, got a character-ring element")
        require_space(x, cls, kind)
        result = operation(g, x)
        console.print(_element_table(result, f"{kind}({element.name})"))
        if out is not None:
            console.print(f"\n  Saved: [cyan]{save_element(result, out, instance=g.name)}[/cyan]\n")


# ─────────────────────────────────────────────────────────────────────────────
#  info / fusion
# ─────────────────────────────────────────────────────────────────────────────

@app.command()
def info(
    instance: str = InstanceOpt,
    q: float = QOpt,
    level: Optional[int] = LevelOpt,
    n: int = NOpt,
):
    """Print the irrep table of an instance."""
    from cqg.core.fusion_data import irrep_frame

    with _input_errors():
        g = _resolve(instance, q, level, n).data

    frame = irrep_frame(g)
    table = Table(title=f"Irreps — {g.name}")
    table.add_column("Label", style="cyan")
    table.add_column("Dim", justify="right")
    table.add_column("F-eigenvalues")
    table.add_column("d_α", justify="right")
    table.add_column("Conjugate")
    table.add_column("σ")
    for row in frame.itertuples(index=False):
        table.add_row(
            row.label,
            str(row.dim),
            row.f_eigenvalues,
            f"{row.quantum_dimension:.6g}",
            row.conjugate,
            row.conj_index_map,
        )
    console.print(table)
    console.print(
        f"  Trivial: [cyan]{g.trivial}[/cyan]   Kac: {'yes' if g.is_kac else 'no'}   "
        f"Basis size: {g.basis_size:,}   Tolerance: {g.tolerance:g}\n"
    )


@app.command()
def fusion(
    instance: str = InstanceOpt,
    q: float = QOpt,
    level: Optional[int] = LevelOpt,
    n: int = NOpt,
    product: Optional[List[str]] = typer.Option(
        None, "--product", "-p", help="Fuse χ^A · χ^B; give the option twice (A, then B).",
    ),
    lossy: bool = typer.Option(
        False, "--lossy-fusion", help="Drop out-of-window terms instead of failing.",
    ),
):
    """Print the fusion table, or the fusion of two characters."""
    from cqg.core.fusion_data import character, fuse_characters, fusion_frame

    with _input_errors():
        g = _resolve(instance, q, level, n).data

        if product:
            if len(product) != 2:
                console.print("[red]✗ --product needs exactly two irrep labels[/red]")
                raise typer.Exit(EXIT_USAGE)
            a, b = product
            result = fuse_characters(g, character(g, a), character(g, b), lossy=lossy)
            table = _element_table(result, f"χ^{a} · χ^{b}")
            console.print(table)
            if result.lossy:
                console.print("[yellow]⚠ lossy: out-of-window terms were dropped[/yellow]\n")
            return

    frame = fusion_frame(g)
    table = Table(title=f"Fusion rules — {g.name}")
    table.add_column("a", style="cyan")
    table.add_column("b", style="cyan")
    table.add_column("a ⊗ b")
    table.add_column("Complete", justify="center")
    for row in frame.itertuples(index=False):
        table.add_row(row.a, row.b, row.decomposition, "✓" if row.complete else "[yellow]✗[/yellow]")
    console.print(table)


# ─────────────────────────────────────────────────────────────────────────────
#  element / export
# ─────────────────────────────────────────────────────────────────────────────

@app.command()
def element(
    instance: str = InstanceOpt,
    q: float = QOpt,
    level: Optional[int] = LevelOpt,
    n: int = NOpt,
    space: str = typer.Option(SPACE_L1, "--space", "-s", help="L1, L2 or Linf."),
    irrep: str = typer.Option(..., "--irrep", "-a", help="Irrep label."),
    row: int = typer.Option(0, "--row"),
    col: int = typer.Option(0, "--col"),
    kind: str = typer.Option(
        "basis", "--kind", "-k", help="basis, character or quantum-character.",
    ),
    scale: float = typer.Option(1.0, "--scale", help="Multiply the element by this factor."),
    out: Path = typer.Option(..., "--out", "-o", help="Element file to write."),
):
    """Write a basis element, character or quantum character to an element file."""
    from cqg.core.elements import element_class
    from cqg.io.readers import save_element

    with _input_errors():
        g = _resolve(instance, q, level, n).data
        cls = element_class(space)
        if kind == "basis":
            x = cls.basis(g, irrep, row, col)
        elif kind == "character":
            x = cls.character(g, irrep)
        elif kind == "quantum-character":
            x = cls.quantum_character(g, irrep)
        else:
            console.print(f"[red]✗ Unknown element kind {kind!r}[/red]")
            raise typer.Exit(EXIT_USAGE)
        path = save_element(x * scale, out, instance=g.name)
    console.print(_element_table(x * scale, f"{space} element"))
    console.print(f"\n  Saved: [cyan]{path}[/cyan]\n")


@app.command()
def export(
    instance: str = InstanceOpt,
    q: float = QOpt,
    level: Optional[int] = LevelOpt,
    n: int = NOpt,
    out: Path = typer.Option(..., "--out", "-o", help="Instance file to write."),
):
    """Save an instance as a JSON instance file."""
    from cqg.io.readers import save_instance

    with _input_errors():
        g = _resolve(instance, q, level, n).data
        path = save_instance(g, out)
    console.print(f"\n  Saved [bold]{g.name}[/bold]: [cyan]{path}[/cyan]\n")


# ─────────────────────────────────────────────────────────────────────────────
#  web
# ─────────────────────────────────────────────────────────────────────────────

@app.command()
def web(
    port: int = typer.Option(8501, "--port", "-p", help="Port for the Streamlit server."),
):
    """Launch the CQG Toolbox web dashboard."""
    import subprocess
    import sys

    app_path = Path(__file__).parent / "app.py"
    console.print(f"\n[bold]Launching web dashboard on port {port}…[/bold]\n")
    subprocess.run(
        [sys.executable, "-m", "streamlit", "run", str(app_path), "--server.port", str(port)],
    )


# ─────────────────────────────────────────────────────────────────────────────

if __name__ == "__main__":
    app()
