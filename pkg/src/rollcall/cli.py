"""Administrative command line.

Exit codes: 0 success, 1 operational error, 2 usage error (click's own).
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import bench as bench_mod
from . import idcard as idcard_mod
from . import records as records_mod
from . import schema as schema_mod
from . import storage as storage_mod
from .config import ConnectionConfig, StorageStrategy
from .db import connect
from .errors import RollcallError


def _config(ctx) -> ConnectionConfig:
    return ctx.obj["config"]


def _strategy(ctx) -> StorageStrategy:
    return ctx.obj["strategy"]


@click.group()
@click.option("--config", "config_file", type=click.Path(exists=True), default=None,
              help="JSON config file; environment variables override it.")
@click.option("--strategy", type=click.Choice([s.value for s in StorageStrategy]),
              default=StorageStrategy.LARGE_OBJECT.value, show_default=True,
              help="Photo storage strategy the deployment was migrated with.")
@click.pass_context
def main(ctx, config_file, strategy):
    """Personnel records service: records, photos, ID cards, benchmark."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = ConnectionConfig.load(config_file)
    ctx.obj["strategy"] = StorageStrategy(strategy)


def _run(fn):
    try:
        return fn()
    except RollcallError as exc:
        click.echo(f"error [{exc.code}]: {exc.detail}", err=True)
        sys.exit(1)


@main.command()
@click.option("--target", default="latest", show_default=True,
              help="Target schema version number, or 'latest'.")
@click.pass_context
def migrate(ctx, target):
    """Apply pending schema migrations."""
    def go():
        report = schema_mod.migrate(_config(ctx), _strategy(ctx), target)
        click.echo(f"applied versions: {report.applied_versions}")
        if not report.ok:
            click.echo(f"missing objects: {report.missing_objects}", err=True)
            sys.exit(1)
    _run(go)


@main.command()
@click.pass_context
def verify(ctx):
    """Verify the live schema against the expected objects."""
    def go():
        report = schema_mod.verify_schema(_config(ctx), _strategy(ctx))
        click.echo(f"applied versions: {report.applied_versions}")
        for table, column, resolved in report.photo_columns:
            click.echo(f"photo column {table}.{column} -> {resolved}")
        if not report.ok:
            click.echo(f"missing objects: {report.missing_objects}", err=True)
            sys.exit(1)
        click.echo("schema ok")
    _run(go)


@main.command("emit-ddl")
@click.option("--out", type=click.Path(), required=True,
              help="Directory for V<version>__<description>.sql files.")
@click.pass_context
def emit_ddl(ctx, out):
    """Write the migration scripts as SQL files."""
    def go():
        scripts = schema_mod.generate_ddl(_strategy(ctx))
        for path in schema_mod.write_sql_files(scripts, out):
            click.echo(path)
    _run(go)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--static-dir", type=click.Path(exists=True), default=None,
              help="Serve a built frontend from this directory.")
@click.pass_context
def serve(ctx, host, port, static_dir):
    """Run the HTTP API (refuses to start on a wrong-version schema)."""
    from . import server as server_mod

    _run(lambda: server_mod.serve(_config(ctx), _strategy(ctx), host, port, static_dir))


@main.command("import")
@click.option("--table", "table", type=click.Choice(["employees", "students"]), required=True)
@click.option("--file", "file", type=click.Path(exists=True), required=True)
@click.pass_context
def import_(ctx, table, file):
    """Import records from CSV."""
    def go():
        with connect(_config(ctx)) as db:
            report = records_mod.import_csv(
                db, records_mod.table_for(table), Path(file).read_text(encoding="utf-8"))
        click.echo(f"inserted: {report.inserted}")
        for lineno, reason in report.rejected:
            click.echo(f"rejected line {lineno}: {reason}", err=True)
    _run(go)


@main.command()
@click.option("--table", "table", type=click.Choice(["employees", "students"]), required=True)
@click.option("--file", "file", type=click.Path(), required=True)
@click.pass_context
def export(ctx, table, file):
    """Export records to CSV."""
    def go():
        with connect(_config(ctx)) as db:
            text = records_mod.export_csv(db, records_mod.table_for(table))
        Path(file).write_text(text, encoding="utf-8")
        click.echo(f"wrote {file}")
    _run(go)


@main.command()
@click.option("--table", "table", type=click.Choice(["employees", "students"]), required=True)
@click.option("--id", "rec_id", type=int, required=True)
@click.option("--out", type=click.Path(), required=True)
@click.option("--layout", "layout_file", type=click.Path(exists=True), default=None)
@click.pass_context
def idcard(ctx, table, rec_id, out, layout_file):
    """Render a record's identity card to a PNG file."""
    def go():
        tbl = records_mod.table_for(table)
        layout = idcard_mod.CardLayout.from_file(layout_file) if layout_file else None
        with connect(_config(ctx)) as db:
            rec = records_mod.get_record(db, tbl, rec_id)
            if rec is None:
                from .errors import NotFoundError

                raise NotFoundError(f"no {table} record {rec_id}")
            photo = storage_mod.fetch_photo(db, _strategy(ctx), tbl, rec_id)
        card = idcard_mod.render_card(rec, photo, layout)
        Path(out).write_bytes(card.data)
        click.echo(f"wrote {out}")
    _run(go)


@main.command("vacuum-orphans")
@click.pass_context
def vacuum_orphans(ctx):
    """Unlink large objects referenced by no row."""
    def go():
        with connect(_config(ctx)) as db:
            n = storage_mod.vacuum_orphans(db, _strategy(ctx))
        click.echo(f"reclaimed: {n}")
    _run(go)


@main.command("bench")
@click.option("--spec-file", type=click.Path(exists=True), required=True,
              help="JSON workload spec: strategy, n_images, size_bytes, concurrency, seed.")
@click.option("--out", type=click.Path(), default=None, help="CSV output path.")
@click.option("--warmup", type=int, default=None,
              help="Discard the first N samples per stratum.")
@click.pass_context
def bench(ctx, spec_file, out, warmup):
    """Benchmark store/fetch/delete under the configured strategy."""
    def go():
        spec = bench_mod.WorkloadSpec.from_file(spec_file)
        if warmup is not None:
            spec.warmup = warmup
        report = bench_mod.run_benchmark(_config(ctx), spec)
        click.echo(bench_mod.summary_table(report))
        if out:
            Path(out).write_text(bench_mod.report_to_csv(report), encoding="utf-8")
            click.echo(f"wrote {out}")
    _run(go)


if __name__ == "__main__":
    main()
