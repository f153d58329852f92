"""Operations CLI: ingest a manifest, serve the API, analyze a session log."""

from __future__ import annotations

import json
import socket
import sys
from pathlib import Path

import click

from gensearch.errors import GensearchError, PortInUse


@click.group()
def main() -> None:
    """Image search with generative query refinement."""


@main.command()
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False))
@click.option("--dimension", default=64, show_default=True, help="Embedding dimension to validate against.")
def ingest(manifest: str, dimension: int) -> None:
    """Validate a corpus manifest and report what the server would load."""
    from gensearch.corpus.store import CorpusStore

    store = CorpusStore(dimension=dimension)
    summary = store.ingest_manifest(manifest)
    click.echo(f"loaded {summary.count} records (dimension {summary.dimension})")
    for skipped in summary.skipped:
        click.echo(f"  skipped line {skipped.line_no}: {skipped.reason}", err=True)
    if summary.skipped:
        click.echo(f"{len(summary.skipped)} lines skipped", err=True)


def _check_port(port: int) -> None:
    """Fail fast with a clear error instead of a uvicorn traceback."""
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as sock:
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            sock.bind(("127.0.0.1", port))
        except OSError as exc:
            raise PortInUse(f"port {port}: {exc}") from exc


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(config_path: str, host: str) -> None:
    """Start the HTTP service; shutdown waits for in-flight requests."""
    import uvicorn

    from gensearch.service.app import create_app
    from gensearch.service.config import load_config
    from gensearch.service.runtime import Runtime

    config = load_config(config_path)
    runtime = Runtime(config)
    summary = runtime.ingest()
    click.echo(f"corpus: {summary.count} records, {len(summary.skipped)} skipped")
    _check_port(config.port)
    uvicorn.run(create_app(runtime), host=host, port=config.port, log_level="info")


@main.command()
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON only.")
def analyze(log_path: str, as_json: bool) -> None:
    """Compute the session pattern report for one JSONL event log."""
    from gensearch.session.log import load_log
    from gensearch.session.patterns import pattern_report

    events = load_log(log_path)
    report = pattern_report(events)
    payload = report.to_dict()
    if as_json:
        click.echo(json.dumps(payload, indent=2))
        return

    counts = payload["counts"]
    click.echo(f"events: {len(events)}  (log: {Path(log_path).name})")
    click.echo("counts:")
    for key in ("T", "I", "show_more", "saves"):
        click.echo(f"  {key:<10} {counts[key]}")
    click.echo("transitions:          with_gen  without_gen")
    for label in ("TT", "TI", "II", "IT"):
        split = payload["transitions"][label]
        click.echo(f"  {label:<20} {split['with_gen']:>8}  {split['without_gen']:>11}")
    click.echo(f"search_by_generation_rate: {payload['search_by_generation_rate']:.4f}")
    click.echo(f"saved_via_generation_rate: {payload['saved_via_generation_rate']:.4f}")
    click.echo(json.dumps(payload))


def run() -> None:
    try:
        main(standalone_mode=True)
    except GensearchError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    run()
