"""Command-line entry points.

``serve`` builds the models and runs the HTTP service; ``bench`` runs
the ranked-query benchmark harness directly against the models.  The
``route`` and ``nearest`` commands are thin HTTP clients for a running
server.
"""
from __future__ import annotations

import json
import logging
import sys
from datetime import date as Date
from pathlib import Path

import click
import httpx

from .bench import ALL_ALGORITHMS, BenchConfig, BenchModels, UsageError, run_benchmark, write_csv
from .engine import build_models
from .ingest.osm import DEFAULT_FILTER, parse_filter_file
from .model.modes import ALL_MODES, parse_mode

logger = logging.getLogger(__name__)


def _parse_date(value: str | None) -> Date | None:
    if value is None:
        return None
    return Date.fromisoformat(value)


def _parse_modes(value: str | None):
    if not value:
        return ALL_MODES
    return frozenset(parse_mode(m) for m in value.split(","))


@click.group(context_settings={"auto_envvar_prefix": "POLYROUTE"})
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging.")
def main(verbose: bool) -> None:
    """Multi-modal route planning engine."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.option("--osm", required=True, type=click.Path(exists=True), help="OSM XML file.")
@click.option("--gtfs", type=click.Path(exists=True), help="GTFS feed directory.")
@click.option("--port", default=8080, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--date", "service_date", default=None, help="Service date YYYY-MM-DD.")
@click.option("--static-dir", type=click.Path(exists=True), help="Web UI assets to serve.")
@click.option("--osm-filter", type=click.Path(exists=True), help="Way filter file (--KEEP/--DROP).")
def serve(osm, gtfs, port, host, service_date, static_dir, osm_filter) -> None:
    """Build models and serve the routing API over HTTP."""
    import uvicorn

    from .server.app import create_app

    way_filter = DEFAULT_FILTER
    if osm_filter:
        way_filter = parse_filter_file(Path(osm_filter).read_text())
    models = build_models(
        osm, gtfs, service_date=_parse_date(service_date), osm_filter=way_filter
    )
    app = create_app(models, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--osm", required=True, type=click.Path(exists=True))
@click.option("--gtfs", type=click.Path(exists=True))
@click.option("--algo", required=True, help=f"Comma list from: {', '.join(ALL_ALGORITHMS)}.")
@click.option("--sources", default=50, show_default=True, type=int)
@click.option("--max-rank", default=10, show_default=True, type=int, help="Largest rank exponent K (ranks 2^0..2^K).")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--date", "service_date", default=None, help="Service date YYYY-MM-DD.")
@click.option("--modes", default=None, help="Comma list of allowed modes (default: all).")
@click.option("--out", type=click.Path(), default=None, help="CSV output file (default: stdout).")
def bench(osm, gtfs, algo, sources, max_rank, seed, service_date, modes, out) -> None:
    """Run the Dijkstra-rank / time-sweep benchmark and emit CSV."""
    algorithms = tuple(a.strip() for a in algo.split(",") if a.strip())
    try:
        config = BenchConfig(
            algorithms=algorithms,
            sources=sources,
            max_rank_exp=max_rank,
            seed=seed,
            modes=_parse_modes(modes),
        )
        models = build_models(osm, gtfs, service_date=_parse_date(service_date))
        bench_models = BenchModels(
            road=models.road,
            timetable=models.timetable,
            transit=models.transit,
            link=models.link if "linkgraph-dijkstra" in algorithms else None,
            anr=models.anr,
        )
        rows = run_benchmark(bench_models, config)
    except UsageError as exc:
        raise click.UsageError(str(exc)) from exc
    if out:
        with open(out, "w", newline="") as fh:
            write_csv(rows, fh)
        click.echo(f"wrote {len(rows)} rows to {out}")
    else:
        write_csv(rows, sys.stdout)


@main.command()
@click.option("--server", "server_url", default="http://127.0.0.1:8080", show_default=True)
@click.option("--from", "from_", required=True, help="Node id or lat,lng in degrees.")
@click.option("--to", required=True, help="Node id or lat,lng in degrees.")
@click.option("--dep-time", default="12:00:00", show_default=True)
@click.option("--modes", default="car,bike,foot,tram", show_default=True)
def route(server_url, from_, to, dep_time, modes) -> None:
    """Query a running server for journeys (thin client)."""

    def endpoint(text: str):
        if "," in text:
            lat, lng = (float(p) for p in text.split(",", 1))
            return {"lat": lat, "lng": lng}
        return int(text)

    body = {
        "depTime": dep_time,
        "modes": [m.strip() for m in modes.split(",")],
        "from": endpoint(from_),
        "to": endpoint(to),
    }
    response = httpx.post(f"{server_url}/route", json=body, timeout=60.0)
    response.raise_for_status()
    click.echo(json.dumps(response.json(), indent=2))


@main.command()
@click.option("--server", "server_url", default="http://127.0.0.1:8080", show_default=True)
@click.option("--lat", required=True, type=float)
@click.option("--lng", required=True, type=float)
def nearest(server_url, lat, lng) -> None:
    """Look up the road node nearest to a coordinate (thin client)."""
    response = httpx.get(
        f"{server_url}/nearest", params={"lat": lat, "lng": lng}, timeout=30.0
    )
    response.raise_for_status()
    click.echo(json.dumps(response.json(), indent=2))


if __name__ == "__main__":
    main()
