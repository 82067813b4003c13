"""Batch command-line client.

Every subcommand marshals its flags into the same request models the HTTP
service consumes.  By default handlers run in-process; --server sends the
request to a running service instead.  Exit codes: 0 success, 1 verification
findings, 2 usage errors.
"""

from __future__ import annotations

import json
import sys

import click

from .service import handlers as H
from .service import schemas as S
from .tropical import ReachabilityError


def _seed_spec(name, seed_json):
    if (name is None) == (seed_json is None):
        raise click.UsageError("give exactly one of --seed NAME or --seed-json FILE")
    if name is not None:
        return S.SeedSpec(name=name)
    with open(seed_json) as fh:
        return S.SeedSpec(seed=S.SeedModel(**json.load(fh)))


def _vec(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise click.UsageError(f"not a comma-separated integer vector: {text!r}")


def _call(ctx, endpoint, fn, request):
    server = ctx.obj.get("server")
    if server:
        import httpx
        r = httpx.post(f"{server.rstrip('/')}/{endpoint}",
                       json=request.model_dump(), timeout=None)
        if r.status_code == 422:
            raise click.UsageError(r.json().get("detail", r.text))
        r.raise_for_status()
        return r.json()
    try:
        return fn(request).model_dump()
    except H.UsageError as exc:
        raise click.UsageError(str(exc))
    except ReachabilityError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


def _emit(ctx, data, dot=None, pretty=None):
    fmt = ctx.obj.get("format", "json")
    out = ctx.obj.get("out")
    if fmt == "dot" and dot is not None:
        text = dot
    elif fmt == "pretty" and pretty is not None:
        text = pretty
    else:
        text = json.dumps(data, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@click.group()
@click.option("--server", default=None, help="URL of a running service; "
              "defaults to in-process execution")
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "dot", "pretty"]))
@click.option("--out", default=None, help="write output to a file")
@click.pass_context
def main(ctx, server, fmt, out):
    """Crystal structures on tropical points of cluster varieties."""
    ctx.ensure_object(dict)
    ctx.obj.update(server=server, format=fmt, out=out)


_seed_opts = [
    click.option("--seed", "name", default=None,
                 help="catalog name, e.g. unipotent:A3, base-affine:A2, "
                      "grassmannian:2x3, omega:A2, canonical:2,3,6"),
    click.option("--seed-json", default=None, help="path to a seed JSON file"),
    click.option("--index-set", "iset", default=None,
                 help="comma-separated frozen vertices to use as I"),
]


def seed_opts(fn):
    for opt in reversed(_seed_opts):
        fn = opt(fn)
    return fn


@main.command()
@seed_opts
@click.pass_context
def seed(ctx, name, seed_json, iset):
    """Load, normalize, and emit a seed."""
    _emit(ctx, _call(ctx, "seed", H.normalize_seed, _seed_spec(name, seed_json)))


@main.command()
@seed_opts
@click.option("--steps", required=True, help="comma-separated mutation vertices")
@click.pass_context
def mutate(ctx, name, seed_json, iset, steps):
    """Mutate a seed along a vertex sequence."""
    req = S.MutateRequest(seed=_seed_spec(name, seed_json), steps=_vec(steps))
    _emit(ctx, _call(ctx, "mutate", H.mutate, req))


@main.command()
@seed_opts
@click.pass_context
def invariants(ctx, name, seed_json, iset):
    """Per-frozen-vertex boundary invariants."""
    req = S.InvariantsRequest(seed=_seed_spec(name, seed_json))
    _emit(ctx, _call(ctx, "invariants", H.invariants, req))


@main.command()
@seed_opts
@click.pass_context
def cartan(ctx, name, seed_json, iset):
    """Cartan data, tau-exact pairs, and the grading."""
    req = S.CartanRequest(seed=_seed_spec(name, seed_json),
                          I=_vec(iset) if iset else None)
    _emit(ctx, _call(ctx, "cartan", H.cartan, req))


@main.command()
@seed_opts
@click.option("--delta", required=True)
@click.pass_context
def rho(ctx, name, seed_json, iset, delta):
    """String lengths, weights, and mu-supportedness of a weight vector."""
    req = S.DeltaRequest(seed=_seed_spec(name, seed_json), delta=_vec(delta),
                         I=_vec(iset) if iset else None)
    _emit(ctx, _call(ctx, "rho", H.rho, req))


@main.command()
@seed_opts
@click.option("--delta", required=True)
@click.option("--word", required=True, help="comma-separated frozen vertices")
@click.pass_context
def kashiwara(ctx, name, seed_json, iset, delta, word):
    """String data along a word of frozen vertices."""
    req = S.WordRequest(seed=_seed_spec(name, seed_json), delta=_vec(delta),
                        word=_vec(word), I=_vec(iset) if iset else None)
    _emit(ctx, _call(ctx, "kashiwara", H.kashiwara, req))


@main.command(name="crystal-graph")
@seed_opts
@click.option("--box", default=2, type=int)
@click.option("--complete/--no-complete", "complete", default=False,
              help="saturate components under the lowering operators")
@click.option("--weight", default=None, help="restrict to one weight slice")
@click.pass_context
def crystal_graph(ctx, name, seed_json, iset, box, complete, weight):
    """Colored raising graph on the box of mu-supported points."""
    req = S.GraphRequest(seed=_seed_spec(name, seed_json), box=box,
                         I=_vec(iset) if iset else None,
                         close_under_lowering=complete,
                         weight=_vec(weight) if weight else None)
    data = _call(ctx, "crystal-graph", H.graph, req)
    _emit(ctx, data["graph"], dot=data["dot"])


@main.command()
@click.argument("check", type=click.Choice(["axioms", "serre", "bk"]))
@seed_opts
@click.option("--box", default=2, type=int)
@click.option("--exponent-bound", default=1, type=int)
@click.option("--jobs", default=1, type=int,
              help="parallel workers for enumeration checks")
@click.pass_context
def verify(ctx, check, name, seed_json, iset, box, exponent_bound, jobs):
    """Run a verification sweep; exits 1 when violations are found."""
    req = S.VerifyRequest(seed=_seed_spec(name, seed_json), check=check,
                          box=box, I=_vec(iset) if iset else None,
                          exponent_bound=exponent_bound, jobs=jobs)
    data = _call(ctx, "verify", H.verify, req)
    _emit(ctx, data)
    if not data["ok"]:
        sys.exit(1)


@main.command()
@seed_opts
@click.option("--delta", required=True)
@click.pass_context
def character(ctx, name, seed_json, iset, delta):
    """Generic character of a reachable weight as an exact polynomial."""
    req = S.CharacterRequest(seed=_seed_spec(name, seed_json), delta=_vec(delta))
    data = _call(ctx, "character", H.character, req)
    _emit(ctx, data, pretty=data["pretty"])


@main.command()
@seed_opts
@click.option("-i", "--vertex", "i", required=True, type=int)
@click.option("--kind", default="R", type=click.Choice(["R", "Rstar", "L", "H"]))
@click.pass_context
def derivation(ctx, name, seed_json, iset, i, kind):
    """Images of a lifted crystal derivation on the initial cluster."""
    req = S.DerivationRequest(seed=_seed_spec(name, seed_json), i=i, kind=kind,
                              I=_vec(iset) if iset else None)
    _emit(ctx, _call(ctx, "derivation", H.derivation, req))


@main.command()
@seed_opts
@click.option("--d1", required=True)
@click.option("--d2", required=True)
@click.pass_context
def orders(ctx, name, seed_json, iset, d1, d2):
    """Dominance and string-length order comparison of two weights."""
    req = S.OrdersRequest(seed=_seed_spec(name, seed_json), d1=_vec(d1),
                          d2=_vec(d2), I=_vec(iset) if iset else None)
    _emit(ctx, _call(ctx, "orders", H.orders, req))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8321, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
