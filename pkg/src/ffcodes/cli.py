"""Command-line entry point: file-based runs of the recognition/energetics pipeline.

Exit codes: 0 success, 2 "not a line graph" (a valid scientific answer from
`recognize`), 1 operational failure.  Every file-writing run leaves a
<output>.manifest.json with hashed inputs, parameters, and versions, so runs
are reproducible byte for byte.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__, codes, fermion, lattice, linegraph
from .errors import FFCodesError
from .laurent import format_monomial, from_graph_json, to_graph_json

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_LINE_GRAPH = 2


def _sha256(path: str) -> str:
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def _write_json(path: str | None, doc: dict) -> None:
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _manifest(args, inputs: list[str]) -> None:
    if getattr(args, "output", None) is None:
        return
    params = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("func",) and not callable(v)
    }
    doc = {
        "command": args.command,
        "parameters": params,
        "inputs": {p: _sha256(p) for p in inputs if p},
        "versions": {
            "ffcodes": __version__,
            "numpy": np.__version__,
            "python": ".".join(map(str, sys.version_info[:3])),
        },
    }
    _write_json(args.output + ".manifest.json", doc)


def _load_graph(args):
    inputs = []
    if getattr(args, "builtin", None):
        graph = lattice.builtin(args.builtin)
    elif getattr(args, "input", None):
        with open(args.input) as f:
            graph = from_graph_json(json.load(f))
        inputs.append(args.input)
    else:
        raise FFCodesError("provide --input or --builtin")
    return graph, inputs


def _orientation_for(graph, args):
    inputs = []
    name = getattr(args, "orientation", "elementary")
    if name == "elementary":
        return lattice.elementary_orientation(graph), inputs
    with open(name) as f:
        cfg = lattice.config_from_json(graph, json.load(f))
    inputs.append(name)
    return cfg, inputs


# ---------------------------------------------------------------------------
# subcommands


def cmd_recognize(args) -> int:
    graph, inputs = _load_graph(args)
    result = linegraph.recognize(graph)
    if isinstance(result, linegraph.NotLineGraph):
        doc = {
            "not_line_graph": {
                "reason": result.reason,
                "certificate": list(result.certificate),
            }
        }
        _write_json(args.output, doc)
        _manifest(args, inputs)
        return EXIT_NOT_LINE_GRAPH
    doc = {
        "root": to_graph_json(result.root),
        "phi": {
            str(v): [
                {"root_vertex": rv, "offset": format_monomial(off)} for rv, off in pair
            ]
            for v, pair in sorted(result.phi.items())
        },
        "coarsening": list(result.coarsening),
    }
    _write_json(args.output, doc)
    _manifest(args, inputs)
    return EXIT_OK


def cmd_linegraph(args) -> int:
    graph, inputs = _load_graph(args)
    _write_json(args.output, to_graph_json(linegraph.line_graph(graph)))
    _manifest(args, inputs)
    return EXIT_OK


def cmd_cover(args) -> int:
    with open(args.input) as f:
        base = lattice.BaseGraph.from_json(json.load(f))
    _write_json(args.output, to_graph_json(lattice.abelian_cover(base)))
    _manifest(args, [args.input])
    return EXIT_OK


def cmd_enlarge(args) -> int:
    graph, inputs = _load_graph(args)
    factors = tuple(int(t) for t in args.factors.split(","))
    from .laurent import enlarge_cell

    _write_json(args.output, to_graph_json(enlarge_cell(graph, factors)))
    _manifest(args, inputs)
    return EXIT_OK


def cmd_bosonize(args) -> int:
    graph, inputs = _load_graph(args)
    if args.kind == "fiducial":
        ham = codes.fiducial_bosonization(graph)
    else:
        ham = codes.honeycomb_bosonization(graph)
    _write_json(args.output, ham.to_json())
    _manifest(args, inputs)
    return EXIT_OK


def cmd_bands(args) -> int:
    graph, inputs = _load_graph(args)
    cfg, more = _orientation_for(graph, args)
    band = fermion.band_structure(lattice.orient(graph, cfg), args.kgrid)
    dim = band.k_grid.shape[1]
    header = ",".join([f"k_{i+1}" for i in range(dim)] + [f"band_{j+1}" for j in range(band.n_bands)])
    lines = [header]
    for k, row in zip(band.k_grid, band.eigenvalues):
        lines.append(",".join(repr(float(v)) for v in list(k) + list(row)))
    _write_text(args.output, "\n".join(lines) + "\n")
    _manifest(args, inputs + more)
    return EXIT_OK


def cmd_dos(args) -> int:
    graph, inputs = _load_graph(args)
    cfg, more = _orientation_for(graph, args)
    band = fermion.band_structure(lattice.orient(graph, cfg), args.kgrid)
    hist = fermion.dos(band, args.bins)
    lines = ["energy,count"]
    for e, c in zip(hist.centers(), hist.counts):
        lines.append(f"{float(e)!r},{int(c)}")
    _write_text(args.output, "\n".join(lines) + "\n")
    _manifest(args, inputs + more)
    return EXIT_OK


def cmd_gapscan(args) -> int:
    graph, inputs = _load_graph(args)
    report = fermion.gap_scan(graph, max_multiplier=args.max_multiplier, points=args.kgrid)
    doc = {
        "delta": report.delta,
        "single_particle_branch": report.single_particle_branch,
        "sector_branch": report.sector_branch,
        "tau1": report.tau1,
        "tau2": report.tau2,
        "parity_corrected": report.parity_corrected,
        "note": report.upper_bound_note,
        "orientations": [
            {
                "index": r.index,
                "multiplier": list(r.multiplier),
                "flux_signature": list(r.flux_signature),
                "energy_per_site": r.energy_per_site,
                "single_particle_gap": r.single_particle_gap,
                "config": r.config.to_json(),
            }
            for r in report.records
        ],
    }
    _write_json(args.output, doc)
    _manifest(args, inputs)
    return EXIT_OK


def cmd_logicals(args) -> int:
    inputs = []
    sides = tuple(int(t) for t in args.L.split(","))
    if args.fixture:
        if args.fixture != "checkerboard":
            raise FFCodesError(f"unknown fixture {args.fixture!r}")
        if len(sides) == 1:
            sides = (sides[0], sides[0])
        analysis = codes.checkerboard_analysis(args.seed, sides)
    else:
        if not args.input:
            raise FFCodesError("provide --input or --fixture")
        with open(args.input) as f:
            ham = codes.CompactHamiltonian.from_json(json.load(f))
        inputs.append(args.input)
        analysis = codes.analyze_code(ham, sides)
    _write_json(args.output, analysis.to_json())
    _manifest(args, inputs)
    return EXIT_OK


def cmd_builtin_list(args) -> int:
    _write_text(getattr(args, "output", None), "\n".join(lattice.builtin_names()) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ffcodes", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(func=func)
        return sp

    def graph_source(sp):
        sp.add_argument("--input", "-i", help="graph JSON file")
        sp.add_argument("--builtin", help="built-in lattice name (see builtin-list)")

    sp = add("recognize", cmd_recognize, help="root graph of a line graph, or exit 2")
    graph_source(sp)
    sp.add_argument("--output", "-o")

    sp = add("linegraph", cmd_linegraph, help="forward line-graph operation")
    graph_source(sp)
    sp.add_argument("--output", "-o")

    sp = add("cover", cmd_cover, help="Abelian cover of a base graph")
    sp.add_argument("--input", "-i", required=True, help="base graph JSON")
    sp.add_argument("--output", "-o")

    sp = add("enlarge", cmd_enlarge, help="replicate the unit cell")
    graph_source(sp)
    sp.add_argument("--factors", required=True, help="comma-separated per-axis factors")
    sp.add_argument("--output", "-o")

    sp = add("bosonize", cmd_bosonize, help="spin model realizing a frustration graph")
    sp.add_argument("kind", choices=("fiducial", "honeycomb"))
    graph_source(sp)
    sp.add_argument("--output", "-o")

    for name, func in (("bands", cmd_bands), ("dos", cmd_dos)):
        sp = add(name, func, help=f"{name} of an oriented lattice")
        graph_source(sp)
        sp.add_argument("--orientation", default="elementary",
                        help='"elementary" or an OrientationConfig JSON file')
        sp.add_argument("--kgrid", type=int, default=None)
        if name == "dos":
            sp.add_argument("--bins", type=int, default=401)
        sp.add_argument("--output", "-o")

    sp = add("gapscan", cmd_gapscan, help="orientation-resolved gap report")
    graph_source(sp)
    sp.add_argument("--max-multiplier", type=int, default=4)
    sp.add_argument("--kgrid", type=int, default=None)
    sp.add_argument("--output", "-o")

    sp = add("logicals", cmd_logicals, help="stabilizers and logical pairs on a torus")
    sp.add_argument("--input", "-i", help="CompactHamiltonian JSON")
    sp.add_argument("--fixture", help="named fixture (checkerboard)")
    sp.add_argument("--seed", default="y-cycles", choices=("y-cycles", "dimers"))
    sp.add_argument("--L", required=True, help="torus side length(s), comma-separated")
    sp.add_argument("--output", "-o")

    add("builtin-list", cmd_builtin_list, help="list built-in lattices")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FFCodesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
