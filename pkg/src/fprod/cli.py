"""Command-line entry point.

Exit codes are a stable contract: 0 for an expected outcome, 1 when a
verification run hits a counterexample or a search finds no witness, 2 for
malformed input, 3 when an instance budget ran out before the grid was
exhausted. Errors go to stderr as one line `error: <code>: <message>`.
JSON output wraps the deterministic body under "report" and puts timing
under "meta" so reports can be compared byte-for-byte.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from typing import Sequence

from . import serialize
from .filters import d_complements_family
from .foundations import InputError, ResourceLimitError, SubsetMask, Universe
from .fproduct import (
    ProductSpec,
    all_projections_continuous,
    f_filter,
    f_topology,
)
from .topology import enumerate_topologies, find_disjoint_dense
from .uniformity import Relation, f_uniformity
from .verifier import (
    FACTOR_PRESETS,
    InstanceGrid,
    PropositionReport,
    enumerate_filters,
    search_counterexample,
    verify_proposition,
)

_CHECK_PROPS = ("hausdorff", "t1", "dense", "resolvable", "continuous-projections")


def _emit(args: argparse.Namespace, body: dict, started: float) -> None:
    if getattr(args, "json", False):
        payload = {"report": body, "meta": {"elapsed_seconds": round(time.monotonic() - started, 6)}}
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        text = _render_text(body)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _render_text(body: dict) -> str:
    kind = body.get("kind")
    lines: list[str] = []
    if kind == "verify" or kind == "search":
        if kind == "verify":
            verdict = "PASS" if body["passed"] else "COUNTEREXAMPLE"
        else:
            verdict = "NONE-FOUND" if body["passed"] else "WITNESS-FOUND"
        lines.append(
            f"{'prop' if kind == 'verify' else 'claim'} {body['prop']}: {verdict} "
            f"checked={body['checked']} complete={'yes' if body['complete'] else 'no'}"
        )
        for note in body["degenerate_notes"]:
            lines.append(f"note: {note}")
        if body["witness"] is not None:
            lines.append("witness:")
            lines.append(json.dumps(body["witness"], indent=2, sort_keys=True))
    elif kind == "check":
        lines.append(f"check {body['prop']}: {str(body['verdict']).lower()}")
        for key, value in sorted(body.get("detail", {}).items()):
            if isinstance(value, list) and all(isinstance(v, str) for v in value):
                lines.append(f"{key.replace('_', ' ')}: {' and '.join(value)}")
            else:
                lines.append(f"{key.replace('_', ' ')}: {json.dumps(value, sort_keys=True)}")
    elif kind == "enumerate":
        lines.append(f"{body['what']} of size {body['size']}: {body['count']}")
        if "note" in body:
            lines.append(f"note: {body['note']}")
        for item in body.get("items", []):
            lines.append(f"item: {json.dumps(item, sort_keys=True)}")
    elif kind == "construct":
        lines.append(json.dumps(body, indent=2, sort_keys=True))
    else:
        lines.append(json.dumps(body, indent=2, sort_keys=True))
    return "\n".join(lines)


def _report_body(kind: str, report: PropositionReport) -> dict:
    body = report.to_dict()
    body["kind"] = kind
    return body


def _load_instance(path: str) -> ProductSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"instance file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"instance file is not valid JSON: {exc}") from None
    return serialize.parse_instance(data)


def _grid_from_args(args: argparse.Namespace, default: InstanceGrid) -> InstanceGrid:
    updates: dict = {}
    if args.index_size is not None:
        updates["index_sizes"] = (args.index_size,)
    if args.factor_size is not None:
        updates["factor_universe_max"] = args.factor_size
    if args.factors is not None:
        updates["factor_source"] = "fixed"
        updates["factor_preset"] = args.factors
    if args.filters is not None:
        if args.filters in ("all", "proper", "trivial"):
            updates["filter_source"] = args.filters
        else:
            updates["filter_source"] = "named"
            updates["named_filters"] = tuple(
                name.strip() for name in args.filters.split(";") if name.strip()
            )
    if args.budget is not None:
        updates["max_instances"] = args.budget
    return dataclasses.replace(default, **updates) if updates else default


def _cmd_verify(args: argparse.Namespace) -> int:
    started = time.monotonic()
    grid = _grid_from_args(args, _default_grid_for(args.prop))
    report = verify_proposition(args.prop, grid)
    _emit(args, _report_body("verify", report), started)
    if not report.complete:
        return 3
    return 0 if report.passed else 1


def _default_grid_for(prop_id: str) -> InstanceGrid:
    from .verifier import _PROPS, OUT_OF_SCOPE  # internal registry

    if prop_id in OUT_OF_SCOPE:
        raise InputError(f"proposition {prop_id} is out of scope: {OUT_OF_SCOPE[prop_id]}")
    if prop_id not in _PROPS:
        raise InputError(
            f"unknown proposition id {prop_id!r}; known ids: {sorted(_PROPS) + sorted(OUT_OF_SCOPE)}"
        )
    return _PROPS[prop_id].default_grid


def _cmd_search(args: argparse.Namespace) -> int:
    started = time.monotonic()
    from .verifier import _CLAIMS

    if args.claim not in _CLAIMS:
        raise InputError(f"unknown claim id {args.claim!r}; known ids: {sorted(_CLAIMS)}")
    grid = _grid_from_args(args, _CLAIMS[args.claim].default_grid)
    report = search_counterexample(args.claim, grid)
    _emit(args, _report_body("search", report), started)
    return 0 if not report.passed else 1


def _cmd_check(args: argparse.Namespace) -> int:
    started = time.monotonic()
    spec = _load_instance(args.instance)
    prop = args.prop
    detail: dict = {}
    if prop == "continuous-projections":
        verdict = all_projections_continuous(spec)
    else:
        t = f_topology(spec)
        if prop == "hausdorff":
            verdict = t.is_hausdorff()
            if not verdict:
                mins = [t.minimal_neighborhood(x) for x in range(spec.indexing.total)]
                pair = next(
                    (x, y)
                    for x in range(len(mins))
                    for y in range(x + 1, len(mins))
                    if not (mins[x] & mins[y]).is_empty
                )
                detail["inseparable_pair"] = [
                    serialize.product_point_label(pair[0], spec),
                    serialize.product_point_label(pair[1], spec),
                ]
        elif prop == "t1":
            verdict = t.is_t1()
        elif prop == "dense":
            if args.set is None:
                raise InputError("check dense needs --set")
            codes = [
                serialize.product_point_from_label(p, spec)
                for p in args.set.split(";")
                if p.strip()
            ]
            mask = SubsetMask.of(spec.indexing.total, codes)
            verdict = t.is_dense(mask)
            detail["set"] = serialize.product_subset_to_labels(mask, spec)
        elif prop == "resolvable":
            if args.n is None:
                raise InputError("check resolvable needs --n")
            found = find_disjoint_dense(t, args.n)
            verdict = found is not None
            if found is not None:
                detail["dense_family"] = [
                    serialize.product_subset_to_labels(m, spec) for m in found
                ]
        else:
            raise InputError(f"unknown check {prop!r}; known: {_CHECK_PROPS}")
    body = {"kind": "check", "prop": prop, "verdict": verdict, "detail": detail}
    _emit(args, body, started)
    return 0


def _cmd_construct(args: argparse.Namespace) -> int:
    started = time.monotonic()
    spec = _load_instance(args.instance)
    what = args.what
    body: dict = {
        "kind": "construct",
        "what": what,
        "points": [
            serialize.product_point_label(c, spec) for c in range(spec.indexing.total)
        ],
    }
    if what == "f-topology":
        t = f_topology(spec)
        body["base"] = [serialize.product_subset_to_labels(m, spec) for m in t.base]
        if spec.indexing.total <= 12:
            body["opens"] = [
                serialize.product_subset_to_labels(m, spec) for m in t.opens()
            ]
    elif what == "f-filter":
        fil = f_filter(spec)
        body["trivial"] = fil.trivial
        body["minimal"] = serialize.product_subset_to_labels(fil.core, spec)
    elif what == "f-uniformity":
        u = f_uniformity(spec)
        total = spec.indexing.total
        body["base"] = [
            [
                [
                    serialize.product_point_label(x, spec),
                    serialize.product_point_label(y, spec),
                ]
                for x, y in Relation(total, m).pair_list()
            ]
            for m in u.base.members
        ]
    else:
        raise InputError(f"unknown construction {what!r}")
    args.json = True  # constructions are inherently data
    _emit(args, body, started)
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    started = time.monotonic()
    what = args.what
    size = args.size
    body: dict = {"kind": "enumerate", "what": what, "size": size}
    uni = Universe.points(size)
    if what == "filters":
        fils = enumerate_filters(size, include_trivial=True)
        body["count"] = len(fils)
        body["items"] = [serialize.filter_to_dict(f, uni) for f in fils]
    elif what == "topologies":
        topos = enumerate_topologies(size)
        body["count"] = len(topos)
        body["items"] = [
            {"opens": serialize.family_to_json(t.opens(), uni)} for t in topos
        ]
    elif what == "d-complements":
        if args.d is None:
            raise InputError("enumerate d-complements needs --d")
        fam, note = d_complements_family(size, args.d)
        body["count"] = len(fam)
        body["items"] = serialize.family_to_json(fam, uni)
        body["note"] = note
    else:
        raise InputError(f"unknown enumeration {what!r}")
    _emit(args, body, started)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fprod",
        description="Constructions and exhaustive checks for filter-indexed product "
        "topologies, filters, and uniformities on finite spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser("construct", help="build a product structure from an instance file")
    p_construct.add_argument("--instance", required=True)
    p_construct.add_argument("--what", required=True,
                             choices=("f-topology", "f-filter", "f-uniformity"))
    p_construct.add_argument("--out")
    p_construct.set_defaults(handler=_cmd_construct, json=True)

    p_check = sub.add_parser("check", help="evaluate a predicate on a constructed product")
    p_check.add_argument("--instance", required=True)
    p_check.add_argument("--prop", required=True, choices=_CHECK_PROPS)
    p_check.add_argument("--set", help="semicolon-separated product points, e.g. '0,0;1,0'")
    p_check.add_argument("--n", type=int, help="number of disjoint dense sets for resolvable")
    p_check.add_argument("--json", action="store_true")
    p_check.add_argument("--out")
    p_check.set_defaults(handler=_cmd_check)

    p_verify = sub.add_parser("verify", help="run the verifier grid for one proposition")
    p_verify.add_argument("--prop", required=True)
    _add_grid_flags(p_verify)
    p_verify.set_defaults(handler=_cmd_verify)

    p_search = sub.add_parser("search", help="search a grid for a counterexample to a claim")
    p_search.add_argument("--claim", required=True)
    _add_grid_flags(p_search)
    p_search.set_defaults(handler=_cmd_search)

    p_enum = sub.add_parser("enumerate", help="print canonical enumerations with counts")
    p_enum.add_argument("--what", required=True,
                        choices=("filters", "topologies", "d-complements"))
    p_enum.add_argument("--size", required=True, type=int)
    p_enum.add_argument("--d", type=int, help="cardinal bound for d-complements")
    p_enum.add_argument("--json", action="store_true")
    p_enum.add_argument("--out")
    p_enum.set_defaults(handler=_cmd_enumerate)

    return parser


def _add_grid_flags(sub_parser: argparse.ArgumentParser) -> None:
    sub_parser.add_argument("--index-size", type=int)
    sub_parser.add_argument("--factor-size", type=int)
    sub_parser.add_argument("--factors", choices=FACTOR_PRESETS)
    sub_parser.add_argument(
        "--filters",
        help="'all', 'proper', 'trivial', or semicolon-separated cores like '1;1,2;trivial'",
    )
    sub_parser.add_argument("--budget", type=int, help="instance budget; exceeding it exits 3")
    sub_parser.add_argument("--json", action="store_true")
    sub_parser.add_argument("--out")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: resource: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
