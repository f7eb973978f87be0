"""Command-line front end.

Subcommands mirror the pipeline stages: check-rel, classify, build, links,
kpi1, acyl, develop.  Exit code 0 means the checked condition holds, 2
means it fails, 1 means the input could not be used.  Reports are
deterministic for a fixed input and configuration.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import coxeter
from .acyl_checker import check_acylindricity
from .defining_graph import (
    GraphError,
    check_rel,
    check_rel_prime,
    classifier_to_dict,
    classify_known,
    inter_edges,
    parse_graph,
)
from .girth_checker import CertifyConfig, certify_link_condition
from .kpi1_checker import kpi1_verdict
from .link_builder import develop_link_interedge, develop_link_part
from .poset_complex import (
    assign_metric,
    build_S_bar,
    build_S_ell,
    build_S_f,
    check_gluing,
    check_two_dimensional,
    derived_complex,
)


@dataclass
class RunConfig:
    input_path: str
    subcommand: str
    radius_case1: int
    radius_case3: int | None
    cap: int
    fmt: str
    tolerance: float


def _emit(doc, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        _emit_text(doc)


def _emit_text(doc, indent: int = 0) -> None:
    pad = "  " * indent
    if isinstance(doc, dict):
        for key in doc:
            val = doc[key]
            if isinstance(val, (dict, list)) and val:
                sys.stdout.write(f"{pad}{key}:\n")
                _emit_text(val, indent + 1)
            else:
                sys.stdout.write(f"{pad}{key}: {_scalar(val)}\n")
    elif isinstance(doc, list):
        for val in doc:
            if isinstance(val, (dict, list)):
                sys.stdout.write(f"{pad}-\n")
                _emit_text(val, indent + 1)
            else:
                sys.stdout.write(f"{pad}- {_scalar(val)}\n")
    else:
        sys.stdout.write(f"{pad}{_scalar(doc)}\n")


def _scalar(val) -> str:
    if val is None:
        return "null"
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, (list, dict)):
        return "[]" if val == [] else "{}"
    return str(val)


def _load(cfg: RunConfig):
    with open(cfg.input_path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _rel_doc(verdict) -> dict:
    return {
        "ok": verdict.ok,
        "violations": [
            {"u": e.u, "v": e.v, "m": e.label} for e in verdict.violations
        ],
    }


def cmd_check_rel(cfg: RunConfig) -> int:
    graph, family = _load(cfg)
    rel = check_rel(graph, family)
    relp = check_rel_prime(graph, family)
    _emit({"rel": _rel_doc(rel), "rel_prime": _rel_doc(relp)}, cfg.fmt)
    return 0 if relp.ok else 2


def cmd_classify(cfg: RunConfig) -> int:
    graph, family = _load(cfg)
    doc = {
        "graph": classifier_to_dict(classify_known(graph)),
        "parts": [
            {
                "vertices": list(part),
                "report": classifier_to_dict(classify_known(graph.induced(part))),
                "coxeter_kind": coxeter.classify_type(graph, part).kind,
            }
            for part in family.parts
        ],
    }
    _emit(doc, cfg.fmt)
    return 0


def cmd_build(cfg: RunConfig) -> int:
    graph, family = _load(cfg)
    s_ell = build_S_ell(graph, family)
    s_f = build_S_f(graph)
    s_bar = build_S_bar(graph, family)
    cx_ell = derived_complex(s_ell)
    cx_bar = derived_complex(s_bar)
    dim = check_two_dimensional(cx_ell)
    gluing = check_gluing(assign_metric(cx_ell, graph, family))
    if cfg.fmt == "dot":
        sys.stdout.write(s_ell.to_dot())
        return 0 if dim.ok and gluing.ok else 2
    doc = {
        "S_ell": s_ell.to_json_dict(),
        "S_f_size": len(s_f.elements),
        "S_bar_size": len(s_bar.elements),
        "complex_S_ell": cx_ell.to_json_dict(),
        "complex_S_bar_chain_count": len(cx_bar.chains),
        "two_dimensional": {"ok": dim.ok, "max_chain_length": dim.max_chain_length},
        "gluing": {"ok": gluing.ok, "conflicts": gluing.conflicts},
    }
    _emit(doc, cfg.fmt)
    return 0 if dim.ok and gluing.ok else 2


def _certify_config(cfg: RunConfig) -> CertifyConfig:
    return CertifyConfig(
        radius_case1=cfg.radius_case1, radius_case3=cfg.radius_case3, cap=cfg.cap
    )


def cmd_links(cfg: RunConfig) -> int:
    graph, family = _load(cfg)
    report = certify_link_condition(graph, family, _certify_config(cfg))
    _emit(report.to_json_dict(), cfg.fmt)
    return 0 if report.ok else 2


def cmd_kpi1(cfg: RunConfig) -> int:
    graph, family = _load(cfg)
    verdict = kpi1_verdict(graph, family, certify_config=_certify_config(cfg))
    _emit(verdict.to_json_dict(), cfg.fmt)
    return 0 if verdict.holds else 2


def cmd_acyl(cfg: RunConfig) -> int:
    # the growth radii are small and fixed, so the development cap flag is
    # not threaded through here
    graph, family = _load(cfg)
    verdict = check_acylindricity(graph, family)
    _emit(verdict.to_json_dict(), cfg.fmt)
    return 0 if verdict.ok else 2


def cmd_develop(cfg: RunConfig, part: int | None, edge: tuple[str, str] | None) -> int:
    graph, family = _load(cfg)
    if (part is None) == (edge is None):
        raise GraphError("develop needs exactly one of --part or --edge")
    if part is not None:
        if not 0 <= part < len(family.parts):
            raise GraphError(f"part index {part} out of range")
        link = develop_link_part(
            graph, family, part, radius=cfg.radius_case1, cap=cfg.cap
        )
    else:
        u, v = edge
        ie = next(
            (e for e in inter_edges(graph, family) if e.pair == frozenset((u, v))),
            None,
        )
        if ie is None:
            raise GraphError(f"{u!r},{v!r} is not an inter-edge of the family")
        link = develop_link_interedge(
            graph, family, ie, radius=cfg.radius_case3, cap=cfg.cap
        )
    if cfg.fmt == "dot":
        sys.stdout.write(link.to_dot())
    else:
        _emit(link.to_json_dict(), cfg.fmt)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="instance JSON file")
    common.add_argument(
        "--format", choices=("json", "text", "dot"), default="text", dest="fmt"
    )
    common.add_argument("--radius-case1", type=int, default=16)
    common.add_argument(
        "--radius-case3",
        type=int,
        default=None,
        help="development radius for inter-edge links (default 8m per edge)",
    )
    common.add_argument("--cap", type=int, default=4000)
    common.add_argument("--tolerance", type=float, default=1e-9)

    parser = argparse.ArgumentParser(
        prog="relartin",
        description="checks for graph-of-parts presentations: label conditions, "
        "curvature certificates, asphericity reduction, acylindricity",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("check-rel", parents=[common])
    sub.add_parser("classify", parents=[common])
    sub.add_parser("build", parents=[common])
    sub.add_parser("links", parents=[common])
    sub.add_parser("kpi1", parents=[common])
    sub.add_parser("acyl", parents=[common])
    dev = sub.add_parser("develop", parents=[common])
    dev.add_argument("--part", type=int, default=None, help="part index to develop")
    dev.add_argument(
        "--edge", nargs=2, metavar=("U", "V"), default=None, help="inter-edge to develop"
    )
    return parser


_DOT_CAPABLE = {"build", "develop"}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    cfg = RunConfig(
        input_path=args.input,
        subcommand=args.subcommand,
        radius_case1=args.radius_case1,
        radius_case3=args.radius_case3,
        cap=args.cap,
        fmt=args.fmt,
        tolerance=args.tolerance,
    )
    if cfg.radius_case1 < 1 or (cfg.radius_case3 is not None and cfg.radius_case3 < 1):
        sys.stderr.write("error: radii must be >= 1\n")
        return 1
    if cfg.cap < 1:
        sys.stderr.write("error: cap must be >= 1\n")
        return 1
    if cfg.tolerance <= 0:
        sys.stderr.write("error: tolerance must be > 0\n")
        return 1
    if cfg.fmt == "dot" and cfg.subcommand not in _DOT_CAPABLE:
        sys.stderr.write("error: dot output is only available for build and develop\n")
        return 1
    try:
        if cfg.subcommand == "check-rel":
            return cmd_check_rel(cfg)
        if cfg.subcommand == "classify":
            return cmd_classify(cfg)
        if cfg.subcommand == "build":
            return cmd_build(cfg)
        if cfg.subcommand == "links":
            return cmd_links(cfg)
        if cfg.subcommand == "kpi1":
            return cmd_kpi1(cfg)
        if cfg.subcommand == "acyl":
            return cmd_acyl(cfg)
        if cfg.subcommand == "develop":
            edge = tuple(args.edge) if args.edge else None
            return cmd_develop(cfg, args.part, edge)
    except FileNotFoundError:
        sys.stderr.write(f"error: cannot read {cfg.input_path!r}\n")
        return 1
    except GraphError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except BrokenPipeError:
        # downstream pager or head closed the stream; not our failure
        try:
            sys.stdout.close()
        except BrokenPipeError:
            pass
        return 0
    raise AssertionError("unreachable subcommand")


if __name__ == "__main__":
    sys.exit(main())
