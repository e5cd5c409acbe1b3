"""Command-line front end.

Exit code contract:
  0  requested property verified / requested object found
  1  verification failed, or the object was proven not to exist
  2  search gave up without a proof (budget exhausted, greedy failure)
  3  input error (unknown command, unreadable file, malformed or
     precondition-violating input)

All randomized paths take a seed (default 0) and record it in the emitted
certificate, so identical invocations produce byte-identical output.
Certificates are self-contained JSON documents with schema "nestkit-cert/1";
each one re-verifies through the matching verify command without the
original inputs.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import cyclic as cy
from . import designs as ds
from . import diff_families as dfm
from . import groups as gr
from . import hypergraph as hg
from . import matching as mt

SCHEMA = "nestkit-cert/1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NOT_FOUND = 2
EXIT_INPUT = 3


class CliInputError(ValueError):
    """Bad command line, unreadable file, or malformed input."""


@dataclass(frozen=True)
class CommandResult:
    code: int
    report: str
    certificate: dict | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise CliInputError(message)


# ---------------------------------------------------------------------------
# input parsing helpers

def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def _parse_element(group: gr.AbelianGroup, token: str) -> gr.Element:
    token = token.strip()
    try:
        if token.startswith("(") and token.endswith(")"):
            return group.element(tuple(int(t) for t in token[1:-1].split(",") if t.strip()))
        return group.element(int(token))
    except ValueError as exc:
        raise CliInputError(f"bad group element {token!r} for {group}: {exc}") from exc


def _parse_group_block(group: gr.AbelianGroup, text: str) -> gr.GroupSubset:
    try:
        return gr.GroupSubset(group, (_parse_element(group, t) for t in _split_top_level(text)))
    except ValueError as exc:
        raise CliInputError(f"bad base block {text!r}: {exc}") from exc


def _format_element(group: gr.AbelianGroup, el: gr.Element) -> str:
    if group.rank == 1:
        return str(el[0])
    return "(" + ",".join(str(x) for x in el) + ")"


def _format_subset(group: gr.AbelianGroup, subset: gr.GroupSubset) -> str:
    return ",".join(_format_element(group, el) for el in subset.elements)


def _element_to_json(group: gr.AbelianGroup, el: gr.Element):
    return el[0] if group.rank == 1 else list(el)


def _element_from_json(group: gr.AbelianGroup, obj) -> gr.Element:
    try:
        return group.element(obj if isinstance(obj, int) else tuple(obj))
    except (TypeError, ValueError) as exc:
        raise CliInputError(f"bad element {obj!r} for {group}: {exc}") from exc


def _data_lines(path: str) -> list[str]:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc
    lines = []
    for line in raw.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _load_design_header(line: str, path: str) -> tuple[int, int, int]:
    parts = line.split()
    if len(parts) != 3:
        raise CliInputError(f"{path}: header must be 'v k lambda', got {line!r}")
    try:
        v, k, lam = (int(p) for p in parts)
    except ValueError as exc:
        raise CliInputError(f"{path}: non-integer header {line!r}") from exc
    return v, k, lam


def load_design_file(path: str) -> ds.Design:
    """Header line "v k lambda", then one block per line as comma-separated
    point indices; '#' starts a comment."""
    lines = _data_lines(path)
    if not lines:
        raise CliInputError(f"{path}: empty design file")
    v, k, lam = _load_design_header(lines[0], path)
    blocks = []
    for line in lines[1:]:
        try:
            blocks.append(tuple(int(t) for t in _split_top_level(line)))
        except ValueError as exc:
            raise CliInputError(f"{path}: bad block line {line!r}") from exc
    try:
        return ds.Design(v=v, k=k, lam=lam, blocks=tuple(blocks))
    except ValueError as exc:
        raise CliInputError(f"{path}: {exc}") from exc


def load_cyclic_file(path: str) -> cy.CyclicBibd:
    """Same grammar as a design file, but the blocks are one base block per
    orbit of a cyclic design."""
    lines = _data_lines(path)
    if not lines:
        raise CliInputError(f"{path}: empty cyclic design file")
    v, k, lam = _load_design_header(lines[0], path)
    bases = []
    for line in lines[1:]:
        try:
            bases.append(tuple(int(t) for t in _split_top_level(line)))
        except ValueError as exc:
            raise CliInputError(f"{path}: bad base block line {line!r}") from exc
    try:
        return cy.CyclicBibd(v=v, k=k, lam=lam, base_blocks=tuple(bases))
    except ValueError as exc:
        raise CliInputError(f"{path}: {exc}") from exc


def _infer_lam(group: gr.AbelianGroup, blocks: Sequence[gr.GroupSubset]) -> int:
    if not blocks:
        raise CliInputError("family needs at least one base block")
    k = len(blocks[0])
    total = len(blocks) * k * (k - 1)
    v = group.order
    if v < 2 or total % (v - 1) != 0:
        raise CliInputError(
            f"cannot infer lambda: {total} differences do not divide evenly "
            f"over {v - 1} nonzero elements (pass --lam)"
        )
    return total // (v - 1)


def _family_from_blocks(
    group: gr.AbelianGroup, blocks: Sequence[gr.GroupSubset], lam: int | None
) -> dfm.DifferenceFamily:
    if lam is None:
        lam = _infer_lam(group, blocks)
    try:
        return dfm.DifferenceFamily(group, tuple(blocks), lam)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc


def load_df_file(path: str, lam: int | None = None) -> dfm.DifferenceFamily:
    """Line 1 is a group spec like Z13 or Z2xZ4; each later line is one base
    block, elements comma-separated (tuples like (0,1) for rank above 1)."""
    lines = _data_lines(path)
    if not lines:
        raise CliInputError(f"{path}: empty difference family file")
    try:
        group = gr.parse_group_spec(lines[0])
    except ValueError as exc:
        raise CliInputError(f"{path}: {exc}") from exc
    blocks = [_parse_group_block(group, line) for line in lines[1:]]
    return _family_from_blocks(group, blocks, lam)


def load_certificate(path: str) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise CliInputError(f"{path}: missing or unsupported schema (want {SCHEMA!r})")
    return doc


def _design_to_json(design: ds.Design) -> dict:
    return {
        "v": design.v,
        "k": design.k,
        "lambda": design.lam,
        "blocks": [list(b) for b in design.blocks],
    }


def _design_from_json(doc: dict, where: str) -> ds.Design:
    try:
        return ds.Design(
            v=int(doc["v"]),
            k=int(doc["k"]),
            lam=int(doc["lambda"]),
            blocks=tuple(tuple(int(x) for x in b) for b in doc["blocks"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CliInputError(f"{where}: bad design document: {exc}") from exc


def _family_from_cert(doc: dict, where: str) -> dfm.DifferenceFamily:
    if doc.get("kind") not in ("difference-family", "banff-difference-family"):
        raise CliInputError(f"{where}: certificate kind {doc.get('kind')!r} is not a family")
    try:
        group = gr.parse_group_spec(doc["group"])
        blocks = tuple(
            gr.GroupSubset(group, (_element_from_json(group, e) for e in b))
            for b in doc["base_blocks"]
        )
        lam = int(doc["lambda"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CliInputError(f"{where}: bad family document: {exc}") from exc
    return _family_from_blocks(group, blocks, lam)


def _write_certificate(doc: dict | None, out: str | None, lines: list[str]) -> None:
    if doc is None or out is None:
        return
    Path(out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    lines.append(f"certificate: written to {out}")


def _solver_config(args: argparse.Namespace) -> mt.SolverConfig:
    kwargs = dict(mode=args.mode, seed=args.seed, parallelism=args.parallelism)
    if args.budget is not None:
        if args.budget < 1:
            raise CliInputError("--budget must be positive")
        kwargs["node_budget"] = args.budget
        kwargs["restart_budget"] = args.budget
    return mt.SolverConfig(**kwargs)


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact",
                   help="exact backtracking (can prove nonexistence) or randomized greedy")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized search")
    p.add_argument("--budget", type=int, default=None,
                   help="node budget (exact) / restart budget (heuristic)")
    p.add_argument("--parallelism", type=int, default=1, help="solver parallelism hint")


# ---------------------------------------------------------------------------
# commands

def _cmd_verify_design(args) -> CommandResult:
    design = load_design_file(args.file)
    lines = [f"design: v={design.v} k={design.k} lambda={design.lam} blocks={design.block_count}"]
    if args.packing:
        rep = ds.verify_packing(design)
        if rep.ok:
            lines.append("packing check: ok")
            return CommandResult(EXIT_OK, "\n".join(lines))
        lines.append(
            f"packing check: FAIL pair {rep.worst_pair} covered {rep.worst_count} times "
            f"(limit {rep.lam})"
        )
        return CommandResult(EXIT_FAIL, "\n".join(lines))
    rep = ds.verify_bibd(design)
    if rep.ok:
        lines.append("bibd check: ok")
        return CommandResult(EXIT_OK, "\n".join(lines))
    lines.append(
        f"bibd check: FAIL pair {rep.witness_pair} covered {rep.witness_count} times "
        f"(expected {rep.lam})"
    )
    return CommandResult(EXIT_FAIL, "\n".join(lines))


def _load_family_args(args) -> dfm.DifferenceFamily:
    sources = [args.file is not None, args.group is not None, args.cert is not None]
    if sum(sources) != 1:
        raise CliInputError("give exactly one of FILE, --group with --blocks, or --cert")
    if args.cert is not None:
        return _family_from_cert(load_certificate(args.cert), args.cert)
    if args.file is not None:
        return load_df_file(args.file, args.lam)
    if not args.blocks:
        raise CliInputError("--group needs at least one --blocks argument")
    try:
        group = gr.parse_group_spec(args.group)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    blocks = [_parse_group_block(group, b) for b in args.blocks]
    return _family_from_blocks(group, blocks, args.lam)


def _family_header(family: dfm.DifferenceFamily) -> str:
    return (
        f"family: group={family.group} k={family.k} lambda={family.lam} "
        f"blocks={len(family.base_blocks)}"
    )


def _df_line(report: dfm.DfReport, group: gr.AbelianGroup) -> tuple[bool, str]:
    if report.ok:
        plural = "s" if report.lam != 1 else ""
        return True, f"df check: ok (each nonzero element covered {report.lam} time{plural})"
    return False, (
        f"df check: FAIL element {_format_element(group, report.element)} covered "
        f"{report.count} times (expected {report.lam})"
    )


def _cmd_verify_df(args) -> CommandResult:
    family = _load_family_args(args)
    ok, line = _df_line(dfm.verify_df(family), family.group)
    report = "\n".join([_family_header(family), line])
    return CommandResult(EXIT_OK if ok else EXIT_FAIL, report)


def _cmd_verify_bdf(args) -> CommandResult:
    family = _load_family_args(args)
    rep = dfm.verify_bdf(family)
    _, df_line = _df_line(rep.df, family.group)
    lines = [_family_header(family), df_line]
    if rep.collision is not None:
        a, b, el = rep.collision
        lines.append(
            f"bdf check: FAIL sets {a} and {b} share element "
            f"{_format_element(family.group, el)}"
        )
    elif rep.df.ok:
        lines.append(
            f"bdf check: ok ({2 * len(family.base_blocks)} block/negative sets "
            "pairwise disjoint)"
        )
    else:
        lines.append("bdf check: FAIL (not a difference family)")
    return CommandResult(EXIT_OK if rep.ok else EXIT_FAIL, "\n".join(lines))


def _family_cert(family: dfm.DifferenceFamily, kind: str) -> dict:
    return {
        "schema": SCHEMA,
        "kind": kind,
        "group": str(family.group),
        "k": family.k,
        "lambda": family.lam,
        "base_blocks": [
            [_element_to_json(family.group, el) for el in b.elements]
            for b in family.base_blocks
        ],
    }


def _cmd_search_df(args) -> CommandResult:
    try:
        group = gr.parse_group_spec(args.group)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    budget = args.budget if args.budget is not None else 2_000_000
    try:
        result = dfm.search_df(group, args.k, args.lam, node_budget=budget)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    lines = [f"search: group={group} k={args.k} lambda={args.lam} nodes={result.nodes}"]
    if result.outcome == "found":
        for i, b in enumerate(result.family.base_blocks):
            lines.append(f"base block {i}: {_format_subset(group, b)}")
        cert = _family_cert(result.family, "difference-family")
        _write_certificate(cert, args.out, lines)
        return CommandResult(EXIT_OK, "\n".join(lines), cert)
    if result.outcome == "exhausted":
        lines.append("search: exhausted, no such difference family exists")
        return CommandResult(EXIT_FAIL, "\n".join(lines))
    lines.append(f"search: node budget {budget} exhausted, no conclusion")
    return CommandResult(EXIT_NOT_FOUND, "\n".join(lines))


def _cmd_bdf_from_df(args) -> CommandResult:
    if args.experiment:
        return _run_bdf_experiment(args)
    family = _load_family_args(args)
    cfg = _solver_config(args)
    try:
        result = dfm.df_to_bdf(family, cfg)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    lines = [
        _family_header(family),
        f"solver: mode={cfg.mode} seed={cfg.seed} outcome={result.solve.outcome} "
        f"nodes={result.solve.nodes} restarts={result.solve.restarts}",
    ]
    if result.found:
        for i, (a, b) in enumerate(zip(result.translations, result.family.base_blocks)):
            lines.append(
                f"base block {i}: translate by {_format_element(family.group, a)} "
                f"-> {_format_subset(family.group, b)}"
            )
        lines.append("bdf check: ok")
        cert = _family_cert(result.family, "banff-difference-family")
        cert["source_blocks"] = [
            [_element_to_json(family.group, el) for el in b.elements]
            for b in family.base_blocks
        ]
        cert["translations"] = [
            _element_to_json(family.group, a) for a in result.translations
        ]
        cert["mode"] = cfg.mode
        cert["seed"] = cfg.seed
        _write_certificate(cert, args.out, lines)
        return CommandResult(EXIT_OK, "\n".join(lines), cert)
    if result.solve.outcome == mt.OUTCOME_NONEXISTENT:
        lines.append(
            "result: no translation assignment of these base blocks is Banff "
            "(exhaustive); other families may still be"
        )
        return CommandResult(EXIT_FAIL, "\n".join(lines))
    lines.append("result: not found within budget")
    return CommandResult(EXIT_NOT_FOUND, "\n".join(lines))


def _run_bdf_experiment(args) -> CommandResult:
    """Data mode: for each admissible cyclic order up to --v-max, enumerate a
    few difference families and try to translate each into a Banff one."""
    if args.k is None or args.lam is None or args.v_max is None:
        raise CliInputError("--experiment needs --k, --lam and --v-max")
    cfg = _solver_config(args)
    lines = [f"experiment: k={args.k} lambda={args.lam} v<={args.v_max} max-dfs={args.max_dfs}"]
    for v in range(3, args.v_max + 1):
        if (args.lam * (v - 1)) % (args.k * (args.k - 1)) != 0 or v < args.k:
            continue
        group = gr.AbelianGroup((v,))
        families = dfm.enumerate_dfs(group, args.k, args.lam, limit=args.max_dfs)
        converted = 0
        unresolved = 0
        for family in families:
            result = dfm.df_to_bdf(family, cfg)
            if result.found:
                converted += 1
            elif result.solve.outcome == mt.OUTCOME_BUDGET:
                unresolved += 1
        lines.append(
            f"v={v} dfs={len(families)} banffable={converted} "
            f"failed={len(families) - converted - unresolved} unresolved={unresolved}"
        )
    return CommandResult(EXIT_OK, "\n".join(lines))


def _nesting_cert(cert: ds.NestingCertificate, cfg: mt.SolverConfig | None) -> dict:
    doc = {
        "schema": SCHEMA,
        "kind": "nesting",
        "design": _design_to_json(cert.base),
        "anchors": list(cert.anchors),
    }
    if cfg is not None:
        doc["mode"] = cfg.mode
        doc["seed"] = cfg.seed
    return doc


def _cmd_nest_find(args) -> CommandResult:
    design = load_design_file(args.file)
    cfg = _solver_config(args)
    try:
        hyper = hg.build_nesting_hypergraph(design)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    result = mt.solve(hyper, cfg)
    lines = [
        f"design: v={design.v} k={design.k} lambda={design.lam} blocks={design.block_count}",
        f"solver: mode={cfg.mode} seed={cfg.seed} outcome={result.outcome} "
        f"nodes={result.nodes} restarts={result.restarts}",
    ]
    if result.matching is not None:
        anchors = {}
        for ei in result.matching.edge_indices:
            bi, a = hyper.edges[ei].payload
            anchors[bi] = a
        cert = ds.apply_nesting(design, anchors)
        lines.append(
            f"nesting: found, nested design is a ({design.v},{design.k + 1},"
            f"{design.lam + 1})-packing"
        )
        lines.append(f"perfect: {'yes' if ds.is_perfect_nesting(cert) else 'no'}")
        doc = _nesting_cert(cert, cfg)
        _write_certificate(doc, args.out, lines)
        return CommandResult(EXIT_OK, "\n".join(lines), doc)
    if result.outcome == mt.OUTCOME_NONEXISTENT:
        lines.append("nesting: none exists (search space exhausted)")
        return CommandResult(EXIT_FAIL, "\n".join(lines))
    lines.append("nesting: not found within budget")
    return CommandResult(EXIT_NOT_FOUND, "\n".join(lines))


def _nesting_from_cert(doc: dict, where: str) -> ds.NestingCertificate:
    if doc.get("kind") != "nesting":
        raise CliInputError(f"{where}: certificate kind {doc.get('kind')!r} is not 'nesting'")
    design = _design_from_json(doc.get("design", {}), where)
    try:
        anchors = [int(a) for a in doc["anchors"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise CliInputError(f"{where}: bad anchors: {exc}") from exc
    try:
        return ds.apply_nesting(design, anchors)
    except ValueError as exc:
        raise CliInputError(f"{where}: certificate does not reconstruct: {exc}") from exc


def _cmd_nest_verify(args) -> CommandResult:
    doc = load_certificate(args.cert)
    if doc.get("kind") != "nesting":
        raise CliInputError(f"{args.cert}: certificate kind {doc.get('kind')!r} is not 'nesting'")
    design = _design_from_json(doc.get("design", {}), args.cert)
    try:
        anchors = [int(a) for a in doc["anchors"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise CliInputError(f"{args.cert}: bad anchors: {exc}") from exc
    lines = [
        f"design: v={design.v} k={design.k} lambda={design.lam} blocks={design.block_count}"
    ]
    base_rep = ds.verify_bibd(design)
    if not base_rep.ok:
        lines.append(
            f"base bibd check: FAIL pair {base_rep.witness_pair} covered "
            f"{base_rep.witness_count} times (expected {base_rep.lam})"
        )
        return CommandResult(EXIT_FAIL, "\n".join(lines))
    lines.append("base bibd check: ok")
    try:
        cert = ds.apply_nesting(design, anchors)
    except ValueError as exc:
        lines.append(f"nesting check: FAIL {exc}")
        return CommandResult(EXIT_FAIL, "\n".join(lines))
    lines.append(
        f"nesting check: ok, nested ({design.v},{design.k + 1},{design.lam + 1})-packing"
    )
    lines.append(f"perfect: {'yes' if ds.is_perfect_nesting(cert) else 'no'}")
    return CommandResult(EXIT_OK, "\n".join(lines))


def _cmd_levi_color(args) -> CommandResult:
    doc = load_certificate(args.cert)
    kind = doc.get("kind")
    if kind == "nesting":
        cert = _nesting_from_cert(doc, args.cert)
        design = cert.base
        coloring = ds.nesting_to_coloring(cert)
    elif kind == "levi-coloring":
        design = _design_from_json(doc.get("design", {}), args.cert)
        try:
            coloring = ds.Coloring(
                point_colors=tuple(int(c) for c in doc["point_colors"]),
                block_colors=tuple(int(c) for c in doc["block_colors"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CliInputError(f"{args.cert}: bad coloring: {exc}") from exc
    else:
        raise CliInputError(
            f"{args.cert}: certificate kind {kind!r} is neither 'nesting' nor 'levi-coloring'"
        )
    graph = ds.levi_graph(design)
    try:
        harmonious = ds.verify_harmonious(graph, coloring)
    except ValueError as exc:
        raise CliInputError(f"{args.cert}: {exc}") from exc
    exact = harmonious and ds.verify_exact(graph, coloring)
    lines = [
        f"levi graph: {design.v} point vertices, {design.block_count} block vertices, "
        f"{len(graph.edges)} edges",
        f"colors used: {coloring.n_colors}",
        f"harmonious: {'yes' if harmonious else 'NO'}",
        f"exact: {'yes' if exact else 'no'}",
    ]
    out_doc = None
    if harmonious:
        out_doc = {
            "schema": SCHEMA,
            "kind": "levi-coloring",
            "design": _design_to_json(design),
            "point_colors": list(coloring.point_colors),
            "block_colors": list(coloring.block_colors),
        }
        _write_certificate(out_doc, args.out, lines)
    return CommandResult(EXIT_OK if harmonious else EXIT_FAIL, "\n".join(lines), out_doc)


def _cmd_hypergraph_stats(args) -> CommandResult:
    lines = []
    if args.kind == "nesting":
        design = load_design_file(args.file)
        try:
            hyper = hg.build_nesting_hypergraph(design)
        except ValueError as exc:
            raise CliInputError(str(exc)) from exc
        v, k, lam = design.v, design.k, design.lam
        default_d = 4 * lam * (v - k) / (4 * lam + 1)
    elif args.kind == "bdf":
        family = load_df_file(args.file, args.lam)
        try:
            hyper = hg.build_bdf_hypergraph(family)
        except ValueError as exc:
            raise CliInputError(str(exc)) from exc
        v, k, lam = family.group.order, family.k, family.lam
        c2 = gr.order2_count(family.group)
        default_d = 4 * lam * (v - 2**c2 * k * k) / (2 * k - 3) if 2 * k != 3 else 0.0
    else:  # novak
        design = load_cyclic_file(args.file)
        orbits = cy.decompose_orbits(design)
        short = [o.base for o in orbits if o.kind == "short"]
        full = [o.base for o in orbits if o.kind == "full"]
        try:
            _, forbidden = cy.place_short_orbits(short, design.v)
        except cy.PlacementError as exc:
            return CommandResult(EXIT_NOT_FOUND, f"greedy placement failed: {exc}")
        hyper = hg.build_novak_hypergraph(design.v, full, forbidden, k=design.k)
        v, k, lam = design.v, design.k, design.lam
        default_d = (
            2 * lam * (v - k * len(forbidden)) / (2 * k - 3) if 2 * k != 3 else 0.0
        )
        lines.append(
            f"short orbits: {len(short)} placed greedily, forbidden points "
            f"{','.join(str(x) for x in forbidden) if forbidden else '(none)'}"
        )
    rep = hg.degree_report(hyper)
    lines.insert(0, (
        f"hypergraph: kind={args.kind} A={hyper.n_left} right={hyper.n_right} "
        f"edges={rep.n_edges} edge-size={hyper.k + 1}"
    ))
    lines.append(
        f"degrees: A min={rep.a_min} max={rep.a_max}, right min={rep.right_min} "
        f"max={rep.right_max}, max codegree={rep.max_codegree}"
    )
    d_value = args.D if args.D is not None else default_d
    if d_value > 0:
        check = hg.dp_hypothesis_check(hyper, d_value, args.alpha, args.beta)
        lines.append(
            f"hypothesis check: D={d_value:.6g} alpha={args.alpha:.6g} beta={args.beta:.6g}"
        )
        lines.append(
            f"  A-degree >= {check.a_degree_threshold:.6g}: "
            f"{'ok' if check.a_degree_ok else 'FAIL'} (min {check.min_a_degree})"
        )
        lines.append(
            f"  right degree <= {d_value:.6g}: "
            f"{'ok' if check.right_degree_ok else 'FAIL'} (max {check.max_right_degree})"
        )
        lines.append(
            f"  codegree <= {check.codegree_threshold:.6g}: "
            f"{'ok' if check.codegree_ok else 'FAIL'} (max {check.max_codegree})"
        )
        lines.append(
            "  (diagnostic only: the condition is asymptotic and small instances "
            "may fail it yet still have matchings)"
        )
    else:
        lines.append(
            f"hypothesis check: skipped (default D={default_d:.6g} is not positive; pass --D)"
        )
    if args.dump is not None:
        Path(args.dump).write_text(hg.dump_edges(hyper))
        lines.append(f"edge dump: written to {args.dump}")
    return CommandResult(EXIT_OK, "\n".join(lines))


def _cmd_novak_select(args) -> CommandResult:
    design = load_cyclic_file(args.file)
    cfg = _solver_config(args)
    result = cy.novak_select(design, cfg, greedy_retries=args.greedy_retries)
    orbits = cy.decompose_orbits(design)
    lines = [
        f"cyclic design: v={design.v} k={design.k} lambda={design.lam} "
        f"orbits={len(orbits)} (short={result.h}, full={len(orbits) - result.h})"
    ]
    if result.found:
        for i, (a, block) in enumerate(zip(result.translations, result.selection)):
            lines.append(
                f"orbit {i}: translation={a} block={','.join(str(x) for x in block)}"
            )
        lines.append("selection: found, pairwise disjoint blocks, one per orbit")
        doc = {
            "schema": SCHEMA,
            "kind": "novak-selection",
            "v": design.v,
            "k": design.k,
            "lambda": design.lam,
            "base_blocks": [list(b) for b in design.base_blocks],
            "translations": list(result.translations),
            "blocks": [list(b) for b in result.selection],
            "mode": cfg.mode,
            "seed": cfg.seed,
        }
        _write_certificate(doc, args.out, lines)
        return CommandResult(EXIT_OK, "\n".join(lines), doc)
    if result.outcome == "greedy_failed":
        lines.append(
            "selection: greedy short-orbit placement failed (try --greedy-retries)"
        )
        return CommandResult(EXIT_NOT_FOUND, "\n".join(lines))
    if result.outcome == "matching_none":
        if result.h == 0:
            lines.append("selection: none exists (search space exhausted, no short orbits)")
            return CommandResult(EXIT_FAIL, "\n".join(lines))
        lines.append(
            "selection: no matching for this short-orbit placement (exhaustive for "
            "the placement; other placements may work, try --greedy-retries)"
        )
        return CommandResult(EXIT_NOT_FOUND, "\n".join(lines))
    lines.append("selection: not found within budget")
    return CommandResult(EXIT_NOT_FOUND, "\n".join(lines))


def _cmd_novak_verify(args) -> CommandResult:
    doc = load_certificate(args.cert)
    if doc.get("kind") != "novak-selection":
        raise CliInputError(
            f"{args.cert}: certificate kind {doc.get('kind')!r} is not 'novak-selection'"
        )
    try:
        design = cy.CyclicBibd(
            v=int(doc["v"]),
            k=int(doc["k"]),
            lam=int(doc["lambda"]),
            base_blocks=tuple(tuple(int(x) for x in b) for b in doc["base_blocks"]),
        )
        selection = tuple(tuple(int(x) for x in b) for b in doc["blocks"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CliInputError(f"{args.cert}: bad selection document: {exc}") from exc
    lines = [
        f"cyclic design: v={design.v} k={design.k} lambda={design.lam} "
        f"orbits={len(design.base_blocks)}"
    ]
    rep = cy.verify_disjoint_selection(design, selection)
    if rep.ok:
        lines.append("selection check: ok (one block per orbit, pairwise disjoint)")
        return CommandResult(EXIT_OK, "\n".join(lines))
    lines.append(f"selection check: FAIL {rep.problem}")
    return CommandResult(EXIT_FAIL, "\n".join(lines))


def _cmd_alpha_beta(args) -> CommandResult:
    try:
        alpha, beta = ds.alpha_beta(args.k1, args.lam1, args.k2, args.lam2)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    return CommandResult(EXIT_OK, f"alpha={alpha} beta={beta}")


def _cmd_conditions(args) -> CommandResult:
    try:
        rep = ds.nesting_necessary_conditions(args.v, args.k, args.lam, perfect=args.perfect)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    lines = [
        f"condition {name}: {'pass' if passed else 'FAIL'}" for name, passed in rep.checks
    ]
    lines.append(f"all conditions: {'pass' if rep.ok else 'FAIL'}")
    return CommandResult(EXIT_OK if rep.ok else EXIT_FAIL, "\n".join(lines))


# ---------------------------------------------------------------------------
# parser wiring

def build_parser() -> _Parser:
    parser = _Parser(
        prog="nestkit",
        description="Nested block designs, Banff difference families, and "
        "disjoint orbit representatives.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("verify-design", help="check a design file is a BIBD (or packing)")
    p.add_argument("file", help="design file: header 'v k lambda', one block per line")
    p.add_argument("--packing", action="store_true", help="check packing instead of BIBD")
    p.set_defaults(handler=_cmd_verify_design)

    for name, handler, extra_help in (
        ("verify-df", _cmd_verify_df, "check a difference family"),
        ("verify-bdf", _cmd_verify_bdf, "check a Banff difference family"),
    ):
        p = sub.add_parser(name, help=extra_help)
        p.add_argument("file", nargs="?", default=None, help="family file (group spec line, then blocks)")
        p.add_argument("--group", default=None, help="group spec such as Z13 or Z2xZ4")
        p.add_argument("--blocks", nargs="+", default=None,
                       help="base blocks, each a comma-separated element list")
        p.add_argument("--lam", type=int, default=None, help="pair index (inferred when omitted)")
        p.add_argument("--cert", default=None, help="verify a family certificate instead")
        p.set_defaults(handler=handler)

    p = sub.add_parser("search-df", help="backtracking search for a difference family")
    p.add_argument("--group", required=True, help="group spec such as Z13")
    p.add_argument("--k", type=int, required=True, help="block size")
    p.add_argument("--lam", type=int, required=True, help="pair index")
    p.add_argument("--budget", type=int, default=None, help="search node budget")
    p.add_argument("--out", default=None, help="write the found family as a certificate")
    p.set_defaults(handler=_cmd_search_df)

    p = sub.add_parser("bdf-from-df", help="translate a DF's base blocks into a Banff DF")
    p.add_argument("file", nargs="?", default=None, help="family file")
    p.add_argument("--group", default=None)
    p.add_argument("--blocks", nargs="+", default=None)
    p.add_argument("--lam", type=int, default=None)
    p.add_argument("--cert", default=None, help="take the input family from a certificate")
    p.add_argument("--out", default=None, help="write the Banff family as a certificate")
    p.add_argument("--experiment", action="store_true",
                   help="data mode: enumerate small cyclic DFs and report how many translate")
    p.add_argument("--k", type=int, default=None, help="(experiment) block size")
    p.add_argument("--v-max", type=int, default=None, help="(experiment) largest cyclic order")
    p.add_argument("--max-dfs", type=int, default=5, help="(experiment) families per order")
    _add_solver_flags(p)
    p.set_defaults(handler=_cmd_bdf_from_df)

    p = sub.add_parser("nest-find", help="find a nesting of a BIBD")
    p.add_argument("file", help="design file")
    p.add_argument("--out", default=None, help="write the nesting certificate")
    _add_solver_flags(p)
    p.set_defaults(handler=_cmd_nest_find)

    p = sub.add_parser("nest-verify", help="re-verify a nesting certificate")
    p.add_argument("cert", help="nesting certificate file")
    p.set_defaults(handler=_cmd_nest_verify)

    p = sub.add_parser("levi-color", help="check the harmonious Levi coloring of a nesting")
    p.add_argument("cert", help="nesting or levi-coloring certificate")
    p.add_argument("--out", default=None, help="write the coloring as a certificate")
    p.set_defaults(handler=_cmd_levi_color)

    p = sub.add_parser("hypergraph-stats", help="degree/codegree report for an auxiliary hypergraph")
    p.add_argument("file", help="design, family, or cyclic design file (see --kind)")
    p.add_argument("--kind", choices=("nesting", "bdf", "novak"), required=True)
    p.add_argument("--lam", type=int, default=None, help="pair index for --kind bdf")
    p.add_argument("--D", type=float, default=None, help="override the hypothesis D")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--dump", default=None, help="write one edge per line to this file")
    p.set_defaults(handler=_cmd_hypergraph_stats)

    p = sub.add_parser("novak-select", help="one disjoint block per orbit of a cyclic BIBD")
    p.add_argument("file", help="cyclic design file: 'v k lambda', then base blocks")
    p.add_argument("--out", default=None, help="write the selection certificate")
    p.add_argument("--greedy-retries", type=int, default=0,
                   help="retry failed runs with permuted short-orbit orders (heuristic)")
    _add_solver_flags(p)
    p.set_defaults(handler=_cmd_novak_select)

    p = sub.add_parser("novak-verify", help="re-verify a selection certificate")
    p.add_argument("cert", help="novak-selection certificate file")
    p.set_defaults(handler=_cmd_novak_verify)

    p = sub.add_parser("alpha-beta", help="divisibility constants of an admissible family")
    p.add_argument("k1", type=int)
    p.add_argument("lam1", type=int)
    p.add_argument("k2", type=int)
    p.add_argument("lam2", type=int)
    p.set_defaults(handler=_cmd_alpha_beta)

    p = sub.add_parser("conditions", help="necessary conditions for a (perfect) nesting")
    p.add_argument("v", type=int)
    p.add_argument("k", type=int)
    p.add_argument("lam", type=int)
    p.add_argument("--perfect", action="store_true")
    p.set_defaults(handler=_cmd_conditions)

    return parser


def run(argv: Sequence[str] | None = None) -> CommandResult:
    """Parse, dispatch, print the report to stdout, and return the result."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "handler", None) is None:
            raise CliInputError("no command given (try --help)")
        result = args.handler(args)
    except CliInputError as exc:
        result = CommandResult(EXIT_INPUT, f"input error: {exc}")
    except SystemExit as exc:  # argparse --help path
        code = exc.code if isinstance(exc.code, int) else 0
        return CommandResult(code if code == 0 else EXIT_INPUT, "")
    print(result.report)
    return result


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv).code
