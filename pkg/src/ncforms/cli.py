"""``ncf`` command-line interface.

Exit status: 0 success or true, 1 checked-false, 2 invalid input, 3 an
internal consistency check failed (a bug).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import formio, oracle, transport
from .errors import (
    AbsentmindedInput,
    BoundTooSmall,
    LevelMismatch,
    NCFError,
    ParseFailure,
    TheoremViolation,
    ValidationFailure,
)
from .form import Form, as_one_player_form
from .morphism import find_isomorphism
from .nodes import render_nodeset, sorted_nodesets, stage_key
from .properties import PropertyId, preform_property

OK, FALSE, INVALID, BUG = 0, 1, 2, 3


class Failure(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _sets(collection) -> str:
    return "{" + ",".join(render_nodeset(h) for h in sorted_nodesets(collection)) + "}"


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise Failure(INVALID, f"cannot read {path}: {exc.strerror or exc}")
    try:
        return formio.parse(text)
    except ValidationFailure as exc:
        while exc.cause is not None:
            exc = exc.cause
        raise Failure(INVALID, f"{path}: {exc}")
    except ParseFailure as exc:
        raise Failure(INVALID, f"{path}: {type(exc).__name__}: {exc}")


def _write(path: str | None, text: str, out) -> None:
    if path is None:
        out.append(text.rstrip("\n"))
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_validate(args, out):
    x = _load(args.file)
    kind = "form" if isinstance(x, Form) else "preform"
    detail = f", {len(x.players)} players" if isinstance(x, Form) else ""
    out.append(f"valid {kind}: {len(x.nodes)} nodes, {len(x.choices)} choices{detail}")
    return OK


def derive_report(x) -> str:
    pf = x.preform if isinstance(x, Form) else x
    pd = pf.derived
    td = pd.tree_derived
    by_stage = stage_key(td.stage)
    lines = [f"kind: {'form' if isinstance(x, Form) else 'preform'}", f"root: {pd.root}"]
    depth = max(td.stage.values())
    for k in range(depth + 1):
        members = [str(t) for t in sorted(pf.nodes, key=by_stage) if td.stage[t] == k]
        lines.append(f"stage {k}: {' '.join(members)}")
    lines.append(f"X = {render_nodeset(pd.decision_nodes)}")
    lines.append(f"H = {_sets(pd.info_sets)}")
    for c in sorted(pf.choices):
        lines.append(f"F^-1({c}) = {render_nodeset(pd.preimage(c))}")
    if isinstance(x, Form):
        for i in sorted(x.players):
            lines.append(f"C_{i} = {{{','.join(sorted(x.choice_assignment[i]))}}}")
            lines.append(f"X_{i} = {render_nodeset(x.derived.player_nodes[i])}")
            lines.append(f"H_{i} = {_sets(x.derived.player_info_sets[i])}")
    pairs = sorted(td.strict_prec, key=lambda p: (by_stage(p[0]), by_stage(p[1])))
    lines.append("prec:")
    lines.extend(f"  {a} < {b}" for a, b in pairs)
    lines.append(f"Z_ft = {_sets(td.chains_finite)}")
    return "\n".join(lines) + "\n"


def cmd_derive(args, out):
    _write(args.out, derive_report(_load(args.file)), out)
    return OK


def cmd_convert(args, out):
    x = _load(args.file)
    try:
        if isinstance(x, Form):
            image, witness = transport.convert_any_to(args.to, x)
            forward = witness.forward
        else:
            image, forward = transport.preform_to_choice_sequence(x)
            if args.to == "cset":
                image, second = transport.preform_to_choice_set(image)
                from .morphism import compose_preform

                forward = compose_preform(second, forward)
    except AbsentmindedInput as exc:
        out.append(f"AbsentmindedInput: {exc}")
        return FALSE
    _write(args.out, formio.serialize(image), out)
    if args.witness:
        Path(args.witness).write_text(formio.serialize_witness(forward), encoding="utf-8")
    return OK


def _describe_witness(prop: PropertyId, witness) -> str:
    if prop is PropertyId.NO_ABSENTMINDEDNESS:
        h, a, b = witness
        return f"information set {render_nodeset(h)} has {a} < {b}"
    return f"information set {render_nodeset(witness)} is not a singleton"


def cmd_check(args, out):
    x = _load(args.file)
    prop = PropertyId(args.property)
    verdict = preform_property(x.preform if isinstance(x, Form) else x, prop)
    if verdict:
        out.append(f"{prop.value}: holds")
        return OK
    out.append(f"{prop.value}: fails; {_describe_witness(prop, verdict.witness)}")
    return FALSE


def cmd_iso(args, out):
    a, b = _load(args.file_a), _load(args.file_b)
    if isinstance(a, Form) != isinstance(b, Form):
        raise Failure(INVALID, "LevelMismatch: cannot compare a form with a preform")
    fa = a if isinstance(a, Form) else as_one_player_form(a)
    fb = b if isinstance(b, Form) else as_one_player_form(b)
    found = find_isomorphism(fa, fb)
    if not found:
        out.append(f"not isomorphic ({found.reason}; {found.branches} branches)")
        return FALSE
    out.append("isomorphic")
    if args.witness:
        forward = found.forward
        if not isinstance(a, Form):
            from .morphism import forget_morphism

            forward = forget_morphism(forward)
        Path(args.witness).write_text(formio.serialize_witness(forward), encoding="utf-8")
    return OK


def _tree_text(tree) -> str:
    lines = [f"root: {tree.root}"]
    for s in sorted(tree.pred, key=lambda t: int(t.name)):
        lines.append(f"pred: {s} {tree.pred[s]}")
    return "\n".join(lines) + "\n"


def cmd_enumerate(args, out):
    if args.kind == "tree":
        objects = oracle.enumerate_trees(args.nodes)
    elif args.kind == "preform":
        objects = oracle.enumerate_preforms(args.nodes)
    else:
        objects = oracle.enumerate_forms(args.nodes, args.players)
    if args.out:
        target = Path(args.out)
        target.mkdir(parents=True, exist_ok=True)
        width = len(str(len(objects)))
        for k, x in enumerate(objects):
            text = _tree_text(x) if args.kind == "tree" else formio.serialize(x)
            suffix = "tree" if args.kind == "tree" else "ncf"
            (target / f"{args.kind}-{k:0{width}d}.{suffix}").write_text(text, encoding="utf-8")
    out.append(str(len(objects)))
    return OK


def cmd_verify_enclosure(args, out):
    source, target = oracle.SubcategoryId(args.source), oracle.SubcategoryId(args.target)
    result = oracle.verify_enclosure(
        source, target, args.nodes, constructive=args.constructive or None, max_players=args.players, jobs=args.jobs
    )
    if result.verified:
        out.append(f"verified: {source.value} -> {target.value} for {result.checked} objects with at most {args.nodes} nodes")
        return OK
    cert = result.certificate
    out.append(f"refuted: {source.value} -> {target.value} at {cert.node_count} nodes")
    out.append(
        f"certificate: signature {cert.signature}; {cert.candidates} of {cert.universe_size} "
        f"{target.value} objects matched it; {cert.branches} search branches"
    )
    text = formio.serialize(result.counterexample)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        out.append(f"counterexample written to {args.out}")
    else:
        out.append("counterexample:")
        out.append(text.rstrip("\n"))
    return FALSE


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncf", description="Node-and-choice forms and preforms.")
    parser.add_argument("--quiet", action="store_true", help="print nothing; report only through the exit status")
    parser.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: NCF_JOBS or CPU count)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a document")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("derive", help="report derived entities")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(run=cmd_derive)

    p = sub.add_parser("convert", help="convert to choice-sequence or choice-set nodes")
    p.add_argument("file")
    p.add_argument("--to", choices=["csq", "cset"], required=True)
    p.add_argument("--out")
    p.add_argument("--witness")
    p.set_defaults(run=cmd_convert)

    p = sub.add_parser("check", help="test an information-set property")
    p.add_argument("file")
    p.add_argument("--property", choices=[q.value for q in PropertyId], required=True)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("iso", help="search for an isomorphism between two documents")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--witness")
    p.set_defaults(run=cmd_iso)

    p = sub.add_parser("enumerate", help="enumerate objects up to isomorphism")
    p.add_argument("--kind", choices=["tree", "preform", "form"], required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--players", type=_positive)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--count-only", action="store_true")
    group.add_argument("--out")
    p.set_defaults(run=cmd_enumerate)

    ids = [s.value for s in oracle.SubcategoryId]
    p = sub.add_parser("verify-enclosure", help="check that one subcategory encloses another")
    p.add_argument("--from", dest="source", choices=ids, required=True)
    p.add_argument("--to", dest="target", choices=ids, required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--players", type=_positive)
    p.add_argument("--constructive", action="store_true")
    p.add_argument("--out", help="file for the counterexample")
    p.set_defaults(run=cmd_verify_enclosure)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs is None:
        args.jobs = int(os.environ.get("NCF_JOBS", "0")) or os.cpu_count() or 1
    out: list[str] = []
    try:
        status = args.run(args, out)
    except Failure as exc:
        out.append(str(exc))
        status = exc.status
    except TheoremViolation as exc:
        out.append(f"internal error: {exc}")
        status = BUG
    except (BoundTooSmall, LevelMismatch) as exc:
        out.append(f"{type(exc).__name__}: {exc}")
        status = INVALID
    except NCFError as exc:
        out.append(f"{type(exc).__name__}: {exc}")
        status = INVALID
    if out and not args.quiet:
        stream = sys.stdout if status in (OK, FALSE) else sys.stderr
        print("\n".join(out), file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
