"""Command-line interface.

Every verb prints a report with a verdict, certificates and a body.  The
exit code is 0 for a positive verdict, 1 for a negative one and 2 for an
error (bad input, failed construction).
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import io
from .errors import NotASubset, NotATreeSet, NotRegular, TreeSetError
from .generators import random_tree
from .orientations import (
    enumerate_orientations,
    extend,
    make_orientation,
    orientation_of,
    star_of,
)
from .presented import (
    ChainTreePresentation,
    InnerPoint,
    Interval,
    build_tls,
    contraction,
    pseudo_arc,
    splitting_status,
    tame_check,
    truncate,
)
from .separations import SeparationSystem, classify, validate_tree_set
from .trees import (
    Tree,
    edge_tree_set,
    flip_path,
    minor_subset,
    roundtrip_tau,
    roundtrip_tree,
    subset_minor,
    tree_of,
)


class Report:
    def __init__(self, verb, verdict, summary, certificates=None, body=None, dot=None):
        self.verb = verb
        self.verdict = verdict
        self.summary = summary
        self.certificates = certificates or {}
        self.body = body or {}
        self.dot = dot

    @property
    def exit_code(self):
        return 0 if self.verdict else 1

    def as_dict(self):
        return {
            "verb": self.verb,
            "verdict": self.verdict,
            "summary": self.summary,
            "certificates": self.certificates,
            "body": self.body,
        }

    def render(self, fmt):
        if fmt == "json":
            return json.dumps(self.as_dict(), indent=2, default=str)
        if fmt == "dot":
            if self.dot is None:
                raise TreeSetError(f"no DOT output for '{self.verb}'")
            return self.dot
        lines = [f"{self.verb}: {'yes' if self.verdict else 'no'} ({self.summary})"]
        for section in ("certificates", "body"):
            for key, value in getattr(self, section).items():
                lines.append(f"  {key}: {_text(value)}")
        return "\n".join(lines)


def _text(value):
    if isinstance(value, (list, tuple)) and len(value) > 12:
        return json.dumps(list(value[:12]), default=str)[:-1] + f", ... ({len(value)} total)]"
    return json.dumps(value, default=str)


def _load(path, want):
    obj = io.load(path)
    if not isinstance(obj, want):
        names = {SeparationSystem: "separation system", Tree: "tree", ChainTreePresentation: "presentation"}
        if isinstance(want, tuple):
            expected = " or ".join(names[w] for w in want)
        else:
            expected = names[want]
        raise TreeSetError(f"{path}: expected a {expected}")
    return obj


def _system(path):
    obj = _load(path, (SeparationSystem, Tree))
    return edge_tree_set(obj) if isinstance(obj, Tree) else obj


def _ids(text):
    """Ids from a JSON array or a list separated by spaces or semicolons."""
    if not text:
        return []
    if text.lstrip().startswith("["):
        return [str(x) for x in json.loads(text)]
    return [t for t in re.split(r"[;\s]+", text) if t]


def _not_tree_set_witness(tau):
    rep = validate_tree_set(tau)
    if rep.crossing_pairs:
        return {"crossing_pair": list(rep.crossing_pairs[0])}
    if rep.trivial_elements:
        x, w = rep.trivial_elements[0]
        return {"trivial_element": x, "witness": w}
    if rep.small_elements:
        return {"small_element": rep.small_elements[0]}
    return {}


# -- verbs -------------------------------------------------------------------


def cmd_validate(args):
    obj = io.load(args.file)
    if isinstance(obj, SeparationSystem):
        rep = validate_tree_set(obj)
        body = {
            "separations": len(obj.pairs),
            "is_nested": rep.is_nested,
            "is_tree_set": rep.is_tree_set,
            "is_regular": rep.is_regular,
        }
        if args.element:
            c = classify(obj, args.element)
            body["classification"] = c.__dict__
        cert = {} if rep.is_tree_set else _not_tree_set_witness(obj)
        return Report("validate", rep.is_tree_set, "tree set" if rep.is_tree_set else "not a tree set", cert, body)
    if isinstance(obj, Tree):
        return Report("validate", True, "valid tree", body={"vertices": len(obj.vertices), "edges": len(obj.edges)})
    return Report(
        "validate",
        True,
        "valid presentation",
        body={"edges": {e: obj.labels[e].describe() for e in obj.edge_ids}},
    )


def cmd_orient(args):
    tau = _system(args.file)
    P = _ids(args.partial)
    try:
        O = extend(tau, P, pin=args.pin)
    except TreeSetError as exc:
        pair = getattr(exc, "pair", None)
        if pair is None:
            raise
        return Report("orient", False, "partial orientation is inconsistent", {"inconsistent_pair": list(pair)})
    body = {"orientation": O.sorted(), "star": sorted(star_of(tau, O)), "splitting": O.splitting}
    return Report("orient", True, "extended", {"unique": O.unique}, body)


def cmd_stars(args):
    tau = _system(args.file)
    out = []
    for O in enumerate_orientations(tau, args.max_separations):
        out.append({"orientation": O.sorted(), "star": sorted(star_of(tau, O)), "splitting": O.splitting})
    bad = [o for o in out if not o["splitting"]]
    cert = {"non_splitting": bad[0]["orientation"]} if bad else {}
    return Report("stars", not bad, f"{len(out)} consistent orientations", cert, {"orientations": out})


def cmd_enumerate(args):
    tau = _system(args.file)
    orients = enumerate_orientations(tau, args.max_separations)
    body = {
        "count": len(orients),
        "splitting": sum(o.splitting for o in orients),
        "orientations": [o.sorted() for o in orients],
    }
    return Report("enumerate", True, f"{len(orients)} consistent orientations", body=body)


def cmd_to_tree(args):
    tau = _load(args.file, SeparationSystem)
    try:
        t = tree_of(tau)
    except (NotATreeSet, NotRegular) as exc:
        return Report("to-tree", False, str(exc).split(":")[0], _not_tree_set_witness(tau))
    body = io.to_data(t.tree)
    body["vertex_of"] = t.vertex_of
    return Report("to-tree", True, f"tree with {len(t.tree.vertices)} vertices", body=body, dot=io.tree_to_dot(t.tree, width=args.width))


def cmd_from_tree(args):
    T = _load(args.file, Tree)
    tau = edge_tree_set(T)
    body = io.to_data(tau)
    return Report("from-tree", True, f"{len(tau.pairs)} separations", body=body, dot=io.tree_to_dot(T, width=args.width))


def cmd_roundtrip(args):
    if args.random:
        rng = random.Random(args.seed)
        failures = []
        for k in range(args.random):
            T = random_tree(rng, args.max_edges)
            if not (roundtrip_tree(T).certified and roundtrip_tau(edge_tree_set(T)).certified):
                failures.append(io.to_data(T))
        cert = {"failing_tree": failures[0]} if failures else {}
        return Report(
            "roundtrip", not failures, f"{args.random - len(failures)}/{args.random} random trees certified", cert,
            {"seed": args.seed},
        )
    if args.tree:
        T = _load(args.tree, Tree)
        iso = roundtrip_tree(T)
        return Report("roundtrip", iso.certified, "tree isomorphism", {"map": iso.forward})
    if args.system:
        tau = _load(args.system, SeparationSystem)
        try:
            iso = roundtrip_tau(tau)
        except (NotATreeSet, NotRegular) as exc:
            return Report("roundtrip", False, str(exc).split(":")[0], _not_tree_set_witness(tau))
        return Report("roundtrip", iso.certified, "tree-set isomorphism", {"map": iso.forward})
    raise TreeSetError("roundtrip needs --tree, --system or --random")


def _orientation_arg(tau, text):
    ids = _ids(text)
    if len(ids) == 1 and len(tau.pairs) != 1:
        return orientation_of(tau, ids[0])
    return make_orientation(tau, ids)


def cmd_flip_path(args):
    tau = _load(args.file, SeparationSystem)
    src = _orientation_arg(tau, args.source)
    dst = _orientation_arg(tau, args.target)
    path = flip_path(tau, src, dst)
    return Report(
        "flip-path", True, f"{len(path) - 1} flips", body={"path": [O.sorted() for O in path]}
    )


def cmd_minor(args):
    small, big = _system(args.small), _system(args.big)
    inclusion = json.loads(args.inclusion) if args.inclusion else None
    try:
        model, t1, t2 = subset_minor(small, big, inclusion)
    except NotASubset as exc:
        return Report("minor", False, "not a sub-tree-set", {"reason": str(exc)})
    iso = minor_subset(model, t1.tree, t2.tree)
    cert = {
        "branch_sets": {v: sorted(bs) for v, bs in model.branch_sets.items()},
        "edge_map": [[sorted(a), sorted(b)] for a, b in model.edge_map.items()],
        "embedding_certified": iso.certified,
    }
    return Report("minor", iso.certified, "minor model", cert)


def cmd_tame(args):
    pres = _load(args.file, ChainTreePresentation)
    res = tame_check(pres)
    if res.tame:
        return Report("tame", True, "no chain of type omega+1")
    w = res.witness
    cert = {
        "chain": w.describe(),
        "edges": list(w.edges),
        "upper_bound": w.upper_bound.name,
        "prefix": [x.name for x in w.chain_prefix(args.depth)],
    }
    return Report("tame", False, "contains a chain of type omega+1", cert)


def cmd_splitting(args):
    pres = _load(args.file, ChainTreePresentation)
    x = pres.element(args.element)
    d = pres.endpoint(x)
    ok = splitting_status(pres, x)
    cert = {"orientation": d.name}
    if not ok:
        cert["reason"] = "its maximal elements miss an omega chain with no last element"
    return Report("splitting", ok, f"{x.name} {'lies' if ok else 'does not lie'} in a splitting star", cert,
                  {"star": [s.name for s in pres.star(d)]})


def cmd_tls(args):
    pres = _load(args.file, ChainTreePresentation)
    tls = build_tls(pres)
    body = tls.summary(args.depth)
    return Report(
        "tls", True, f"{len(tls.limit_edges)} limit edges", body=body,
        dot=io.presentation_to_dot(pres, tls.limit_edges, args.width),
    )


def _point(pres, text):
    if ":" in text:
        el, _, coord = text.rpartition(":")
        x = pres.element(el if el[-1] in "+-" else el + "+")
        return InnerPoint(x, Fraction(coord))
    return pres.parse_vertex(text)


def cmd_subbase(args):
    from .presented import subbase_member

    pres = _load(args.file, ChainTreePresentation)
    tls = build_tls(pres)
    pt = _point(pres, args.point)
    e = pres.element(args.element)
    inside = subbase_member(tls, pt, e, Fraction(args.r))
    other = subbase_member(tls, pt, e.inverse, Fraction(args.r))
    return Report(
        "subbase", inside, f"point {'in' if inside else 'not in'} S({e.name}, {args.r})",
        {"in_inverse_set": other},
    )


def cmd_arc(args):
    pres = _load(args.file, ChainTreePresentation)
    tls = build_tls(pres)
    arc = pseudo_arc(tls, args.u, args.v)
    body = {
        "segments": [s.describe() for s in arc.segments],
        "closure_vertices": [d.name for d in arc.closure_vertices(pres, args.depth)],
        "symmetric": arc.point_set() == pseudo_arc(tls, args.v, args.u).point_set(),
    }
    return Report("arc", True, f"{len(arc.segments)} segments", body=body)


def cmd_contract(args):
    pres = _load(args.file, ChainTreePresentation)
    c = contraction(pres, [Interval.parse(t) for t in args.interval])
    return Report(
        "contract", True, repr(c.presentation), body=io.to_data(c.presentation),
        dot=io.presentation_to_dot(c.presentation, width=args.width),
    )


def cmd_truncate(args):
    pres = _load(args.file, ChainTreePresentation)
    tau = truncate(pres, args.depth)
    return Report("truncate", True, f"{len(tau.pairs)} separations", body=io.to_data(tau))


VERBS = {
    "validate": cmd_validate,
    "orient": cmd_orient,
    "stars": cmd_stars,
    "to-tree": cmd_to_tree,
    "from-tree": cmd_from_tree,
    "roundtrip": cmd_roundtrip,
    "flip-path": cmd_flip_path,
    "minor": cmd_minor,
    "tame": cmd_tame,
    "splitting": cmd_splitting,
    "tls": cmd_tls,
    "subbase": cmd_subbase,
    "arc": cmd_arc,
    "contract": cmd_contract,
    "truncate": cmd_truncate,
    "enumerate": cmd_enumerate,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--depth", type=int, default=6, help="truncation depth for presented checks")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--width", type=int, default=24, help="DOT label width")

    p = argparse.ArgumentParser(prog="treesets", description="Separation systems and tree sets.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, help_, file=True):
        sp = sub.add_parser(name, help=help_, parents=[common])
        if file:
            sp.add_argument("file")
        return sp

    sp = verb("validate", "check a system, tree or presentation")
    sp.add_argument("--element", help="also classify this element")
    sp = verb("orient", "extend a partial orientation")
    sp.add_argument("--partial", default="", help="ids separated by spaces or ';', or a JSON array")
    sp.add_argument("--pin")
    sp = verb("stars", "stars of all consistent orientations")
    sp.add_argument("--max-separations", type=int, default=20)
    sp = verb("enumerate", "all consistent orientations")
    sp.add_argument("--max-separations", type=int, default=20)
    verb("to-tree", "tree of a regular tree set")
    verb("from-tree", "edge tree set of a tree")
    sp = verb("roundtrip", "certified round-trip isomorphisms", file=False)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--tree")
    g.add_argument("--system")
    g.add_argument("--random", type=int, metavar="N", help="check N random trees")
    sp.add_argument("--max-edges", type=int, default=10)
    sp = verb("flip-path", "flip between two splitting orientations")
    sp.add_argument("--source", required=True, help="orientation ids, or one element s for O(s)")
    sp.add_argument("--target", required=True)
    sp = verb("minor", "minor model from a sub-tree-set", file=False)
    sp.add_argument("small")
    sp.add_argument("big")
    sp.add_argument("--inclusion", help="JSON object mapping small ids to big ids")
    verb("tame", "look for a chain of type omega+1")
    sp = verb("splitting", "does an element lie in a splitting star")
    sp.add_argument("--element", required=True)
    verb("tls", "tree-like space skeleton")
    sp = verb("subbase", "sub-basic open set membership")
    sp.add_argument("--element", required=True)
    sp.add_argument("--point", required=True, help="vertex descriptor or edge[n]:coordinate")
    sp.add_argument("--r", default="1/2")
    sp = verb("arc", "pseudo-arc between two vertices")
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp = verb("contract", "contract index intervals")
    sp.add_argument("--interval", action="append", default=[], help="edge:lo:hi, e.g. e:0:omega")
    verb("truncate", "finite truncation")
    return p


def run(argv=None):
    """Parse ``argv``, run the verb and return ``(report, exit_code, rendered)``."""
    args = build_parser().parse_args(argv)
    report = VERBS[args.verb](args)
    return report, report.exit_code, report.render(args.format)


def main(argv=None):
    try:
        _, code, text = run(argv)
    except (TreeSetError, KeyError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
