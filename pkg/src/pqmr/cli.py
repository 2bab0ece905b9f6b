"""Command-line entry point: ``pqmr <command> ...``.

Exit codes: 0 verdict computed and positive, 1 verdict computed and negative
(a law failed, forms are not isometric, no isomorphism, ...), 2 usage or
input error, or disagreement between the two independent checking paths.

Structures are given as builtin names (q2, zmod:n, fp:p) or JSON files in
the core format; a file with an "S" index list is a pair, and a file of the
form {"ring": "Z", "S": "sums-of-squares"} is the integer pair.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from .constructions import (
    check_morphism, find_isomorphism, marshall_quotient, multiplicative_subset, nonzero_squares,
    product, reduced_product, sums_of_squares,
)
from .core import (
    FiniteMultiring, UsageError, builtin, dumps, from_dict, loads_document, to_dict,
)
from .forms import DEFAULT_LIMIT, IsometryContext, classes_manifest
from .logic import PAIR_THEORIES, THEORIES, counterexample, evaluate, free_vars, parse, to_text
from .pqtheory import (
    ComputablePair, CorpusSpec, PqPair, check_integer_pair, check_pqt_rr_implies_pqh,
    check_preorder_pair, corpus_manifest, cross_check, enumerate_corpus, pair_from_dict,
    pair_to_dict, product_pair, strictification_search, window_quotient,
)
from .pqtheory.integers import check_integer_preorder, integer_window, parse_window
from .report import Report, Verdict

CHECK_THEORIES = THEORIES + ("preorder",)
S_KEYWORDS = ("sums-of-squares", "sum-of-squares", "squares", "one")
INTEGER_S_ALIASES = {
    "sum-of-squares": "sums-of-squares",
    "nonzero-sums-of-squares": "sums-of-squares",
    "squares": "nonzero-squares",
}
# options whose values may start with "-" (e.g. --lhs -1,1)
_VALUE_OPTIONS = ("--lhs", "--rhs", "--window", "--s", "--map", "--env", "--j")


class Outcome:
    def __init__(self, doc: dict[str, Any], text: str, code: int):
        self.doc, self.text, self.code = doc, text, code
        self.json = False


# ---------------------------------------------------------------- loading

def load_model(spec: str, bound: int = 100, validate: bool = True):
    """Builtin name or file -> FiniteMultiring, PqPair or ComputablePair."""
    path = Path(spec)
    if not path.exists():
        try:
            return builtin(spec)
        except UsageError:
            raise UsageError(f"{spec}: no such file and not a builtin name") from None
    try:
        text = path.read_text()
    except OSError as e:
        raise UsageError(f"{spec}: {e.strerror}") from None
    try:
        doc = loads_document(text)
        if doc.get("ring") == "Z":
            S = doc.get("S", "sums-of-squares")
            if not isinstance(S, str):
                raise UsageError("integer pair 'S' must be a predicate name")
            return ComputablePair(INTEGER_S_ALIASES.get(S, S), bound)
        if "S" in doc:
            return pair_from_dict(doc, validate)
        return from_dict(doc)
    except UsageError as e:
        raise UsageError(f"{spec}: {e}") from None


def base_of(model) -> FiniteMultiring:
    if isinstance(model, ComputablePair):
        raise UsageError("this command needs a finite structure, not the integer pair")
    return model.base if isinstance(model, PqPair) else model


def parse_S(M: FiniteMultiring, text: str) -> frozenset[int]:
    key = text.strip()
    if key in ("sums-of-squares", "sum-of-squares"):
        return sums_of_squares(M)
    if key == "squares":
        return nonzero_squares(M)
    if key == "one":
        return frozenset({M.one})
    try:
        S = {int(x) for x in key.split(",") if x.strip()}
    except ValueError:
        raise UsageError(f"--s takes element indices or one of {', '.join(S_KEYWORDS)}") from None
    return multiplicative_subset(M, S)


def load_pair(spec: str, s_text: str | None, bound: int) -> PqPair:
    """A finite pair; a bare structure gets S = {1} unless --s says otherwise."""
    model = load_model(spec, bound)
    M = base_of(model)
    if s_text is not None:
        return PqPair(M, parse_S(M, s_text))
    if isinstance(model, PqPair):
        return model
    return PqPair(M, frozenset({M.one}))


def split_labels(text: str) -> list[str]:
    return [x.strip() for x in text.split(",")] if text.strip() else []


def write_doc(path: str, doc: dict) -> None:
    Path(path).write_text(dumps(doc, pretty=True))


def law_lines(rep: Report, labels: Sequence[str] | None) -> list[str]:
    lines = []
    for law in rep.laws:
        d = law.to_dict(labels)
        mark = {"yes": "ok", "no": "FAIL"}.get(d["verdict"], d["verdict"])
        extra = ""
        if "witness" in d and d["verdict"] != "yes":
            extra = "  witness: " + ", ".join(f"{k}={v}" for k, v in d["witness"].items())
        lines.append(f"  [{mark}] {law.tag}: {law.name}{extra}")
    return lines


def report_verdict(rep: Report) -> str:
    if any(l.verdict is Verdict.NO for l in rep.laws):
        return "fail"
    return "pass" if rep.ok else "undecided"


# ---------------------------------------------------------------- commands

def cmd_check(args) -> Outcome:
    model = load_model(args.file, args.bound, validate=False)
    theory = args.theory
    if isinstance(model, ComputablePair):
        window = parse_window(args.window) if args.window else integer_window(-10, 10)
        if theory == "preorder":
            rep = check_integer_preorder(model, window)
        elif theory in PAIR_THEORIES:
            rep = check_integer_pair(model, window, args.units_mode)
            if theory == "pq-pair":
                rep.laws = [l for l in rep.laws if not l.tag.startswith("pPQrr")]
        else:
            raise UsageError(f"theory {theory!r} does not apply to the integer pair")
        verdict = report_verdict(rep)
        doc = {"kind": "check", "subject": model.name, "theory": theory, "verdict": verdict,
               "hand": rep.to_dict(), "logic": None, "agree": None}
        text = "\n".join([f"{model.name} / {theory}: {verdict}", *law_lines(rep, None),
                          "  (logic cross-check skipped: infinite carrier)"])
        return Outcome(doc, text, 1 if verdict == "fail" else 0)

    if theory in PAIR_THEORIES + ("preorder",) and not isinstance(model, PqPair):
        raise UsageError(f"theory {theory!r} needs a pair file (a structure with an 'S' field)")
    labels = base_of(model).labels
    name = model.name
    if theory == "preorder":
        rep = check_preorder_pair(model)
        verdict = report_verdict(rep)
        doc = {"kind": "check", "subject": name, "theory": theory, "verdict": verdict,
               "hand": rep.to_dict(labels), "logic": None, "agree": None}
        text = "\n".join([f"{name} / preorder: {verdict}", *law_lines(rep, labels)])
        return Outcome(doc, text, 0 if rep.ok else 1)

    cc = cross_check(model, theory)
    verdict = "pass" if cc.hand_ok else "fail"
    doc = {"kind": "check", "subject": name, "theory": theory, "verdict": verdict, **cc.to_dict(labels)}
    lines = [f"{name} / {theory}: {verdict}", "hand-written checker:", *law_lines(cc.hand, labels),
             f"logic evaluator: {'pass' if cc.logic_ok else 'fail'}"]
    for r in cc.logic:
        if not r.holds:
            ce = ", ".join(f"x{k}={labels[v]}" for k, v in r.counterexample.items())
            lines.append(f"  [FAIL] {r.axiom.tag}: {ce}")
    if not cc.agree:
        doc["verdict"] = "internal-inconsistency"
        doc["disagreements"] = cc.disagreements()
        lines.append("INTERNAL INCONSISTENCY on " + ", ".join(cc.disagreements()))
        return Outcome(doc, "\n".join(lines), 2)
    lines.append("the two paths agree")
    return Outcome(doc, "\n".join(lines), 0 if cc.hand_ok else 1)


def cmd_quotient(args) -> Outcome:
    model = load_model(args.file, args.bound)
    if isinstance(model, ComputablePair):
        window = parse_window(args.window) if args.window else integer_window(-10, 10)
        wq = window_quotient(model, window)
        doc = {"kind": "integer-quotient", "closed": wq.closed, "fully_decided": wq.fully_decided,
               **wq.to_dict()}
        lines = [f"{model.name} on window {min(window)}..{max(window)}, bound {model.bound}: "
                 f"{len(wq.reps)} classes (representatives {', '.join(map(str, wq.reps))})"]
        for i, a in enumerate(wq.reps):
            for j, b in enumerate(wq.reps):
                cells = " ".join(f"{wq.label(c)}:{v.value}" for c, v in wq.cell(i, j).items())
                lines.append(f"  {a} + {b}: {cells}")
        if args.output:
            write_doc(args.output, doc)
        return Outcome(doc, "\n".join(lines), 0)

    M = base_of(model)
    if args.s is not None:
        S = parse_S(M, args.s)
    elif isinstance(model, PqPair):
        S = model.S
    else:
        raise UsageError("quotient needs --s (or a pair file)")
    q = marshall_quotient(M, S)
    Q = q.structure
    doc = {
        **to_dict(Q),
        "kind": "quotient",
        "source": M.name,
        "quotient_by": [M.labels[s] for s in sorted(S)],
        "classes": [[M.labels[a] for a in block] for block in q.classes],
        "class_map": {M.labels[a]: Q.labels[q.class_of[a]] for a in M.elements},
    }
    if args.output:
        write_doc(args.output, doc)
    lines = [f"{Q.name}: {Q.n} classes"]
    lines += [f"  {Q.labels[k]} = {{{', '.join(M.labels[a] for a in b)}}}" for k, b in enumerate(q.classes)]
    return Outcome(doc, "\n".join(lines), 0)


def _form_doc(ctx: IsometryContext, form) -> list[str]:
    return [ctx.pair.base.labels[a] for a in form]


def cmd_isometry(args) -> Outcome:
    P = load_pair(args.file, args.s, args.bound)
    ctx = IsometryContext(P, limit=args.limit)
    lhs, rhs = ctx.form(split_labels(args.lhs)), ctx.form(split_labels(args.rhs))
    if len(lhs) != len(rhs):
        raise UsageError(f"forms have different lengths ({len(lhs)} and {len(rhs)})")
    relation = "standard" if args.standard else "closure"
    doc: dict[str, Any] = {
        "kind": "isometry", "pair": P.name, "relation": relation, "n": len(lhs),
        "lhs": _form_doc(ctx, lhs), "rhs": _form_doc(ctx, rhs),
        "lhs_classes": ctx.class_labels(ctx.classes_of(lhs)),
        "rhs_classes": ctx.class_labels(ctx.classes_of(rhs)),
    }
    if args.standard:
        verdict = ctx.sg_standard_isometry(lhs, rhs)
    else:
        verdict = ctx.isometry_n(lhs, rhs)
        chain = ctx.chain(ctx.classes_of(lhs), ctx.classes_of(rhs))
        doc["chain"] = None if chain is None else [
            {"from": ctx.class_labels(s.source), "to": ctx.class_labels(s.target),
             "positions": None if s.positions is None else [list(p) for p in s.positions]}
            for s in chain
        ]
    doc["verdict"] = verdict
    fmt = lambda f: "<" + ", ".join(f) + ">"
    lines = [f"{fmt(doc['lhs'])} {'~' if verdict else '!~'} {fmt(doc['rhs'])} over {P.name} ({relation})"]
    for step in doc.get("chain") or []:
        pos = "equal classes" if step["positions"] is None else \
            f"positions {tuple(step['positions'][0])} / {tuple(step['positions'][1])}"
        lines.append(f"  {fmt(step['from'])} -> {fmt(step['to'])}: {pos}")
    return Outcome(doc, "\n".join(lines), 0 if verdict else 1)


def cmd_witt_classes(args) -> Outcome:
    P = load_pair(args.file, args.s, args.bound)
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    ctx = IsometryContext(P, limit=args.limit)
    doc = classes_manifest(ctx, args.n, members=args.members)
    if args.output:
        write_doc(args.output, doc)
    lines = [f"{P.name}, n={args.n}: {doc['class_count']} isometry classes over {ctx.Q.n} quotient classes"]
    lines += [f"  <{', '.join(c['representative'])}>  ({c['members_count']} tuples)" for c in doc["classes"]]
    return Outcome(doc, "\n".join(lines), 0)


def _load_all(specs: Sequence[str], bound: int) -> list:
    return [load_model(s, bound) for s in specs]


def cmd_product(args) -> Outcome:
    models = _load_all(args.files, args.bound)
    if models and all(isinstance(m, PqPair) for m in models):
        P = product_pair(models)
        doc = {**pair_to_dict(P), "kind": "product-pair"}
        size = P.base.n
    else:
        M = product([base_of(m) for m in models])
        doc = {**to_dict(M), "kind": "product"}
        size = M.n
    if args.output:
        write_doc(args.output, doc)
    return Outcome(doc, f"{doc['name']}: {size} elements", 0)


def cmd_reduced_product(args) -> Outcome:
    Ms = [base_of(m) for m in _load_all(args.files, args.bound)]
    try:
        J = [int(x) for x in split_labels(args.j)]
    except ValueError:
        raise UsageError("--j takes 0-based factor indices") from None
    R = reduced_product(Ms, J)
    doc = {**to_dict(R), "kind": "reduced-product", "J": sorted(set(J))}
    if args.output:
        write_doc(args.output, doc)
    return Outcome(doc, f"{R.name}: {R.n} elements", 0)


def cmd_iso(args) -> Outcome:
    A, B = (base_of(m) for m in _load_all([args.a, args.b], args.bound))
    f = find_isomorphism(A, B)
    doc = {
        "kind": "isomorphism", "source": A.name, "target": B.name,
        "verdict": f is not None,
        "mapping": None if f is None else {A.labels[a]: B.labels[b] for a, b in enumerate(f)},
    }
    if f is None:
        return Outcome(doc, f"{A.name} and {B.name} are not isomorphic", 1)
    pairs = ", ".join(f"{k} -> {v}" for k, v in doc["mapping"].items())
    return Outcome(doc, f"{A.name} ~= {B.name}: {pairs}", 0)


def _parse_map(A: FiniteMultiring, B: FiniteMultiring, text: str) -> list[int]:
    items = split_labels(text)
    if items and all("=" in x for x in items):
        f: dict[int, int] = {}
        for item in items:
            src, _, dst = item.partition("=")
            f[A.index(src.strip())] = B.index(dst.strip())
        if set(f) != set(A.elements):
            raise UsageError("--map must assign every source element")
        return [f[a] for a in A.elements]
    if len(items) != A.n:
        raise UsageError(f"--map needs {A.n} target labels in source order (or src=dst pairs)")
    return [B.index(x) for x in items]


def cmd_morphism(args) -> Outcome:
    A, B = (base_of(m) for m in _load_all([args.a, args.b], args.bound))
    w = check_morphism(_parse_map(A, B, args.map), A, B)
    doc = {"kind": "morphism", **w.to_dict(), "verdict": w.is_morphism}
    lines = [f"{A.name} -> {B.name}: {w.classification}", *law_lines(w.report, A.labels)]
    return Outcome(doc, "\n".join(lines), 0 if w.is_morphism else 1)


def cmd_search(args) -> Outcome:
    target = base_of(load_model(args.target, args.bound))
    if args.max_ring_size < 1:
        raise UsageError("--max-ring-size must be positive")
    res = strictification_search(target, args.max_ring_size, require_pq_pair=args.require_pq_pair,
                                 threads=args.threads)
    doc = res.to_dict()
    if args.output:
        write_doc(args.output, doc)
    if res.found:
        text = (f"found: q({res.ring}, {{{','.join(res.S)}}}) ~= {target.name}"
                f" (pq-pair: {'yes' if res.pair_is_pq_pair else 'no'})")
    else:
        text = (f"exhausted: no ring of size <= {args.max_ring_size} in the catalog"
                f" ({len(res.rings_tried)} rings, {res.subsets_tried} subsets)")
    return Outcome(doc, text, 0 if res.found else 1)


def cmd_corpus(args) -> Outcome:
    spec = CorpusSpec(max_size=args.max_size, min_size=args.min_size, sampled=args.sampled,
                      samples=args.samples, seed=args.seed)
    structures = enumerate_corpus(spec)
    doc = corpus_manifest(spec, structures)
    code = 0
    lines = [f"corpus sizes {spec.min_size}..{spec.max_size}: {doc['total']} structures "
             + "(" + ", ".join(f"size {k}: {v}" for k, v in sorted(doc["counts"].items())) + ")"]
    if args.proposition:
        prop = check_pqt_rr_implies_pqh(structures)
        doc["proposition"] = prop.to_dict()
        lines.append(f"PQt and real reduced imply PQh: {prop.examined} examined, "
                     f"{len(prop.hypothesis_holds)} satisfy the hypothesis, "
                     f"{len(prop.counterexamples)} counterexamples")
        code = 0 if prop.ok else 1
    if args.dump_dir:
        out = Path(args.dump_dir)
        out.mkdir(parents=True, exist_ok=True)
        for M in structures:
            (out / f"{M.name}.json").write_text(dumps(to_dict(M), pretty=True))
    if args.output:
        write_doc(args.output, doc)
    return Outcome(doc, "\n".join(lines), code)


def _parse_env(M: FiniteMultiring, text: str | None) -> dict[int, int]:
    env: dict[int, int] = {}
    for item in split_labels(text or ""):
        var, sep, val = item.partition("=")
        var = var.strip()
        if not sep or not var.startswith("x") or not var[1:].isdigit():
            raise UsageError(f"--env entries look like x0=label, got {item!r}")
        env[int(var[1:])] = M.index(val.strip())
    return env


def cmd_eval(args) -> Outcome:
    model = load_model(args.file, args.bound)
    if isinstance(model, ComputablePair):
        raise UsageError("eval needs a finite structure")
    if args.s is not None:
        M = base_of(model)
        model = PqPair(M, parse_S(M, args.s))
    M = base_of(model)
    phi = parse(args.formula)
    env = _parse_env(M, args.env)
    doc: dict[str, Any] = {"kind": "eval", "structure": model.name, "formula": to_text(phi)}
    if free_vars(phi) - set(env):
        raise UsageError("formula has free variables; bind them with --env x0=label,...")
    if env:
        verdict = evaluate(model, phi, env)
        doc["env"] = {f"x{k}": M.labels[v] for k, v in sorted(env.items())}
        ce = None
    else:
        ce = counterexample(model, phi)
        verdict = ce is None
        if ce is not None:
            doc["counterexample"] = {f"x{k}": M.labels[v] for k, v in ce.items()}
    doc["verdict"] = verdict
    text = f"{doc['formula']}: {'true' if verdict else 'false'} in {model.name}"
    if ce:
        text += "  counterexample: " + ", ".join(f"{k}={v}" for k, v in doc["counterexample"].items())
    return Outcome(doc, text, 0 if verdict else 1)


# ---------------------------------------------------------------- parser

def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the command name
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="print the canonical JSON verdict document")
    p.add_argument("--bound", type=int, default=argparse.SUPPRESS,
                   help="witness search bound for the integer pair (default 100)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled runs (default 0)")
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes (default 1)")
    return p


GLOBAL_DEFAULTS = {"json": False, "bound": 100, "seed": 0, "threads": 1}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="pqmr", parents=[common],
                                     description="Finite multirings, pq-pairs and their forms.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help, description=help)
        p.set_defaults(fn=fn)
        return p

    p = add("check", cmd_check, "run a theory checker plus the logic cross-check")
    p.add_argument("file")
    p.add_argument("--theory", default="multiring", choices=CHECK_THEORIES)
    p.add_argument("--window", help="integer pair: universal range, e.g. -10..10 or a comma list")
    p.add_argument("--units-mode", default="units", choices=("units", "nonzero"),
                   help="integer pair: hyperbolic law over units or over all nonzero elements")

    p = add("quotient", cmd_quotient, "Marshall quotient by a multiplicative subset")
    p.add_argument("file")
    p.add_argument("--s", help="indices, or sums-of-squares | squares | one")
    p.add_argument("--window", help="integer pair window (default -10..10)")
    p.add_argument("-o", "--output")

    for name, fn, help in (("isometry", cmd_isometry, "decide isometry of two forms over a pair"),
                           ("witt-classes", cmd_witt_classes, "partition forms of length n into isometry classes")):
        p = add(name, fn, help)
        p.add_argument("file")
        p.add_argument("--s", help="override S (indices or a keyword); default the file's S or {1}")
        p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="bound on |Q|^n")
        if name == "isometry":
            p.add_argument("--lhs", required=True, help="comma-separated element labels")
            p.add_argument("--rhs", required=True)
            p.add_argument("--standard", action="store_true", help="use the standard recursive extension")
        else:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--members", action="store_true", help="list every member tuple")
            p.add_argument("-o", "--output")

    p = add("product", cmd_product, "componentwise product (pairs give the product pair)")
    p.add_argument("files", nargs="+")
    p.add_argument("-o", "--output")

    p = add("reduced-product", cmd_reduced_product, "reduced product modulo the principal filter of J")
    p.add_argument("files", nargs="+")
    p.add_argument("--j", required=True, help="0-based factor indices generating the filter")
    p.add_argument("-o", "--output")

    p = add("iso", cmd_iso, "find an isomorphism between two structures")
    p.add_argument("a")
    p.add_argument("b")

    p = add("morphism", cmd_morphism, "check and classify a carrier map")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--map", required=True, help="target labels in source order, or src=dst pairs")

    p = add("search", cmd_search, "find a finite ring pair whose quotient is the target")
    p.add_argument("--target", required=True)
    p.add_argument("--max-ring-size", type=int, required=True)
    p.add_argument("--require-pq-pair", action="store_true")
    p.add_argument("-o", "--output")

    p = add("corpus", cmd_corpus, "enumerate small multirings up to isomorphism")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--min-size", type=int, default=1)
    p.add_argument("--sampled", action="store_true", help="allow sizes above the exhaustive limit")
    p.add_argument("--samples", type=int, default=5000)
    p.add_argument("--proposition", action="store_true",
                   help="also test that PQt and real reduced imply PQh on the corpus")
    p.add_argument("--dump-dir", help="write every structure file here")
    p.add_argument("-o", "--output")

    p = add("eval", cmd_eval, "evaluate a formula over a structure or pair")
    p.add_argument("file")
    p.add_argument("formula")
    p.add_argument("--s", help="turn the structure into a pair with this S")
    p.add_argument("--env", help="bindings for free variables, e.g. x0=1,x1=-1")
    return parser


def _join_values(argv: Sequence[str]) -> list[str]:
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None) -> Outcome:
    """Parse and execute; usage errors come back as exit-code-2 outcomes."""
    parser = build_parser()
    args = parser.parse_args(_join_values(sys.argv[1:] if argv is None else argv))
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        out = args.fn(args)
    except UsageError as e:
        out = Outcome({"kind": "error", "command": args.command, "error": str(e)}, f"error: {e}", 2)
    out.json = args.json
    return out


def main(argv: Sequence[str] | None = None) -> int:
    try:
        out = run(argv)
    except SystemExit as e:  # argparse
        return int(e.code or 0)
    stream = sys.stderr if out.code == 2 and not out.json else sys.stdout
    print(dumps(out.doc) if out.json else out.text, file=stream)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
