"""``heartwood`` command-line interface.

Systems are given as a bundled name (``SYS-GOLD``) or a JSON file path.
Scalars on the command line are ``p/q`` or ``a|b`` (meaning ``a + b sqrt d``
under ``--scalar quad:d``).  Exit codes: 0 ok, 2 input error, 3 budget
exceeded, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys as _sys
from fractions import Fraction

from . import catalog, io
from .approx import build_sequence, convergence_report, length_table, orbit_stages
from .errors import BudgetError, DepthError, FormatError, InputError, InvariantBreach
from .heart import cyclic_words, geometric_probe, heart_approx, limit_set_approx, qk_eval, theorem_audit
from .laminations import (
    admissible_words,
    closure_chain,
    default_epsilon,
    dual_membership,
    unit_cylinder_leaves,
)
from .scalars import ExactScalar, scalar_to_json
from .suspension import SuspensionTree, build_ball
from .words import explicit, fib_gen, periodic

SCHEMA = 1


def _scalar_context(text):
    if text == "rational":
        return None
    if text.startswith("quad:"):
        try:
            d = int(text[5:])
        except ValueError:
            raise InputError(f"bad scalar context {text!r}") from None
        return d
    raise InputError(f"scalar context must be 'rational' or 'quad:d', got {text!r}")


def _scalar(text, d):
    try:
        if "|" in text:
            a, b = text.split("|", 1)
            if d is None:
                raise InputError(f"{text!r} needs --scalar quad:d")
            return ExactScalar.quadratic(Fraction(a), Fraction(b), d)
        return ExactScalar(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad scalar {text!r}") from None


def _scalars(text, d):
    return [_scalar(x, d) for x in text.split(",") if x]


def _word(sys, text):
    w = sys.parse(text)
    sys.check_word(w)
    return w


def _infinite(sys, text):
    """``fib``, ``periodic:WORD`` or ``explicit:WORD``."""
    if text == "fib":
        return fib_gen(sys.alphabet, *sys.alphabet.names[:2])
    kind, _, body = text.partition(":")
    if kind == "periodic":
        return periodic(_word(sys, body))
    if kind == "explicit":
        return explicit(_word(sys, body))
    raise InputError(f"infinite word must be fib, periodic:W or explicit:W, got {text!r}")


def _subtree(sys, text, d):
    """A JSON list of points, or comma-separated coordinates on edge 0."""
    t = sys.tree
    if text.lstrip().startswith("["):
        try:
            pts = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"malformed JSON: {exc.msg}", "--kprime") from None
        return t.hull(io.point_from_json(p, t, d, f"--kprime[{i}]") for i, p in enumerate(pts))
    return t.hull(t.along(x) for x in _scalars(text, d))


def _sub_points(S):
    return [io.point_to_json(p) for p in S.points]


# --- commands -------------------------------------------------------------


def cmd_gen(args, d):
    if args.kind == "iet":
        lengths = _scalars(args.lengths, d)
        perm = tuple(int(x) for x in args.perm.split(","))
        total = sum(lengths, ExactScalar(0))
        spec = catalog.IetSpec(total, lengths, perm, tuple(args.letters.split(",")) if args.letters else ())
        sys = catalog.gen_iet(spec)
    else:
        doms = []
        for part in args.domains.split(";"):
            lo, hi = _scalars(part, d)
            doms.append((lo, hi))
        sys = catalog.gen_itm(
            _scalar(args.length, d), doms, _scalars(args.translations, d),
            args.letters.split(",") if args.letters else None,
        )
    return io.system_to_json(sys), io.serialize_system(sys)


def cmd_validate(args, sys, d):
    doc = {"ok": True, "generators": sys.alphabet.names}
    if len(sys.tree.edges) == 1:
        doc["regime"] = catalog.interval_regime(sys)
    text = f"ok: {len(sys.generators)} generators" + (f", regime {doc['regime']}" if "regime" in doc else "")
    return doc, text


def cmd_dom(args, sys, d):
    w = _word(sys, args.word)
    D = sys.dom(w)
    doc = {"word": sys.format(w), "domain": _sub_points(D), "diameter": scalar_to_json(sys.tree.diameter(D))}
    return doc, f"dom({sys.format(w)}) = {list(D.points) or 'empty'}"


def cmd_adm_count(args, sys, d):
    words = admissible_words(sys, args.n, args.positive)
    counts = {m: sum(1 for w in words if len(w) == m) for m in range(1, args.n + 1)}
    return {"counts": counts}, "\n".join(f"{m} {c}" for m, c in counts.items())


def cmd_laminary(args, sys, d):
    chain = closure_chain(sys, args.n, args.k, args.positive, budget=args.budget)
    sl = chain.slices[args.k]
    words = sorted(sl.admissible, key=lambda w: (len(w), w))
    doc = {
        "n": args.n, "k": args.k, "stabilized_at": chain.stabilized_at,
        "words": [{"word": sys.format(w), "provenance": sl.provenance(w)} for w in words],
    }
    return doc, io.write_words(sl.sorted(), sys.alphabet).rstrip("\n")


def cmd_dual_member(args, sys, d):
    v = _word(sys, args.word)
    T = SuspensionTree(sys)
    eps = _scalar(args.eps, d) if args.eps else default_epsilon(sys, max(args.search_len, 2), T)
    r = dual_membership(sys, v, eps, args.search_len, T)
    doc = {"status": r.status, "eps": scalar_to_json(eps), "tried": r.tried}
    text = r.status
    if r.status == "YES":
        doc.update(u=sys.format(r.u), w=sys.format(r.w), length=scalar_to_json(r.length))
        text += f" u={sys.format(r.u)} w={sys.format(r.w)} length={r.length}"
    return doc, text


def cmd_leaves(args, sys, d):
    leaves = unit_cylinder_leaves(sys, args.n, canonical=True)
    doc = {"leaves": [{"X": sys.format(l.X), "Y": sys.format(l.Y), "domain": _sub_points(l.domain)} for l in leaves]}
    text = "\n".join(f"{sys.format(l.X)} {sys.format(l.Y)} {list(l.domain.points)}" for l in leaves)
    return doc, text


def cmd_ball(args, sys, d):
    ball = build_ball(sys, args.R, positive_only=args.positive, budget=args.budget)
    if args.format == "dot":
        return ball.to_json(), ball.to_dot()
    return ball.to_json(), json.dumps(ball.to_json(), indent=2)


def cmd_translen(args, sys, d):
    tl = SuspensionTree(sys).translation_length(_word(sys, args.word))
    doc = {"length": scalar_to_json(tl.length), "kind": tl.kind, "witness": io.point_to_json(tl.witness)}
    return doc, f"{tl.length} {tl.kind} witness {tl.witness}"


def cmd_qk(args, sys, d):
    st = qk_eval(sys, _infinite(sys, args.word), args.n)
    doc = {"kind": st.kind, "depth": st.depth}
    if st.kind == "ADMISSIBLE":
        doc.update(domain=_sub_points(st.domain), diameter=scalar_to_json(st.diameter))
        text = f"ADMISSIBLE domain {list(st.domain.points)} diameter {st.diameter}"
    elif st.kind == "RAY":
        doc.update(
            distances=[scalar_to_json(x) for x in st.distances],
            certificates=st.certificates, dead_index=st.dead_index,
        )
        text = "RAY distances " + " ".join(str(x) for x in st.distances)
    else:
        doc.update(split=st.split, tail_domain=_sub_points(st.tail_domain))
        text = f"EVENTUALLY_ADMISSIBLE split {st.split} tail domain {list(st.tail_domain.points)}"
    return doc, text


def cmd_limit_set(args, sys, d):
    pieces = limit_set_approx(sys, args.n)
    return {"pieces": [_sub_points(S) for S in pieces]}, "\n".join(str(list(S.points)) for S in pieces)


def cmd_heart(args, sys, d):
    h = heart_approx(sys, args.n)
    doc = {"heart": _sub_points(h.subtree), "empty": h.empty}
    return doc, ("EMPTY (empty limit set)" if h.empty else str(list(h.subtree.points)))


def cmd_audit(args, sys, d):
    Kp = _subtree(sys, args.kprime, d) if args.kprime else sys.core
    r = theorem_audit(sys, Kp, args.n, args.k)
    doc = {
        "n": r.n, "k": r.k, "cond3": r.cond3,
        "cond3_witness": _sub_points(r.cond3_witness) if r.cond3_witness else None,
        "cond2": r.cond2, "cond2_witness": sys.format(r.cond2_witness) if r.cond2_witness else None,
        "consistent": r.consistent, "lengths_equal": r.lengths_equal,
        "lengths": [[sys.format(w), scalar_to_json(a), scalar_to_json(b)] for w, a, b in r.lengths],
        "violations": r.violations, "note": r.note,
    }
    return doc, "\n".join(r.lines(sys.format))


def cmd_geom_probe(args, sys, d):
    p = geometric_probe(sys, args.n)
    doc = {"rows": p.rows, "stable_from": p.stable_from, "empty": p.empty}
    lines = [f"m={m} extremal={e} branch={b}" for m, e, b in p.rows]
    lines.append("empty heart" if p.empty else f"stable from m={p.stable_from}")
    return doc, "\n".join(lines)


def cmd_approx(args, sys, d):
    sizes = [int(x) for x in args.orbit_sizes.split(",")]
    stages = orbit_stages(sys, sys.core.points[0], sizes)
    seq = build_sequence(sys, stages)
    words = list(cyclic_words(sys, args.wordlen))
    table = length_table(seq, words, budget=args.budget)
    rep = convergence_report(seq, args.wordlen)
    rows = list(table.to_rows(sys.format))
    doc = {
        "stages": [_sub_points(S) for S in seq.subtrees],
        "skipped": seq.skipped,
        "table": rows,
        "gaps": [scalar_to_json(g) for g in rep.gaps],
        "non_increasing": rep.non_increasing,
        "empty_laminations": rep.empty_laminations,
    }
    if args.csv:
        import io as _io

        buf = _io.StringIO()
        w = csv.writer(buf)
        w.writerow(["word"] + [f"K({i + 1})" for i in range(len(seq.stages))] + ["host"])
        w.writerows(rows)
        return doc, buf.getvalue().rstrip("\n")
    lines = [" ".join(r) for r in rows]
    lines.append("gaps: " + " ".join(str(g) for g in rep.gaps))
    return doc, "\n".join(lines)


COMMANDS = {
    "validate": cmd_validate,
    "dom": cmd_dom,
    "adm-count": cmd_adm_count,
    "laminary": cmd_laminary,
    "dual-member": cmd_dual_member,
    "leaves": cmd_leaves,
    "ball": cmd_ball,
    "translen": cmd_translen,
    "qk": cmd_qk,
    "limit-set": cmd_limit_set,
    "heart": cmd_heart,
    "audit": cmd_audit,
    "geom-probe": cmd_geom_probe,
    "approx": cmd_approx,
}


DEFAULTS = {"scalar": "quad:5", "budget": None, "json": False}


def _global_flags(p, default):
    p.add_argument("--scalar", default=default, help="scalar context for command-line numbers: rational or quad:d (default quad:5)")
    p.add_argument("--budget", type=int, default=default, help="maximum number of copies or words to enumerate")
    p.add_argument("--json", action="store_true", default=default, help="print a JSON report")


def build_parser():
    p = argparse.ArgumentParser(prog="heartwood", description="Exact computations with systems of partial isometries.")
    _global_flags(p, argparse.SUPPRESS)
    # the same flags are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **k: _add(*a, parents=[common], **k)

    gen = sub.add_parser("gen", help="build an interval exchange or translation system")
    gsub = gen.add_subparsers(dest="kind", required=True)
    _gadd = gsub.add_parser
    gsub.add_parser = lambda *a, **k: _gadd(*a, parents=[common], **k)
    iet = gsub.add_parser("iet")
    iet.add_argument("--lengths", required=True, help="comma-separated piece lengths")
    iet.add_argument("--perm", required=True, help="comma-separated target rank of each piece")
    iet.add_argument("--letters", default="")
    itm = gsub.add_parser("itm")
    itm.add_argument("--length", required=True)
    itm.add_argument("--domains", required=True, help="lo,hi;lo,hi;...")
    itm.add_argument("--translations", required=True)
    itm.add_argument("--letters", default="")

    def system_cmd(name, help_text):
        c = sub.add_parser(name, help=help_text)
        c.add_argument("system", help="bundled name or system JSON path")
        return c

    system_cmd("validate", "parse and validate a system")
    c = system_cmd("dom", "domain of a word")
    c.add_argument("word")
    c = system_cmd("adm-count", "admissible word counts by length")
    c.add_argument("n", type=int)
    c.add_argument("--positive", action="store_true")
    c = system_cmd("laminary", "laminary closure at depth k")
    c.add_argument("n", type=int)
    c.add_argument("k", type=int)
    c.add_argument("--positive", action="store_true")
    c = system_cmd("dual-member", "search a small-translation-length extension")
    c.add_argument("word")
    c.add_argument("search_len", type=int)
    c.add_argument("--eps", default=None, help="default: half the smallest forbidden-word gap")
    c = system_cmd("leaves", "unit-cylinder leaves at depth n")
    c.add_argument("n", type=int)
    c = system_cmd("ball", "word-metric ball of the suspension tree")
    c.add_argument("R", type=int)
    c.add_argument("--positive", action="store_true")
    c.add_argument("--format", choices=["dot", "json"], default="json")
    c = system_cmd("translen", "translation length of a cyclically reduced word")
    c.add_argument("word")
    c = system_cmd("qk", "evaluate Q_K on an infinite word")
    c.add_argument("word", help="fib, periodic:W or explicit:W")
    c.add_argument("n", type=int)
    c = system_cmd("limit-set", "depth-n limit set pieces")
    c.add_argument("n", type=int)
    c = system_cmd("heart", "depth-n heart approximation")
    c.add_argument("n", type=int)
    c = system_cmd("audit", "finite-depth audit of a candidate subtree")
    c.add_argument("n", type=int)
    c.add_argument("k", type=int)
    c.add_argument("--kprime", default=None, help="coordinates on edge 0 or a JSON point list")
    c = system_cmd("geom-probe", "heart extremal and branch counts by depth")
    c.add_argument("n", type=int)
    c = system_cmd("approx", "orbit-hull approximation table")
    c.add_argument("--orbit-sizes", default="2,4,9")
    c.add_argument("--wordlen", type=int, default=4)
    c.add_argument("--csv", action="store_true")
    return p


def run(argv=None, out=None):
    out = out or _sys.stdout
    args = build_parser().parse_args(argv)
    for key, value in DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    d = _scalar_context(args.scalar)
    if args.command == "gen":
        doc, text = cmd_gen(args, d)
    else:
        sys = io.load_system(args.system)
        doc, text = COMMANDS[args.command](args, sys, d)
    if args.json:
        doc = {"schema": SCHEMA, "command": args.command, **doc}
        print(json.dumps(doc, indent=2, default=str), file=out)
    else:
        print(text, file=out)
    return 0


def main(argv=None):
    try:
        return run(argv)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}" + (f" (required {exc.required})" if exc.required else ""), file=_sys.stderr)
        return 3
    except InvariantBreach as exc:
        print(f"internal invariant breach: {exc}", file=_sys.stderr)
        return 4
    except (InputError, DepthError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    _sys.exit(main())
