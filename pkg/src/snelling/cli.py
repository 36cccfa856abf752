"""Command-line front end.

Every verb reads a poset or action document from a file or standard input and
prints a report.  Verbs that construct something (gen, fixture, find-snelling,
build-action, reconstruct) write the document to stdout or ``-o`` and the
status line to stderr, so they can be piped into the next verb.

Exit status: 0 affirmative, 1 negative verdict (witness printed), 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable

from . import generators, hecke, io, perms, qsym, supersolvable
from .labeling import chain_word, find_snelling, format_word, labeling_to_names, verify_el, verify_snelling
from .poset import (
    NotALattice,
    NotBounded,
    NotGraded,
    PosetError,
    grade,
    is_bowtie_free,
    lattice_ops,
    sublattice_closure,
)
from .verdict import Verdict

FORMAT_VERSION = 1


class InputError(Exception):
    pass


class Outcome:
    """What a verb produced: an exit code, report fields, an optional document and text lines."""

    def __init__(self, ok: bool, tag: str, reason: str = "", witness: Any = None):
        self.ok = ok
        self.fields: dict[str, Any] = {"ok": ok, "tag": tag, "reason": reason, "witness": witness}
        self.lines: list[str] = []
        self.document: str | None = None

    @classmethod
    def of(cls, verdict: Verdict) -> "Outcome":
        return cls(verdict.ok, verdict.tag, verdict.reason, verdict.witness)

    def add(self, **fields) -> "Outcome":
        self.fields.update(fields)
        return self


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else "|".join(map(str, k)): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# input


def _read(path: str | None) -> tuple[bytes, Path | None]:
    if path in (None, "-"):
        return sys.stdin.buffer.read(), None
    p = Path(path)
    try:
        return p.read_bytes(), p.parent
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _poset(args):
    data, _ = _read(args.input)
    return io.parse_poset_file(data)


def _labeled(args):
    P, labeling = _poset(args)
    if labeling is None:
        raise InputError("this command needs a poset document with 'labels'")
    return P, labeling


def _action(args) -> hecke.ChainAction:
    data, base = _read(args.input)
    return io.parse_action_file(data, base)


def _chain_arg(text: str) -> list[str] | int:
    text = text.strip()
    if text.isdigit():
        return int(text)
    if text.startswith("["):
        try:
            chain = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"--chain: {exc}") from None
        return [str(x) for x in chain]
    return [part.strip() for part in text.split("<")]


# verbs


def cmd_gen(args) -> Outcome:
    family, n = args.family, args.n
    if family == "jperm":
        try:
            perm = [int(c) for c in (n.split(",") if "," in n else n)]
        except ValueError:
            raise InputError(f"not a permutation: {n!r}") from None
        P, labeling = generators.gen_j_of_perm(perm)
    else:
        try:
            size = int(n)
        except ValueError:
            raise InputError(f"size must be an integer, got {n!r}") from None
        if size < 1 or (family in ("pi", "nc") and size < 2):
            raise InputError(f"size {size} too small for {family}")
        build: dict[str, Callable] = {
            "bn": generators.gen_boolean,
            "pi": generators.gen_partition_lattice,
            "nc": generators.gen_noncrossing,
            "chain": generators.gen_chain,
        }
        P, labeling = build[family](size)
    out = Outcome(True, "generated", f"{family} {n}: {len(P)} elements, {len(P.covers)} covers")
    out.document = io.write_poset(P, labeling)
    return out


def cmd_fixture(args) -> Outcome:
    if args.name == "bowtie-action":
        P, action = generators.fixture_bowtie_good_action()
        out = Outcome(True, "fixture", f"{len(P)} elements, {len(action.chains)} chains")
        out.document = io.write_action(action)
    elif args.name == "b4-minus-edge":
        P, labeling = generators.fixture_b4_minus_edge()
        out = Outcome(True, "fixture", f"{len(P)} elements with inherited labels")
        out.document = io.write_poset(P, labeling)
    else:
        P = generators.fixture_snellable_bowtie()
        out = Outcome(True, "fixture", f"{len(P)} elements, labelled by the snelling search")
        out.document = io.write_poset(P, find_snelling(P))
    return out


def cmd_check_graded(args) -> Outcome:
    P, _ = _poset(args)
    try:
        cert = grade(P)
    except NotBounded as exc:
        return Outcome(False, "graded bounded poset", str(exc))
    except NotGraded as exc:
        out = Outcome(False, "graded bounded poset", str(exc), exc.witness)
        out.lines = [" < ".join(c) for c in exc.witness]
        return out
    ranks = {P.name(x): r for x, r in enumerate(cert.rank)}
    return Outcome(True, "graded bounded poset", f"rank {cert.n}").add(rank=cert.n, ranks=ranks)


def cmd_check_lattice(args) -> Outcome:
    P, _ = _poset(args)
    try:
        lattice_ops(P)
    except NotALattice as exc:
        witness = {"pair": exc.pair, "kind": exc.kind, "bounds": exc.bounds}
        return Outcome(False, "lattice", str(exc), witness)
    return Outcome(True, "lattice", f"{len(P)} elements, meet and join defined everywhere")


def cmd_check_bowtie(args) -> Outcome:
    P, _ = _poset(args)
    return Outcome.of(is_bowtie_free(P))


def _interval_lines(verdict: Verdict) -> list[str]:
    w = verdict.witness
    if isinstance(w, dict) and "chains" in w:
        return [f"{' < '.join(c)}  {format_word(word)}" for c, word in zip(w["chains"], w["words"])]
    return []


def cmd_verify_el(args) -> Outcome:
    P, labeling = _labeled(args)
    verdict = verify_el(P, labeling)
    out = Outcome.of(verdict)
    out.lines = _interval_lines(verdict)
    return out


def cmd_verify_snelling(args) -> Outcome:
    P, labeling = _labeled(args)
    verdict = verify_snelling(P, labeling)
    out = Outcome.of(verdict)
    out.lines = _interval_lines(verdict)
    return out


def cmd_find_snelling(args) -> Outcome:
    P, _ = _poset(args)
    try:
        grade(P)
    except (NotBounded, NotGraded) as exc:
        return Outcome(False, "S_n EL-labeling", f"NotSnellable: {exc}")
    labeling = find_snelling(P)
    if labeling is None:
        return Outcome(False, "S_n EL-labeling", "NotSnellable: exhaustive search found no snelling")
    out = Outcome(True, "S_n EL-labeling", "snelling found")
    out.document = io.write_poset(P, labeling)
    out.add(labels=labeling_to_names(P, labeling))
    return out


def cmd_build_action(args) -> Outcome:
    P, labeling = _labeled(args)
    verdict = verify_snelling(P, labeling)
    if not verdict:
        out = Outcome.of(verdict)
        out.lines = _interval_lines(verdict)
        return out
    action = hecke.action_from_snelling(P, labeling)
    out = Outcome(True, hecke.HECKE_TAG, f"{len(action.chains)} chains, U_1..U_{action.n - 1}")
    out.document = io.write_action(action)
    return out


def cmd_verify_hecke(args) -> Outcome:
    return Outcome.of(hecke.verify_hecke(_action(args)))


def cmd_verify_good(args) -> Outcome:
    action = _action(args)
    relations = hecke.verify_hecke(action)
    if not relations:
        return Outcome.of(relations)
    P = action.poset
    verdict = hecke.verify_good(P, action)
    ch = qsym.ch_of_action(action)
    omega_f = qsym.omega_involution(qsym.f_p(P))
    out = Outcome.of(verdict).add(ch=ch.lines(), omega_fp=omega_f.lines())
    if isinstance(verdict.witness, list):
        out.lines = [f"S={qsym.format_set(S)}: alpha={a}, chains={b}" for S, a, b in verdict.witness]
    out.lines += ["ch:"] + ["  " + s for s in ch.lines()]
    out.lines += ["omega F_P:"] + ["  " + s for s in omega_f.lines()]
    return out


def cmd_reconstruct(args) -> Outcome:
    action = _action(args)
    P = action.poset
    tag = hecke.RECONSTRUCT_TAG
    try:
        labeling = hecke.reconstruct_labeling(P, action)
    except hecke.AmbiguousPermutation as exc:
        witness = {"chain": exc.chain, "words": exc.words, "perms": exc.perms}
        out = Outcome(False, tag, f"AmbiguousPermutation: {exc}", witness)
        out.lines = [f"U-word {format_word(w)} gives {format_word(p)}" for w, p in zip(exc.words, exc.perms)]
        return out
    except hecke.EdgeConflict as exc:
        return Outcome(False, tag, f"EdgeConflict: {exc}", {"edge": exc.edge, "labels": exc.labels})
    except (hecke.HeckeRelationFailure, hecke.NotGood, hecke.NoSink, hecke.MultipleSinks, hecke.NonTerminating) as exc:
        return Outcome(False, tag, f"{type(exc).__name__}: {exc}")
    out = Outcome(True, tag, "labelling rebuilt from the action")
    out.document = io.write_poset(P, labeling)
    return out


def cmd_flag_vectors(args) -> Outcome:
    P, _ = _poset(args)
    fv = qsym.flag_vectors(P)
    rows = {qsym.format_set(qsym.mask_to_set(S)): [fv.alpha[S], fv.beta[S]] for S in range(len(fv.alpha))}
    out = Outcome(True, "flag f- and h-vectors", f"rank {fv.n}").add(alpha=fv.alpha, beta=fv.beta, by_set=rows)
    out.lines = [f"S={S}: alpha={a} beta={b}" for S, (a, b) in rows.items()]
    return out


def cmd_fp(args) -> Outcome:
    P, _ = _poset(args)
    q = qsym.f_p(P)
    if args.omega:
        q = qsym.omega_involution(q)
    name = "omega F_P" if args.omega else "F_P"
    out = Outcome(True, f"{name} in the fundamental basis", f"degree {q.n}").add(coefficients=q.lines())
    out.lines = q.lines()
    if args.vars:
        poly = qsym.format_poly(qsym.evaluate(q, args.vars))
        out.add(polynomial=poly)
        out.lines += [f"in x1..x{args.vars}:"] + ["  " + s for s in poly]
    return out


def cmd_supersolvable(args) -> Outcome:
    P, _ = _poset(args)
    try:
        grade(P)
        table = lattice_ops(P)
    except (NotBounded, NotGraded) as exc:
        return Outcome(False, supersolvable.SS_TAG, f"not a graded bounded poset: {exc}")
    except NotALattice as exc:
        return Outcome(False, supersolvable.SS_TAG, f"not a lattice: {exc}", {"pair": exc.pair, "kind": exc.kind})
    results: dict[str, Any] = {}
    lines = []
    if args.method in ("direct", "both"):
        cert = supersolvable.is_supersolvable_direct(table)
        results["direct"] = cert.supersolvable
        results["m_chain"] = cert.m_chain
        lines.append(f"direct: {'M-chain ' + ' < '.join(cert.m_chain) if cert.m_chain else 'no M-chain'}")
    if args.method in ("snelling", "both"):
        verdict = supersolvable.is_supersolvable_via_snelling(table)
        results["snelling"] = verdict.ok
        if verdict.ok:
            results["labels"] = labeling_to_names(P, verdict.witness)
        lines.append(f"snelling: {'found' if verdict.ok else 'none'}")
    answers = {results[k] for k in ("direct", "snelling") if k in results}
    if len(answers) > 1:
        out = Outcome(False, supersolvable.SS_TAG, "methods disagree", results)
    else:
        ok = answers.pop()
        out = Outcome(ok, supersolvable.SS_TAG, "supersolvable" if ok else "NotSupersolvable", results)
    out.lines = lines
    return out


def cmd_qm(args) -> Outcome:
    P, labeling = _poset(args)
    if labeling is None:
        labeling = find_snelling(P)
        if labeling is None:
            return Outcome(False, supersolvable.QM_TAG, "NotSnellable: no labels given and none found")
    verdict = verify_snelling(P, labeling)
    if not verdict:
        return Outcome.of(verdict)
    action = hecke.action_from_snelling(P, labeling)
    m = action.chain_index(_chain_arg(args.chain))
    omega = hecke.omega_of_chain(action, m)
    closure = supersolvable.closure_Q_m(action, m, labeling)
    iso = supersolvable.verify_qm_isomorphism(closure, omega)
    p_omega = supersolvable.poset_p_omega(omega)
    relations = [f"{a}<{b}" for a, b in sorted(p_omega.named_covers(), key=lambda c: (int(c[0]), int(c[1])))]
    fields = {
        "chain": action.chain_names(m),
        "omega": omega,
        "Q_m": sorted(P.chain_names(closure.elements)),
        "size": len(closure.elements),
        "chains_in_closure": len(closure.chains),
        "P_omega_covers": relations,
        "isomorphism": iso.ok,
    }
    words = sorted(chain_word(labeling, action.chains[c]) for c in closure.chains)
    lambdas = {P.name(u): sorted(closure.lambda_sets[u]) for u in closure.elements}
    fields["words"] = words
    fields["lambda"] = lambdas
    ok = iso.ok
    lines = [
        f"omega_m = {format_word(omega)}",
        "M_m words: " + " ".join(format_word(w) for w in words),
        "Lambda_u: " + ", ".join(f"{u} -> {qsym.format_set(s)}" for u, s in lambdas.items()),
        f"|Q_m| = {len(closure.elements)}, |M_m| = {len(closure.chains)}",
        f"P_omega covers: {', '.join(relations) or 'none (antichain)'}",
        f"Q_m ~ J(P_omega): {'yes' if iso.ok else 'no: ' + iso.reason}",
    ]
    try:
        table = lattice_ops(P)
    except NotALattice:
        table = None
    if table is not None:
        equal = supersolvable.verify_sublattice_equality(table, action, m, labeling)
        m0 = action.chains[hecke.find_sink_chain(action)]
        generated = sublattice_closure(table, set(action.chains[m]) | set(m0))
        fields["sublattice_equal"] = equal.ok
        fields["generated_size"] = len(generated)
        ok = ok and equal.ok
        lines.append(f"Q_m = sublattice generated by m and m_0: {'yes' if equal.ok else 'no: ' + equal.reason}")
    out = Outcome(ok, supersolvable.QM_TAG, iso.reason, iso.witness).add(**fields)
    out.lines = lines
    return out


# driver


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="snelling", description="Snellings, 0-Hecke actions and supersolvability.")
    ap.add_argument("--json", action="store_true", help="print a machine-readable report")
    ap.add_argument("-v", "--verbose", action="store_true", help="log warnings (e.g. dropped transitive covers)")
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn, help_: str, reads: bool = True, writes: bool = False):
        p = sub.add_parser(name, help=help_)
        if reads:
            p.add_argument("input", nargs="?", default="-", help="input file (default: stdin)")
        if writes:
            p.add_argument("-o", "--output", help="write the document here instead of stdout")
        p.set_defaults(fn=fn)
        return p

    p = verb("gen", cmd_gen, "generate a labelled family member", reads=False, writes=True)
    p.add_argument("family", choices=["bn", "pi", "nc", "chain", "jperm"])
    p.add_argument("n", help="size, or for jperm a permutation such as 2413")
    p = verb("fixture", cmd_fixture, "emit a sporadic fixture", reads=False, writes=True)
    p.add_argument("name", choices=["bowtie-action", "b4-minus-edge", "snellable-bowtie"])
    verb("check-graded", cmd_check_graded, "bounded and graded?")
    verb("check-lattice", cmd_check_lattice, "meets and joins everywhere?")
    verb("check-bowtie", cmd_check_bowtie, "bowtie-free?")
    verb("verify-el", cmd_verify_el, "check the labels form an EL-labeling")
    verb("verify-snelling", cmd_verify_snelling, "check the labels form an S_n EL-labeling")
    verb("find-snelling", cmd_find_snelling, "search for an S_n EL-labeling", writes=True)
    verb("build-action", cmd_build_action, "U_i action from a snelling", writes=True)
    verb("verify-hecke", cmd_verify_hecke, "check the 0-Hecke relations of an action")
    verb("verify-good", cmd_verify_good, "compare the action's character with the flag f-vector")
    verb("reconstruct", cmd_reconstruct, "rebuild a snelling from a good action", writes=True)
    verb("flag-vectors", cmd_flag_vectors, "flag f- and h-vectors")
    p = verb("fp", cmd_fp, "F_P in the fundamental basis")
    p.add_argument("--omega", action="store_true", help="apply the omega involution")
    p.add_argument("--vars", type=int, default=0, help="also expand in this many variables")
    p = verb("supersolvable", cmd_supersolvable, "decide supersolvability")
    p.add_argument("--method", choices=["direct", "snelling", "both"], default="both")
    p = verb("qm", cmd_qm, "chain closure Q_m and its order-ideal model")
    p.add_argument("--chain", required=True, help="chain index, JSON list, or names joined by '<'")
    return ap


def _emit(args, out: Outcome) -> None:
    if args.json:
        report = {"format": FORMAT_VERSION, "command": args.verb, **_jsonable(out.fields)}
        if out.document is not None:
            report["document"] = json.loads(out.document)
        print(json.dumps(report, sort_keys=True))
    if out.document is not None:
        target = getattr(args, "output", None)
        if target:
            Path(target).write_text(out.document)
        elif not args.json:
            sys.stdout.write(out.document)
    if args.json:
        return
    stream = sys.stderr if out.document is not None else sys.stdout
    status = "PASS" if out.ok else "FAIL"
    reason = out.fields["reason"]
    print(f"{status} [{out.fields['tag']}]" + (f" {reason}" if reason else ""), file=stream)
    for line in out.lines:
        print("  " + line, file=stream)
    witness = out.fields["witness"]
    if not out.ok and witness is not None and not out.lines:
        print("  witness: " + json.dumps(_jsonable(witness)), file=stream)


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        out = args.fn(args)
    except (
        InputError,
        io.MalformedJson,
        io.LabelOnNonCover,
        PosetError,
        hecke.ActionError,
        perms.PermError,
        generators.NotALinearExtension,
    ) as exc:
        if args.json:
            print(json.dumps({"format": FORMAT_VERSION, "command": args.verb, "error": type(exc).__name__, "message": str(exc)}))
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    _emit(args, out)
    return 0 if out.ok else 1


def main() -> None:
    sys.exit(run())
