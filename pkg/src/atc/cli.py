"""Batch command-line frontend.

Exit codes: 0 success or affirmative verdict; 1 negative verdict (not
modular, not entailed, postulate failure, semantic track refused); 2 parse or
usage error; 3 unsupported query shape.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .entailment import (
    UnsupportedQueryError,
    entails,
    is_consistent,
    is_modular,
    simplified_implicit_laws,
)
from .figures import render_model_png
from .kripke import canonical_frame, model_json_text, model_to_dot, model_to_json
from .laws import ActionTheory, executability_warning
from .modelchange import contract_model_set, revise_model_set
from .parsing import (
    ParseError,
    parse_law,
    parse_theory,
    render_formula,
    render_law,
    render_theory,
    theory_to_json,
)
from .postulates import Verdict, check_postulates
from .theorychange import candidates_to_json, contract, theory_from_model_set

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3


def _load_theory(path: str) -> ActionTheory:
    text = Path(path).read_text(encoding="utf-8")
    return parse_theory(text)


def _parse_laws(theory: ActionTheory, law_texts: list[str]):
    return [parse_law(text, theory.sig) for text in law_texts]


def _context_formula(theory, valuation):
    from .formula import valuation_formula

    return render_formula(valuation_formula(theory.sig, valuation))


def cmd_check(args, out) -> int:
    theory = _load_theory(args.file)
    warning = executability_warning(theory)
    out.write(
        f"{theory.name}: {len(theory.statics)} static, "
        f"{len(theory.effects)} effect, {len(theory.execs)} executability\n"
    )
    if warning:
        out.write(f"warning: {warning}\n")
    if not is_consistent(theory):
        out.write("warning: theory is inconsistent (no model has worlds)\n")
    return EXIT_OK


def cmd_modular(args, out) -> int:
    theory = _load_theory(args.file)
    report = is_modular(theory)
    if report.modular:
        out.write("modular\n")
        return EXIT_OK
    out.write("not modular\n")
    for i, law in enumerate(simplified_implicit_laws(theory), start=1):
        out.write(f"implicit law (round {i}): {render_formula(law)}\n")
    out.write(f"strongest implicit law: {render_formula(report.final_law)}\n")
    return EXIT_NEGATIVE


def cmd_entail(args, out) -> int:
    theory = _load_theory(args.file)
    laws = _parse_laws(theory, args.laws)
    if entails(theory, laws):
        out.write("entailed\n")
        return EXIT_OK
    out.write("not entailed\n")
    return EXIT_NEGATIVE


def _write_candidate_files(theory, cands, out_dir, out) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    doc = candidates_to_json(
        cands, theory.sig, render_formula, render_law, theory_to_json
    )
    (out_dir / "candidates.json").write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    rows = ["id\tcontext\tpi_prime\tlaws"]
    for i, cand in enumerate(cands):
        named = cand.theory.with_name(f"{theory.name}_c{i}")
        (out_dir / f"candidate_{i:02d}.atc").write_text(
            render_theory(named), encoding="utf-8"
        )
        ctx = (
            _context_formula(theory, cand.context)
            if cand.context is not None
            else "-"
        )
        from .formula import term_formula

        pip = (
            render_formula(term_formula(cand.pi_prime))
            if cand.pi_prime is not None
            else "-"
        )
        rows.append(f"c{i}\t{ctx}\t{pip}\t{cand.theory.card()}")
        if is_modular(cand.theory).modular:
            render_model_png(
                canonical_frame(cand.theory),
                str(out_dir / f"candidate_{i:02d}.png"),
                title=f"candidate c{i}",
            )
    (out_dir / "summary.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    out.write(f"wrote {len(cands)} candidate files to {out_dir}\n")


def cmd_contract(args, out) -> int:
    theory = _load_theory(args.file)
    (law,) = _parse_laws(theory, [args.law])
    if args.semantic:
        report = is_modular(theory)
        if not report.modular:
            out.write(
                "not modular: the semantic track needs a canonical model; "
                "run `atc modular` for the implicit laws\n"
            )
            return EXIT_NEGATIVE
        outcome = contract_model_set([canonical_frame(theory)], law)
        out.write(f"{len(outcome.results)} minimal model set(s)\n")
        for i, (result, prov) in enumerate(
            zip(outcome.results, outcome.provenance)
        ):
            out.write(
                f"m{i}: {len(result)} models; "
                f"+worlds {list(prov.added_worlds)} "
                f"+arrows {list(prov.added_arrows)} "
                f"-arrows {list(prov.removed_arrows)}\n"
            )
        for note in outcome.notes:
            out.write(f"note: {note}\n")
        if args.out:
            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
            for i, result in enumerate(outcome.results):
                changed = result[-1]
                for j, m in enumerate(result):
                    (out_dir / f"result_{i:02d}_model_{j}.json").write_text(
                        model_json_text(m), encoding="utf-8"
                    )
                render_model_png(
                    changed, str(out_dir / f"result_{i:02d}.png"),
                    title=f"result m{i}",
                )
            out.write(f"wrote model files to {out_dir}\n")
        return EXIT_OK
    cands = contract(theory, law)
    out.write(f"{len(cands)} candidate theorie(s)\n")
    header = f"{'id':<4} {'context':<32} {'pi_prime':<18} laws"
    out.write(header + "\n")
    for i, cand in enumerate(cands):
        ctx = (
            _context_formula(theory, cand.context)
            if cand.context is not None
            else "-"
        )
        from .formula import term_formula

        pip = (
            render_formula(term_formula(cand.pi_prime))
            if cand.pi_prime is not None
            else "-"
        )
        out.write(f"{'c' + str(i):<4} {ctx:<32} {pip:<18} {cand.theory.card()}\n")
        if cand.note:
            out.write(f"     note: {cand.note}\n")
    if args.out:
        _write_candidate_files(theory, cands, args.out, out)
    return EXIT_OK


def cmd_revise(args, out) -> int:
    theory = _load_theory(args.file)
    (law,) = _parse_laws(theory, [args.law])
    if not is_consistent(theory):
        out.write("theory is inconsistent; nothing to revise\n")
        return EXIT_NEGATIVE
    report = is_modular(theory)
    if not report.modular:
        out.write(
            "not modular: revision works on the canonical model; "
            "run `atc modular` for the implicit laws\n"
        )
        return EXIT_NEGATIVE
    outcome = revise_model_set([canonical_frame(theory)], law)
    if not outcome.results:
        out.write("revision impossible: " + "; ".join(outcome.notes) + "\n")
        return EXIT_NEGATIVE
    out.write(f"{len(outcome.results)} revised model set(s)\n")
    for i, result in enumerate(outcome.results):
        induced = theory_from_model_set(
            result, theory.sig, name=f"{theory.name}_rev{i}"
        )
        out.write(f"--- result {i}: induced theory ---\n")
        out.write(render_theory(induced))
        if args.out:
            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / f"revised_{i:02d}.atc").write_text(
                render_theory(induced), encoding="utf-8"
            )
            for j, m in enumerate(result):
                (out_dir / f"revised_{i:02d}_model_{j}.json").write_text(
                    model_json_text(m), encoding="utf-8"
                )
                render_model_png(
                    m, str(out_dir / f"revised_{i:02d}_model_{j}.png"),
                    title=f"revised m{i}.{j}",
                )
    if args.out:
        out.write(f"wrote revision files to {args.out}\n")
    return EXIT_OK


def cmd_canonical(args, out) -> int:
    theory = _load_theory(args.file)
    report = is_modular(theory)
    model = canonical_frame(theory)
    if args.dot:
        out.write(model_to_dot(model, name=theory.name))
    else:
        doc = model_to_json(model)
        doc["canonical"] = report.modular
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if args.png:
        render_model_png(model, args.png, title=f"{theory.name} canonical frame")
    if not report.modular:
        out.write("# warning: not modular; the frame is not a model\n")
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_postulates(args, out) -> int:
    theory = _load_theory(args.file)
    (law,) = _parse_laws(theory, [args.law])
    report = check_postulates(theory, law)
    failed = False
    for result in report.results:
        line = f"{result.postulate}: {result.verdict.value}"
        if result.witness:
            line += f" ({result.witness})"
        out.write(line + "\n")
        failed = failed or result.verdict is Verdict.FAILS
    return EXIT_NEGATIVE if failed else EXIT_OK


def cmd_serve(args, out) -> int:
    import uvicorn

    from .service import create_app

    port = args.port or int(os.environ.get("ATC_PORT", "8000"))
    data = args.data or os.environ.get("ATC_DATA", "./atc-data")
    app = create_app(data)
    out.write(f"serving on port {port}, data in {data}\n")
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atc", description="action theory change workbench"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and report a theory file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("modular", help="modularity report with implicit laws")
    p.add_argument("file")
    p.set_defaults(fn=cmd_modular)

    p = sub.add_parser("entail", help="does the theory entail the law(s)?")
    p.add_argument("file")
    p.add_argument("laws", nargs="+", metavar="LAW")
    p.set_defaults(fn=cmd_entail)

    p = sub.add_parser("contract", help="contract a law from the theory")
    p.add_argument("file")
    p.add_argument("law", metavar="LAW")
    p.add_argument("--semantic", action="store_true", help="model-level track")
    p.add_argument("--out", help="write candidate files to this directory")
    p.set_defaults(fn=cmd_contract)

    p = sub.add_parser("revise", help="revise the canonical model by a law")
    p.add_argument("file")
    p.add_argument("law", metavar="LAW")
    p.add_argument("--out", help="write revision files to this directory")
    p.set_defaults(fn=cmd_revise)

    p = sub.add_parser("canonical", help="canonical frame of the theory")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dot", action="store_true")
    group.add_argument("--json", action="store_true")
    p.add_argument("--png", help="also render the frame to this PNG file")
    p.set_defaults(fn=cmd_canonical)

    p = sub.add_parser("postulates", help="postulate report for a contraction")
    p.add_argument("file")
    p.add_argument("law", metavar="LAW")
    p.set_defaults(fn=cmd_postulates)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--port", type=int)
    p.add_argument("--data")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args, out)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except UnsupportedQueryError as exc:
        sys.stderr.write(f"unsupported query: {exc}\n")
        return EXIT_UNSUPPORTED
    except FileNotFoundError as exc:
        sys.stderr.write(f"no such file: {exc.filename}\n")
        return EXIT_PARSE
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NEGATIVE


if __name__ == "__main__":
    raise SystemExit(main())
