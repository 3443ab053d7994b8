"""Batch command line front end.

    iota-nd check FILE... --logic MODE
    iota-nd rank FILE --logic MODE
    iota-nd normalize FILE --logic MODE [--out F] [--trace F] [--max-steps N]
    iota-nd elaborate FILE (--logic-from A --logic-to B | --expand {efq,eqE} --logic MODE) [--out F]
    iota-nd audit FILE --logic MODE --trace F

Exit codes: 0 success, 1 parse error, 2 check (or audit) failure, 3 step
budget exceeded.  Diagnostics go to stderr; proof output to --out or
stdout.  IOTA_ND_COLOR=1 forces colored diagnostics, =0 disables them.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import calculus, elaborator, normalizer, parser
from .calculus import Mode, mode_from_name
from .parser import ParseError, ProofScript, ResolveError

EXIT_OK, EXIT_PARSE, EXIT_CHECK, EXIT_STEPS = 0, 1, 2, 3


def _use_color() -> bool:
    flag = os.environ.get("IOTA_ND_COLOR")
    if flag == "1":
        return True
    if flag == "0":
        return False
    return sys.stderr.isatty()


def _diag(message: str):
    if _use_color():
        message = f"\x1b[31m{message}\x1b[0m"
    print(message, file=sys.stderr)


def _load(path: str) -> ProofScript | None:
    try:
        with open(path, encoding="utf-8") as fh:
            return parser.parse_proof(fh.read())
    except OSError as e:
        _diag(f"{path}: {e}")
    except (ParseError, ResolveError) as e:
        _diag(f"{path}: {e}")
    return None


def _check_script(path: str, script: ProofScript, mode: Mode) -> bool:
    ok = True
    for name, d in script.deductions.items():
        for err in calculus.check(d, mode):
            line, _col = script.positions.get((name, err.path), (None, None))
            where = f"{path}:{line}" if line is not None else path
            _diag(f"{where}: {name}: {err}")
            ok = False
    return ok


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_check(args) -> int:
    mode = mode_from_name(args.logic)
    status = EXIT_OK
    for path in args.files:
        script = _load(path)
        if script is None:
            status = EXIT_PARSE
            continue
        if not _check_script(path, script, mode):
            status = max(status, EXIT_CHECK)
    return status


def cmd_rank(args) -> int:
    mode = mode_from_name(args.logic)
    script = _load(args.file)
    if script is None:
        return EXIT_PARSE
    if not _check_script(args.file, script, mode):
        return EXIT_CHECK
    for name, d in script.deductions.items():
        segments = normalizer.find_maximal(d)
        print(f"{name}: {normalizer.rank_of(segments)}")
        for s in segments:
            where = ".".join(map(str, s.paths[0])) or "-"
            flag = " identity" if s.identity_site else ""
            print(f"  segment degree={s.degree} length={s.length} "
                  f"at={where}{flag} formula={parser.formula_text(s.formula)}")
    return EXIT_OK


def _normalized_trace(script: ProofScript, max_steps: int) -> tuple:
    out = ProofScript(mode=script.mode, signature=script.signature)
    lines = []
    for name, d in script.deductions.items():
        nd, trace = normalizer.normalize(d, max_steps=max_steps)
        out.deductions[name] = nd
        lines.append(f"# deduction {name}\n" + normalizer.trace_text(trace))
    return out, "".join(lines)


def cmd_normalize(args) -> int:
    mode = mode_from_name(args.logic)
    script = _load(args.file)
    if script is None:
        return EXIT_PARSE
    if not _check_script(args.file, script, mode):
        return EXIT_CHECK
    try:
        result, trace = _normalized_trace(script, args.max_steps)
    except normalizer.MaxStepsExceeded as e:
        _diag(f"{args.file}: {e}")
        return EXIT_STEPS
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(trace)
    _emit(parser.script_text(result), args.out)
    return EXIT_OK


def cmd_elaborate(args) -> int:
    script = _load(args.file)
    if script is None:
        return EXIT_PARSE
    out = ProofScript(signature=script.signature)
    try:
        if args.expand:
            mode = mode_from_name(args.logic)
            out.mode = mode.value
            for name, d in script.deductions.items():
                out.deductions[name] = elaborator.expand_general_nodes(
                    d, mode, args.expand)
        else:
            src = mode_from_name(args.logic_from)
            dst = mode_from_name(args.logic_to)
            out.mode = dst.value
            if not _check_script(args.file, script, src):
                return EXIT_CHECK
            for name, d in script.deductions.items():
                out.deductions[name] = elaborator.translate(d, src, dst)
            mode = dst
    except elaborator.ElaborationError as e:
        _diag(f"{args.file}: {e}")
        return EXIT_CHECK
    if not _check_script(args.file, out, mode):
        return EXIT_CHECK
    _emit(parser.script_text(out), args.out)
    return EXIT_OK


def cmd_audit(args) -> int:
    mode = mode_from_name(args.logic)
    script = _load(args.file)
    if script is None:
        return EXIT_PARSE
    if not _check_script(args.file, script, mode):
        return EXIT_CHECK
    try:
        with open(args.trace, encoding="utf-8") as fh:
            recorded = fh.read()
    except OSError as e:
        _diag(f"{args.trace}: {e}")
        return EXIT_PARSE
    try:
        result, lines = _normalized_trace(script, args.max_steps)
    except normalizer.MaxStepsExceeded as e:
        _diag(f"{args.file}: {e}")
        return EXIT_STEPS
    if lines != recorded:
        _diag(f"{args.trace}: trace does not replay")
        return EXIT_CHECK
    for name, d in result.deductions.items():
        if normalizer.find_maximal(d):
            _diag(f"{args.file}: {name}: normalized result is not normal")
            return EXIT_CHECK
        if calculus.check(d, mode):
            _diag(f"{args.file}: {name}: normalized result does not check")
            return EXIT_CHECK
    print("trace ok")
    return EXIT_OK


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="iota-nd", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)
    logics = [m.value for m in Mode]

    p = sub.add_parser("check", help="check proof scripts")
    p.add_argument("files", nargs="+")
    p.add_argument("--logic", required=True, choices=logics)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("rank", help="print rank and maximal segments")
    p.add_argument("file")
    p.add_argument("--logic", required=True, choices=logics)
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("normalize", help="bring deductions into normal form")
    p.add_argument("file")
    p.add_argument("--logic", required=True, choices=logics)
    p.add_argument("--out")
    p.add_argument("--trace")
    p.add_argument("--max-steps", type=int, default=10 ** 6)
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("elaborate",
                       help="expand derived rules or translate between the "
                            "two description-elimination systems")
    p.add_argument("file")
    p.add_argument("--logic-from", choices=logics)
    p.add_argument("--logic-to", choices=logics)
    p.add_argument("--expand", choices=["efq", "eqE"])
    p.add_argument("--logic", choices=logics)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_elaborate)

    p = sub.add_parser("audit", help="replay and verify a normalization trace")
    p.add_argument("file")
    p.add_argument("--logic", required=True, choices=logics)
    p.add_argument("--trace", required=True)
    p.add_argument("--max-steps", type=int, default=10 ** 6)
    p.set_defaults(fn=cmd_audit)

    return top


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    if args.command == "elaborate":
        if args.expand:
            if not args.logic:
                _diag("--expand requires --logic")
                return EXIT_PARSE
        elif not (args.logic_from and args.logic_to):
            _diag("elaborate requires --expand or --logic-from/--logic-to")
            return EXIT_PARSE
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
