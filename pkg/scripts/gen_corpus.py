"""Regenerate the proof corpus from the library's constructors.

Run from the repository root:

    python scripts/gen_corpus.py

Files are written to corpus/ in canonical serialized form; the test suite
asserts that the checked-in files match regeneration byte for byte.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from iota_nd import (  # noqa: E402
    Const, Eq, Existence, Iota, Mode, Pred, Signature, Var,
    derive_hintikka, instantiate_russell_bridge, parse_formula, substitute,
)
from iota_nd.elaborator import (  # noqa: E402
    expand_general_eqE, iota_e2_via_e2a, iota_e2a_via_e2,
)
from iota_nd.parser import ProofScript, script_text  # noqa: E402
from iota_nd.proof import Assumption, TemplateAux  # noqa: E402

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"

F = Pred("F", (Var("x"),))
G = Pred("G", (Var("x"),))
IOTA = Iota("x", F, G)
C, D = Const("c"), Const("d")


def sig(**kwargs) -> Signature:
    s = Signature()
    s.predicates.update(kwargs.get("predicates", {}))
    s.functions.update(kwargs.get("functions", {}))
    s.constants.update(kwargs.get("constants", ()))
    return s


def write(name: str, script: ProofScript):
    path = CORPUS / name
    path.write_text(script_text(script), encoding="utf-8")
    print(f"wrote {path}")


def main():
    CORPUS.mkdir(exist_ok=True)

    for mode, prefix in ((Mode.I, "i"), (Mode.INF, "inf")):
        s = ProofScript(mode=mode.value, signature=sig(predicates={"F": 1, "G": 1}))
        s.deductions["iota_to_russell"] = instantiate_russell_bridge(1, F, G, "x", mode)
        write(f"{prefix}_iota_to_russell.ndp", s)

        s = ProofScript(mode=mode.value, signature=sig(predicates={"F": 1, "G": 1}))
        s.deductions["russell_to_iota"] = instantiate_russell_bridge(2, F, G, "x", mode)
        write(f"{prefix}_russell_to_iota.ndp", s)

    s = ProofScript(mode="inf", signature=sig(constants={"c"}))
    s.deductions["existence_to_witness"] = derive_hintikka("ltr", C)
    write("inf_hintikka_ltr.ndp", s)

    s = ProofScript(mode="inf", signature=sig(constants={"c"}))
    s.deductions["witness_to_existence"] = derive_hintikka("rtl", C)
    write("inf_hintikka_rtl.ndp", s)

    # the template elimination derived in the identity-concluding system
    s = ProofScript(mode="inf",
                    signature=sig(predicates={"F": 1, "G": 1, "H": 1},
                                  constants={"c", "d"}))
    s.deductions["template_elim_derived"] = iota_e2a_via_e2(
        Assumption(IOTA), Assumption(Existence(C)), Assumption(Existence(D)),
        Assumption(substitute(F, "x", C)), Assumption(substitute(F, "x", D)),
        Assumption(Pred("H", (C,))), TemplateAux(Pred("H", (Var("w"),)), "w"))
    write("inf_iota2a_via_iota2.ndp", s)

    # the identity-concluding elimination derived in the template system
    s = ProofScript(mode="inf-prime",
                    signature=sig(predicates={"F": 1, "G": 1},
                                  constants={"c", "d"}))
    s.deductions["identity_elim_derived"] = iota_e2_via_e2a(
        Assumption(IOTA), Assumption(Existence(C)), Assumption(Existence(D)),
        Assumption(substitute(F, "x", C)), Assumption(substitute(F, "x", D)))
    write("inf_prime_iota2_via_iota2a.ndp", s)

    # Leibniz's law pushed through a description formula, as produced by the
    # elaborator
    a = Iota("x", Pred("F2", (Var("x"), Var("y"))), Pred("G2", (Var("x"), Var("y"))))
    s = ProofScript(mode="inf",
                    signature=sig(predicates={"F2": 2, "G2": 2},
                                  constants={"c", "d"}))
    s.deductions["leibniz_through_description"] = expand_general_eqE(
        Assumption(Eq(C, D)), a, "y", Assumption(substitute(a, "y", C)), Mode.INF)
    write("inf_eqE_iota_step.ndp", s)


if __name__ == "__main__":
    main()
