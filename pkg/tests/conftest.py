import pathlib

import pytest

from iota_nd import alpha_eq
from iota_nd.proof import (
    Assumption, FreshState, duplicate_fresh, iter_nodes, replace_at,
)

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS


def compose(host, plug, formula):
    """Graft plug (proving formula) into every open assumption of formula
    in host, with fresh labels and eigenvariables per copy."""
    state = FreshState.for_deductions(host, plug)
    out = host
    for path, node in sorted(iter_nodes(host), key=lambda pn: pn[0]):
        if (isinstance(node, Assumption) and node.label is None
                and alpha_eq(node.formula, formula)):
            out = replace_at(out, path, duplicate_fresh(plug, state))
    return out
