"""Kauffman polynomial of links and invariant of planar trivalent graphs."""

import json

from ._kauffman import KauffmanError, OracleMismatch, RingElem, constants
from . import _kauffman

__all__ = ["KauffmanError", "OracleMismatch", "RingElem", "constants",
           "eval_braid", "eval_pd", "eval_graph", "to_ring"]


def _run(kind, text, so_n=None, n2_fast=False, mirror=False, normalized=False,
         oracle_check=False, max_crossings=14):
    return json.loads(_kauffman._evaluate(kind, text, so_n, n2_fast, mirror, normalized,
                                          oracle_check, max_crossings))


def eval_braid(text, **kw):
    """Evaluate the closure of a braid word such as "n=3; 1 -2 1"."""
    return _run("braid", text, **kw)


def eval_pd(text, **kw):
    """Evaluate a link diagram given as X(a,b,c,d) records."""
    return _run("pd", text, **kw)


def eval_graph(text, **kw):
    """Evaluate an RE graph diagram (X and W records)."""
    return _run("graph", text, **kw)


def to_ring(value):
    """RingElem from the "value" field of a result."""
    total = RingElem(0)
    for t in value["terms"]:
        total = total + (RingElem.parse(str(t["coeff"])) * RingElem.A(t["expA"])
                         * RingElem.B(t["expB"]) * RingElem.a(t["expa"]))
    return total * RingElem.parse("(1)/(A-B)^%d" % value["denomPow"])
