"""Robust stable matching under agent departures."""

from fractions import Fraction

from . import _core
from ._core import Document, InputError, InvariantError, PreconditionError, is_stable, rotations, stable_matchings

__all__ = [
    "Document",
    "InputError",
    "InvariantError",
    "PreconditionError",
    "evaluate",
    "is_stable",
    "load",
    "parse",
    "random_instance",
    "rotations",
    "solve",
    "stable_matchings",
]


def _nu_text(nu):
    if isinstance(nu, float):
        nu = Fraction(nu).limit_denominator()
    return str(Fraction(nu))


def _fractions(result):
    out = dict(result)
    for key in ("psi", "expected_blocking_pairs"):
        if key in out:
            out[key] = Fraction(out[key])
    if "breakdown" in out:
        b = out["breakdown"]
        out["breakdown"] = {
            "total": Fraction(b["total"]),
            "terms": [
                {
                    "leaver": t["leaver"],
                    "probability": Fraction(t["probability"]),
                    "contribution": Fraction(t["contribution"]),
                }
                for t in b["terms"]
            ],
        }
    if "matching" in out:
        out["matching"] = [tuple(p) for p in out["matching"]]
    return out


def parse(text):
    return _core.parse_instance(text)


def load(path):
    with open(path, encoding="utf-8") as f:
        return _core.parse_instance(f.read())


def random_instance(n, seed, self_rank_last=True, leavers=0):
    return _core.random_instance(n, seed, self_rank_last, leavers)


def solve(doc, nu, mode="stable", cost_convention="self", regret_convention="retained"):
    """Matching minimizing the robust objective; psi values are Fractions."""
    return _fractions(_core.solve(doc, _nu_text(nu), mode, cost_convention, regret_convention))


def evaluate(doc, matching, nu, cost_convention="self", regret_convention="retained"):
    return _fractions(_core.evaluate(doc, list(matching), _nu_text(nu), cost_convention, regret_convention))
