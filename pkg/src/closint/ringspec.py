"""Versioned ring-spec files.

Example::

    closint-ring 1
    family: semigroup S<2,3>
    field: GF(5)
    precision: 12
    ideal I = (t^4 + 2*t^5)
    closure c = tight[dim1]

Families: ``semigroup S<...>``, ``cubic``, ``axes x,y``,
``hypersurface x,y,z: x^3 = <poly>`` and ``presented x,y: <rel>, <rel>``.
Blank lines and ``#`` comments are ignored; printing emits the canonical
form, which parses back to the same text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .closures import (BrokenClosure, ClosureOperation, FrobeniusClosure, FrobeniusModuleClosure,
                       IdentityClosure, IntegralClosure, ModuleClosure, SocleCollapse, TightDim1, TightSocle)
from .errors import ParseError, UsageError
from .expr import parse_ideal, parse_poly
from .fields import GF
from .models import HypersurfaceRing, PresentedRing, RingIdeal, RingModel, SemigroupRing, axes, cubic
from .semigroups import NumericalSemigroup

__all__ = ["VERSION", "RingSpec", "parse_ring_spec", "parse_family", "parse_field", "make_closure",
           "CLOSURE_NAMES"]

VERSION = 1
HEADER = "closint-ring"

CLOSURE_NAMES = ("identity", "integral", "tight[dim1]", "tight[socle,tau=m]", "frobenius[e_max=3]",
                 "frobenius-module[e=1]", "module[normalization]", "module[canonical]", "socle-collapse",
                 "broken")


def parse_field(text: str, line: int = 1, col: int = 1) -> GF:
    m = re.fullmatch(r"\s*(?:GF|F)\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*|\s*(\d+)(?:\^(\d+))?\s*", text)
    if not m:
        raise ParseError(f"bad field {text.strip()!r}; expected GF(p) or GF(p^d)", line, col, text)
    p = int(m.group(1) or m.group(3))
    d = int(m.group(2) or m.group(4) or 1)
    if d == 1:
        # GF(q) with q a prime power
        r = next((r for r in range(2, p + 1) if p % r == 0), p)
        k = 0
        while p > 1 and p % r == 0:
            p //= r
            k += 1
        p, d = (r, k) if p == 1 else (p * r ** k, 1)
    try:
        return GF(p, d)
    except ValueError as err:
        raise ParseError(str(err), line, col, text) from None


def _vars(text: str, line: int, col: int):
    names = [v.strip() for v in text.split(",")]
    if not names or any(not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v) for v in names):
        raise ParseError(f"bad variable list {text.strip()!r}", line, col, text)
    return names


def parse_family(text: str, F: GF, line: int = 1, col: int = 1) -> RingModel:
    s = text.strip()
    if s.startswith("semigroup"):
        try:
            S = NumericalSemigroup.parse(s[len("semigroup"):])
        except Exception as err:
            raise ParseError(str(err), line, col, text) from None
        return SemigroupRing(S, F)
    if s == "cubic":
        return cubic(F)
    if s.startswith("axes"):
        rest = s[len("axes"):].strip() or "x,y"
        return axes(F, _vars(rest, line, col))
    for kind in ("hypersurface", "presented"):
        if s.startswith(kind):
            body = s[len(kind):]
            if ":" not in body:
                raise ParseError(f"{kind} needs 'variables: relations'", line, col, text)
            vtext, rtext = body.split(":", 1)
            names = _vars(vtext, line, col)
            offset = col + text.index(rtext) if rtext in text else col
            if kind == "presented":
                rels = parse_ideal(rtext, names, F, line)
                return PresentedRing(F, names, rels)
            if "=" not in rtext:
                raise ParseError("hypersurface needs 'x^d = rule'", line, offset, text)
            lhs, rhs = rtext.split("=", 1)
            m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*\^\s*(\d+)\s*", lhs)
            if not m or m.group(1) != names[0]:
                raise ParseError(f"left side must be {names[0]}^d", line, offset, text)
            rule = parse_poly(rhs.strip(), names, F, line)
            return HypersurfaceRing(F, names, int(m.group(2)), rule)
    raise ParseError(f"unsupported family {s!r}", line, col, text)


def _has_canonical(A) -> bool:
    model = A.meta.get("model")
    return model is not None and hasattr(model, "canonical_module")


def make_closure(text: str, model: RingModel | None = None) -> ClosureOperation:
    """Closure from a strategy string such as ``tight[dim1]`` or ``frobenius[e_max=2]``."""
    s = text.strip()
    m = re.fullmatch(r"([a-z\-]+)(?:\[(.*)\])?", s)
    if not m:
        raise UsageError(f"bad closure name {s!r}")
    name, args = m.group(1), m.group(2)
    opts = {}
    if args:
        for part in re.split(r",(?![^()]*\))", args):
            if "=" in part:
                k, v = part.split("=", 1)
                opts[k.strip()] = v.strip()
            else:
                opts[part.strip()] = None
    if name == "identity":
        return IdentityClosure()
    if name == "integral":
        return IntegralClosure()
    if name == "tight":
        if "dim1" in opts:
            return TightDim1()
        if "socle" in opts:
            tau = opts.get("tau", "m")
            if tau != "m":
                if model is None:
                    raise UsageError("tau given by generators needs a ring")
                tau = model.parse_ideal(tau)
            return TightSocle(tau)
        raise UsageError("tight needs a strategy: tight[dim1] or tight[socle,tau=...]")
    if name == "frobenius":
        return FrobeniusClosure(int(opts.get("e_max", 3)))
    if name == "frobenius-module":
        return FrobeniusModuleClosure(int(opts.get("e", 1)))
    if name == "module":
        if "normalization" in opts:
            return ModuleClosure(lambda A: A.meta["model"].normalization(A.meta["precision"]),
                                 name="module[normalization]", supports=IntegralClosure().supports)
        if "canonical" in opts:
            return ModuleClosure(lambda A: A.meta["model"].canonical_module(A.meta["precision"]),
                                 name="module[canonical]", supports=_has_canonical)
        raise UsageError("module closure needs a source: module[normalization] or module[canonical]")
    if name == "socle-collapse":
        return SocleCollapse()
    if name == "broken":
        return BrokenClosure()
    raise UsageError(f"unknown closure {s!r}; known: {', '.join(CLOSURE_NAMES)}")


@dataclass
class RingSpec:
    family: str
    field_text: str
    model: RingModel
    precision: int | None = None
    ideals: dict = field(default_factory=dict)
    closures: dict = field(default_factory=dict)
    version: int = VERSION

    def print(self) -> str:
        out = [f"{HEADER} {self.version}", f"family: {self.family}", f"field: {self.field_text}"]
        if self.precision is not None:
            out.append(f"precision: {self.precision}")
        out += [f"ideal {k} = {v}" for k, v in self.ideals.items()]
        out += [f"closure {k} = {v}" for k, v in self.closures.items()]
        return "\n".join(out) + "\n"

    def ideal(self, name_or_expr: str) -> RingIdeal:
        text = self.ideals.get(name_or_expr, name_or_expr)
        return self.model.parse_ideal(text)

    def closure(self, name_or_strategy: str) -> ClosureOperation:
        return make_closure(self.closures.get(name_or_strategy, name_or_strategy), self.model)


_LINE = re.compile(r"(ideal|closure)\s+([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.+)")


def parse_ring_spec(text: str) -> RingSpec:
    lines = text.splitlines()
    body = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise ParseError("empty ring spec", 1, 1, "")
    n, head = body[0]
    m = re.fullmatch(r"\s*" + HEADER + r"\s+(\d+)\s*", head)
    if not m:
        raise ParseError(f"expected '{HEADER} <version>' header", n, 1, head)
    version = int(m.group(1))
    if version != VERSION:
        raise ParseError(f"unsupported ring-spec version {version}", n, head.index(m.group(1)) + 1, head)
    fam = fld = prec = None
    ideals, closures = {}, {}
    for n, ln in body[1:]:
        s = ln.strip()
        col = ln.index(s[0]) + 1
        if s.startswith("family:"):
            fam = (n, ln, s[len("family:"):].strip(), ln.index(":") + 2)
        elif s.startswith("field:"):
            fld = (n, ln, s[len("field:"):].strip(), ln.index(":") + 2)
        elif s.startswith("precision:"):
            v = s[len("precision:"):].strip()
            if not v.isdigit() or int(v) < 1:
                raise ParseError("precision must be a positive integer", n, ln.index(":") + 2, ln)
            prec = int(v)
        else:
            mm = _LINE.fullmatch(s)
            if not mm:
                raise ParseError(f"unrecognized line {s!r}", n, col, ln)
            kind, name, value = mm.groups()
            target = ideals if kind == "ideal" else closures
            if name in target:
                raise ParseError(f"duplicate {kind} {name!r}", n, col, ln)
            target[name] = value.strip()
    if fam is None or fld is None:
        raise ParseError("ring spec needs both 'family:' and 'field:' lines", len(lines) or 1, 1, "")
    F = parse_field(fld[2], fld[0], fld[3])
    model = parse_family(fam[2], F, fam[0], fam[3])
    if prec is not None:
        model.meta["default_precision"] = prec
    spec = RingSpec(fam[2], fld[2], model, prec, ideals, closures, version)
    # validate ideal expressions now so that errors carry positions
    for n, ln in body[1:]:
        mm = _LINE.fullmatch(ln.strip())
        if mm and mm.group(1) == "ideal":
            value = mm.group(3).strip()
            start = ln.index(value)
            try:
                parse_ideal(value, model.variables, F, n)
            except ParseError as err:
                raise ParseError(str(err).split(": ", 1)[1], n, start + err.column, ln) from None
    return spec
