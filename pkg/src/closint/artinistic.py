"""Double-colon interiors of ideals through irreducible cofinal sequences.

For an approximately Gorenstein local ring with a decreasing sequence of
irreducible ideals ``J_t`` cofinal with the powers of ``m``, the Artinistic
interior of an ideal ``I`` is ``cap_t (J_t : (J_t : I)^cl)``.  Every term
contains ``J_t``, so it is computed exactly in a truncation that contains the
truncation kernel inside ``J_t``; partial intersections are lifted by
preimage to the largest precision seen so far.
"""

from __future__ import annotations

import ast
import operator
import re
import weakref
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import FiniteModule, Submodule, colon, is_irreducible, product, socle_of_quotient
from .closures import ClosureOperation, IdentityClosure, ModuleClosure
from .duality import InteriorOperation, smile_interior
from .errors import CapabilityError, ConstructionError, CrossCheckError, InconclusiveError, UsageError
from .expr import Poly, parse_ideal
from .models import RingIdeal, RingModel

__all__ = [
    "IrreducibleSequence",
    "irreducible_sequence",
    "ArtinisticResult",
    "artinistic_interior",
    "ArtinisticInterior",
    "test_ideal",
    "TrivialityReport",
    "triviality_check",
    "hom_test_membership",
    "frobenius_kernel",
    "WINDOW",
    "T_MAX",
]

WINDOW = 3
T_MAX = 12


# --------------------------------------------------------------------------
# recipes


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}


def _eval_index(expr: str, t: int) -> int:
    """Evaluate an integer expression in ``n`` (``+ - *`` and parentheses only)."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id == "n":
            return t
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        raise UsageError(f"unsupported index expression {expr!r}")
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as err:
        raise UsageError(f"bad index expression {expr!r}") from err
    return ev(tree)


def template_recipe(model: RingModel, template: str):
    """Recipe from text such as ``"(t^{2*n} + 3*t^{2*n+1})"``: braces hold integer expressions in n."""
    def recipe(t: int):
        text = re.sub(r"\{([^{}]*)\}", lambda m: str(_eval_index(m.group(1), t)), template)
        return parse_ideal(text, model.variables, model.field)
    recipe.text = template
    return recipe


@dataclass
class IrreducibleSequence:
    """``t -> J_t`` with verified irreducibility, nesting and cofinality."""

    model: RingModel
    recipe: object
    name: str
    start: int = 1
    verified: list = field(default_factory=list)
    precisions: dict = field(default_factory=dict)

    def generators(self, t: int) -> list[Poly]:
        return self.recipe(t)

    def ideal(self, t: int) -> RingIdeal:
        return RingIdeal(self.model, gens=self.generators(t))

    def precision(self, t: int) -> int:
        """Precision at which ``J_t`` contains the truncation kernel."""
        N = self.precisions.get(t)
        if N is None:
            lo = self.precisions.get(t - 1, 1)
            N = self.model.faithful_precision(self.generators(t), start=lo)
            self.precisions[t] = N
        return N

    def at(self, t: int, N: int | None = None) -> Submodule:
        return self.model.ideal(self.generators(t), N or self.precision(t))

    def verify(self, t_range) -> "IrreducibleSequence":
        for t in t_range:
            if t in self.verified:
                continue
            N = self.precision(t)
            J = self.at(t, N)
            A = J.module.algebra
            soc = socle_of_quotient(J).dim - J.dim
            if soc != 1:
                raise ConstructionError(
                    f"{self.name}: J_{t} is not irreducible (socle dimension {soc} at precision {N})")
            mt = A.maximal_ideal
            power = A.unit_ideal()
            for _ in range(t):
                power = product(mt, power)
            if not (J <= power):
                raise ConstructionError(f"{self.name}: J_{t} is not inside m^{t}")
            if t > self.start:
                N2 = max(N, self.precision(t - 1))
                if not (self.at(t, N2) <= self.at(t - 1, N2)):
                    raise ConstructionError(f"{self.name}: J_{t} is not inside J_{t - 1}")
            self.verified.append(t)
        return self


def irreducible_sequence(model: RingModel, recipe=None, *, a=0, b=0, verify=range(1, 5)) -> IrreducibleSequence:
    """Default sequences by ring family, or a custom recipe (callable or template string).

    * symmetric semigroup of multiplicity e: ``J_n = (t^{en} + a t^{en+1})``
    * ``<3,4,5>``: ``J_n = (t^{3n} + a t^{3n+1} + b t^{3n+2}, t^{3n+1} + a t^{3n+2} + b t^{3n+3})``
    * hypersurface with last two variables a system of parameters: ``(y^n, z^n)``
    * coordinate axes in two variables: ``((x + y)^n)``
    """
    F = model.field
    a, b = int(F.from_int(a)), int(F.from_int(b))
    if isinstance(recipe, str):
        rec = template_recipe(model, recipe)
        name = recipe
    elif recipe is not None:
        rec, name = recipe, getattr(recipe, "text", "custom")
    elif model.kind == "semigroup":
        S = model.semigroup
        e = S.multiplicity
        if model.meta.get("gorenstein"):
            name = f"(t^{{{e}n}} + {a} t^{{{e}n+1}})"

            def rec(n):
                return [Poly(F, 1, {(e * n,): 1, (e * n + 1,): a})]
        elif tuple(S.generators) == (3, 4, 5):
            name = f"(t^{{3n}} + {a} t^{{3n+1}} + {b} t^{{3n+2}}, t^{{3n+1}} + {a} t^{{3n+2}} + {b} t^{{3n+3}})"

            def rec(n):
                return [Poly(F, 1, {(3 * n,): 1, (3 * n + 1,): a, (3 * n + 2,): b}),
                        Poly(F, 1, {(3 * n + 1,): 1, (3 * n + 2,): a, (3 * n + 3,): b})]
        else:
            raise CapabilityError(f"no irreducible sequence recipe for {S}")
    elif model.kind == "hypersurface" and len(model.variables) == 3:
        y, z = model.variables[1:]
        rec = template_recipe(model, f"({y}^{{n}}, {z}^{{n}})")
        name = rec.text
    elif model.kind == "presented" and model.meta.get("axes") and len(model.variables) == 2:
        x, y = model.variables
        rec = template_recipe(model, f"(({x} + {y})^{{n}})")
        name = rec.text
    else:
        raise CapabilityError(f"no irreducible sequence recipe for {model.describe()}")
    seq = IrreducibleSequence(model, rec, name)
    if verify:
        seq.verify(verify)
    return seq


# --------------------------------------------------------------------------
# the double-colon interior


@dataclass
class ArtinisticResult:
    ideal: RingIdeal
    stabilized_at: int
    precision: int
    partials: list
    terms: list
    sequence: str
    closure: str
    cross_check: bool | None = None

    def format(self) -> str:
        return self.ideal.format()


def _as_ring_ideal(model, I) -> RingIdeal:
    if isinstance(I, RingIdeal):
        return I
    if isinstance(I, str):
        return model.parse_ideal(I)
    if isinstance(I, Submodule):
        return RingIdeal(model, sub=I)
    return RingIdeal(model, gens=list(I))


def double_colon_term(I: RingIdeal, cl: ClosureOperation, seq: IrreducibleSequence, t: int) -> Submodule:
    """``J_t : (J_t : I)^cl`` at the faithful precision of ``J_t``."""
    N = seq.precision(t)
    J = seq.at(t, N)
    X = colon(J, I.at(N))
    return colon(J, cl.close(X))


def artinistic_interior(I, cl: ClosureOperation, seq: IrreducibleSequence, *, window: int = WINDOW,
                        t_max: int = T_MAX, cross_check: bool = False) -> ArtinisticResult:
    """Partial intersections ``P_t`` until ``window`` consecutive ones agree.

    Raises :class:`InconclusiveError` (carrying every partial) when the
    window is not reached by ``t_max``.
    """
    model = seq.model
    I = _as_ring_ideal(model, I)
    P = None
    prec = 0
    partials, terms = [], []
    run = 0
    for t in range(seq.start, t_max + 1):
        term = double_colon_term(I, cl, seq, t)
        N = seq.precision(t)
        if N > prec:
            if P is not None:
                P = model.preimage(P, N)
            prec = N
        else:
            term = model.preimage(term, prec)
        new = term if P is None else P & term
        if P is not None and not (new <= P):
            raise CrossCheckError(f"partial intersections are not descending at t={t}")
        run = run + 1 if P is not None and new == P else 1
        P = new
        terms.append(RingIdeal(model, sub=term))
        partials.append(RingIdeal(model, sub=P))
        if run >= window:
            res = ArtinisticResult(RingIdeal(model, sub=P), t, prec, partials, terms, seq.name, cl.name)
            if cross_check:
                res.cross_check = smile_cross_check(I, cl, seq, res)
                if res.cross_check is False:
                    raise CrossCheckError("artinistic interior differs from the smile interior",
                                          diff={"artinistic": res.format()})
            return res
    raise InconclusiveError(f"no stabilization within t <= {t_max} (window {window})",
                            partials=[p.format() for p in partials])


def smile_cross_check(I: RingIdeal, cl: ClosureOperation, seq: IrreducibleSequence, res: ArtinisticResult):
    """Smile interior of ``(I + J_t)/J_t`` inside ``R/J_t`` at the stabilization index.

    Only meaningful when ``cl`` evaluates on arbitrary modules; returns None
    otherwise.  The preimage is compared with the stabilized answer.
    """
    if not isinstance(cl, (ModuleClosure, IdentityClosure)):
        return None
    t = res.stabilized_at
    N = max(res.precision, seq.precision(t))
    J = seq.at(t, N)
    Q, P = J.quotient_module()
    C = Submodule(Q, Q.field.matmul((I.at(N) + J).basis, P))
    inner = smile_interior(cl).interior(C)
    lifted = J.preimage_from_quotient(inner)
    return lifted == res.ideal.at(N)


class ArtinisticInterior(InteriorOperation):
    """Interior of ideals of a model truncation, evaluated in R by the double-colon formula.

    Applies to ideals containing the truncation kernel; the answer is mapped
    back to the same truncation.
    """

    intrinsic = False

    def __init__(self, cl: ClosureOperation, seq: IrreducibleSequence, **kw):
        super().__init__()
        self.cl, self.seq, self.kw = cl, seq, kw
        self.name = f"artinistic({cl.name})"

    def _interior(self, C):
        if C.module.kind != "regular":
            raise CapabilityError("the double-colon interior applies to ideals only")
        A = C.module.algebra
        N = A.meta["precision"]
        res = artinistic_interior(C, self.cl, self.seq, **self.kw)
        return res.ideal.at(N)


def test_ideal(cl: ClosureOperation, seq: IrreducibleSequence, **kw) -> ArtinisticResult:
    """Artinistic interior of the unit ideal: ``cap_t (J_t : J_t^cl)``."""
    return artinistic_interior(RingIdeal.unit(seq.model), cl, seq, **kw)


test_ideal.__test__ = False  # not a pytest test


# --------------------------------------------------------------------------
# triviality


@dataclass
class TrivialityReport:
    closure: str
    checked: dict
    witnesses: dict
    spot_checks: dict
    trivial: bool
    note: str = ""

    def summary(self) -> str:
        bad = [t for t, ok in self.checked.items() if not ok]
        if self.trivial:
            return f"{self.closure}: J_t closed for t in {sorted(self.checked)}; trivial on the ring ({self.note})"
        return f"{self.closure}: J_t not closed for t in {bad}"


def triviality_check(cl: ClosureOperation, seq: IrreducibleSequence, t_range=range(1, 4),
                     samples=()) -> TrivialityReport:
    """Check ``J_t^cl = J_t`` on ``t_range`` and spot-check sampled ideals."""
    model = seq.model
    checked, witnesses = {}, {}
    for t in t_range:
        J = seq.at(t)
        c = cl.close(J)
        checked[t] = c == J
        if c != J:
            A = J.module.algebra
            extra = [v for v in c.generators() if not J.contains_vector(v)]
            witnesses[t] = A.format(extra[0]) if extra else c.format()
    spots = {}
    for s in samples:
        I = _as_ring_ideal(model, s)
        N = I.faithful_precision()
        sub = I.at(N)
        spots[I.format()] = cl.close(sub) == sub
    trivial = all(checked.values()) and all(spots.values())
    note = "closed irreducible parameter ideals for all t in range; triviality follows by theory" if trivial else ""
    return TrivialityReport(cl.name, checked, witnesses, spots, trivial, note)


# --------------------------------------------------------------------------
# Hom-based membership test


def frobenius_kernel(model: RingModel, J, c, q: int):
    """``K = {r : r^q c in J^{[q]}}`` as an ideal of ``A_N``, with N faithful for ``J^{[q]}``.

    Returns ``(K, Jq, N)``.
    """
    Jgens = _as_ring_ideal(model, J).gens
    if Jgens is None:
        raise UsageError("J must be given by generators")
    if isinstance(c, str):
        c = model.parse(c)
    table = _KERNELS.setdefault(model, {})
    key = (tuple(Jgens), c, q)
    if key not in table:
        table[key] = _frobenius_kernel(model, Jgens, c, q)
    return table[key]


_KERNELS: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _frobenius_kernel(model, Jgens, c, q):
    Jq_gens = [g.frobenius_power(q) for g in Jgens]
    N = model.faithful_precision(Jq_gens, start=1, limit=100000)
    A = model.truncation(N)
    F = A.field
    Jq = model.ideal(Jq_gens, N)
    cvec = model.element(c, N)
    rows = np.array([Jq.reduce(A.mul(A.power(A.basis_vector(i), q), cvec)) for i in range(A.dim)],
                    dtype=np.int64)
    K = Submodule(A.regular, la.left_nullspace(rows, F), reduced=True)
    return K, Jq, N


def _hom_system(model, Jsub, Jq, cvec, q):
    """Images ``g(c^{1/q})`` over all R-linear ``g: F_*(R/J^{[q]}) -> R/J``, as a subspace of R/J."""
    A = Jq.module.algebra
    F = A.field
    Bq, Pb = Jq.quotient_module()
    Qm, Pq = Jsub.quotient_module()
    # twisted action: r acts on F_*(R/J^{[q]}) through r^q
    tw = []
    for g in A.gens:
        G = A.action(A.power(g, q))
        tw.append(F.matmul(G[Jq.complement, :], Pb))
    b, d = Bq.dim, Qm.dim
    eqs = []
    for T, S in zip(tw, Qm.gen_actions):
        eqs.append(F.sub(np.kron(T, np.eye(d, dtype=np.int64)), np.kron(np.eye(b, dtype=np.int64), S.T)))
    Hom = la.nullspace(np.vstack(eqs) if eqs else la.zeros(0, b * d), F, ncols=b * d)
    cb = F.matmul(cvec[None, :], Pb)[0]
    images = [F.matmul(cb[None, :], h.reshape(b, d))[0] for h in Hom]
    return la.span(np.array(images).reshape(-1, d), F, d), Pq


def hom_test_membership(a, J, e: int, c, model: RingModel, method: str = "auto") -> bool:
    """Is there an R-linear ``g: R^{1/q} -> R/J`` with ``g(c^{1/q}) = a + J``, ``q = p^e``?

    ``method="system"`` solves the linear system for ``g`` on
    ``F_*(R/J^{[q]})`` directly.  ``method="adjoint"`` uses the adjunction
    for irreducible ``J``: the answer is ``a in J : K`` with
    ``K = {r : r^q c in J^{[q]}}``.  ``auto`` picks the system when small.
    """
    F = model.field
    if F.d != 1:
        raise CapabilityError("the Frobenius pushforward is implemented over prime fields only")
    if method not in ("auto", "system", "adjoint"):
        raise UsageError(f"unknown method {method!r}")
    q = F.p ** int(e)
    a = model.parse(a) if isinstance(a, str) else a
    c = model.parse(c) if isinstance(c, str) else c
    Jr = _as_ring_ideal(model, J)
    if e == 0:
        N = Jr.faithful_precision()
        Js = Jr.at(N)
        A = Js.module.algebra
        return (Js + A.ideal([model.element(c, N)])).contains_vector(model.element(a, N))
    K, Jq, N = frobenius_kernel(model, Jr, c, q)
    Js = Jr.at(N)
    avec = model.element(a, N)
    if method == "auto":
        method = "system" if Jq.module.dim - Jq.dim <= 60 else "adjoint"
    if method == "adjoint":
        if not is_irreducible(Js):
            raise CapabilityError("the adjoint route needs an irreducible J")
        return colon(Js, K).contains_vector(avec)
    images, Pq = _hom_system(model, Js, Jq, model.element(c, N), q)
    target = F.matmul(avec[None, :], Pq)[0]
    return la.in_span(target, images, F)
