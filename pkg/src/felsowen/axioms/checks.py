"""Exact checks of single axioms on concrete instances.

Every check first validates the axiom's hypotheses (``HypothesisError`` when
they fail), then compares exact rationals.  A failing report carries a
witness holding the instance and the two sides that disagreed, so it can be
re-checked with :meth:`AxiomReport.recheck`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Union

from ..errors import DomainError, HypothesisError
from ..games import ExplicitGame, are_symmetric, combine, ids_of, to_explicit
from ..indices import ZERO, felsenthal
from ..unions import (
    GameWithUnions,
    Partition,
    _internal_masks,
    _representatives_mask,
    least_size_of,
    localize,
    trivial_partition,
)
from .indices import CoalitionalIndex, is_null

AXIOMS = ("NN", "CFI", "QG", "PELS", "E", "NP", "S-AU", "S-IU", "TCLS-AU", "TCLS-IU", "IIC", "ILSE")
SINGLE_GAME_AXIOMS = ("NN", "CFI", "QG", "PELS", "E", "NP", "S-AU", "S-IU")
PAIR_AXIOMS = ("TCLS-AU", "TCLS-IU", "ILSE")


@dataclass(frozen=True)
class PairInstance:
    """Two games on the same players under one union structure."""

    w: ExplicitGame
    v: ExplicitGame
    partition: Partition

    def __post_init__(self):
        if self.w.n != self.v.n or self.partition.n != self.w.n:
            raise DomainError("pair instance needs one player set")


@dataclass(frozen=True)
class IrrelevantInstance:
    """A game with unions and one of its minimal winning coalitions, to be dropped."""

    gwu: GameWithUnions
    coalition: int


Instance = Union[GameWithUnions, PairInstance, IrrelevantInstance]


def _fmt(values) -> list[str]:
    return [str(Fraction(v)) for v in values]


@dataclass
class AxiomReport:
    axiom: str
    index: str
    verdict: bool
    witness: dict[str, Any] | None = None
    instance: Instance | None = field(default=None, repr=False)

    def recheck(self, index: CoalitionalIndex) -> AxiomReport:
        if self.instance is None:
            raise DomainError("report has no instance to re-check")
        return check_axiom(index, self.axiom, self.instance)


def _explicit(gwu: GameWithUnions) -> GameWithUnions:
    if isinstance(gwu.game, ExplicitGame):
        return gwu
    return GameWithUnions(to_explicit(gwu.game), gwu.partition)


def _describe(gwu: GameWithUnions) -> dict[str, Any]:
    return {
        "n": gwu.n,
        "minimal_winning": [ids_of(m) for m in gwu.game.masks],
        "partition": [ids_of(m) for m in gwu.partition.masks],
    }


def _fail(detail: dict[str, Any], **extra) -> dict[str, Any]:
    detail.update(extra)
    return detail


# single-game axioms ---------------------------------------------------------


def _nn(index, gwu):
    vals = index(gwu).values
    for i, v in enumerate(vals):
        if v < 0:
            return _fail(_describe(gwu), player=i, value=str(v))
    return None


def _cfi(index, gwu):
    trivial = GameWithUnions(gwu.game, trivial_partition(gwu.n))
    lhs = index(trivial).values
    rhs = felsenthal(gwu.game).values
    if lhs != rhs:
        return _fail(_describe(trivial), lhs=_fmt(lhs), rhs=_fmt(rhs))
    return None


def _qg(index, gwu):
    vals = index(gwu).values
    quotient = gwu.quotient
    lhs = index(GameWithUnions(quotient, trivial_partition(quotient.n))).values
    rhs = [sum((vals[i] for i in ids_of(m)), ZERO) for m in gwu.partition.masks]
    if list(lhs) != rhs:
        return _fail(_describe(gwu), lhs=_fmt(lhs), rhs=_fmt(rhs))
    return None


def _internal_values(index, gwu, r: int, k: int) -> dict[int, Fraction]:
    members = gwu.partition.members(k)
    local = ExplicitGame._trusted(len(members), tuple(localize(m, members) for m in _internal_masks(gwu, r, k)))
    vals = index(GameWithUnions(local, trivial_partition(len(members)))).values
    return dict(zip(members, vals))


def _pels(index, gwu):
    vals = index(gwu).values
    part = gwu.partition
    for k in range(part.u):
        rs = [r for r in gwu.quotient_ls if r >> k & 1]
        if not rs:
            continue
        members = part.members(k)
        agg = {i: ZERO for i in members}
        for r in rs:
            for i, v in _internal_values(index, gwu, r, k).items():
                agg[i] += v
        for a in members:
            for b in members:
                if a < b and vals[a] * agg[b] != vals[b] * agg[a]:
                    return _fail(
                        _describe(gwu),
                        union=k,
                        players=[a, b],
                        lhs=str(vals[a] * agg[b]),
                        rhs=str(vals[b] * agg[a]),
                    )
    return None


def _efficiency(index, gwu):
    total = sum(index(gwu).values, ZERO)
    if total != 1:
        return _fail(_describe(gwu), lhs=str(total), rhs="1")
    return None


def _null_player(index, gwu):
    vals = index(gwu).values
    for i in range(gwu.n):
        if is_null(gwu.game, i) and vals[i] != 0:
            return _fail(_describe(gwu), player=i, lhs=str(vals[i]), rhs="0")
    return None


def _sym_unions(index, gwu):
    vals = index(gwu).values
    part = gwu.partition
    quotient = gwu.quotient
    for k in range(part.u):
        for l in range(k + 1, part.u):
            if are_symmetric(quotient, k, l):
                a = sum((vals[i] for i in ids_of(part.masks[k])), ZERO)
                b = sum((vals[i] for i in ids_of(part.masks[l])), ZERO)
                if a != b:
                    return _fail(_describe(gwu), unions=[k, l], lhs=str(a), rhs=str(b))
    return None


def _sym_inside(index, gwu):
    vals = index(gwu).values
    for m in gwu.partition.masks:
        members = ids_of(m)
        for x, i in enumerate(members):
            for j in members[x + 1 :]:
                if are_symmetric(gwu.game, i, j) and vals[i] != vals[j]:
                    return _fail(_describe(gwu), players=[i, j], lhs=str(vals[i]), rhs=str(vals[j]))
    return None


# pair axioms -----------------------------------------------------------------


def _pair_describe(inst: PairInstance) -> dict[str, Any]:
    return {
        "n": inst.w.n,
        "w": [ids_of(m) for m in inst.w.masks],
        "v": [ids_of(m) for m in inst.v.masks],
        "partition": [ids_of(m) for m in inst.partition.masks],
    }


def validate_tcls_unions(inst: PairInstance) -> None:
    gw = GameWithUnions(inst.w, inst.partition)
    gv = GameWithUnions(inst.v, inst.partition)
    if set(gw.quotient_ls) & set(gv.quotient_ls):
        raise HypothesisError("the quotient games share a least-size winning coalition")


def _scaled_sum(a, pa: int, b, pb: int):
    return tuple(Fraction(pa, pa + pb) * x + Fraction(pb, pa + pb) * y for x, y in zip(a, b))


def _tcls_unions(index, inst: PairInstance):
    validate_tcls_unions(inst)
    part = inst.partition
    gw = GameWithUnions(inst.w, part)
    gv = GameWithUnions(inst.v, part)
    joined = GameWithUnions(combine(inst.w, inst.v, "disjunction", on_mismatch="ignore"), part)
    lhs = index(joined).values
    cw, cv = gw.quotient.least_size, gv.quotient.least_size
    fw, fv = index(gw).values, index(gv).values
    if cw < cv:
        rhs, case = fw, "c_w<c_v"
    elif cv < cw:
        rhs, case = fv, "c_v<c_w"
    else:
        rhs = _scaled_sum(fw, len(gw.quotient_ls), fv, len(gv.quotient_ls))
        case = "equal"
    if lhs != rhs:
        return _fail(_pair_describe(inst), case=case, lhs=_fmt(lhs), rhs=_fmt(rhs))
    return None


def validate_tcls_inside(inst: PairInstance) -> int:
    """Return the union containing every minimal winning coalition of both games."""
    if set(inst.w.least_size_masks) & set(inst.v.least_size_masks):
        raise HypothesisError("the games share a least-size winning coalition")
    both = inst.w.masks + inst.v.masks
    for k, block in enumerate(inst.partition.masks):
        if all(m & ~block == 0 for m in both):
            return k
    raise HypothesisError("minimal winning coalitions do not all lie in one union")


def _tcls_inside(index, inst: PairInstance):
    validate_tcls_inside(inst)
    part = inst.partition
    joined = GameWithUnions(combine(inst.w, inst.v, "disjunction", on_mismatch="ignore"), part)
    lhs = index(joined).values
    cw, cv = inst.w.least_size, inst.v.least_size
    fw = index(GameWithUnions(inst.w, part)).values
    fv = index(GameWithUnions(inst.v, part)).values
    if cw < cv:
        rhs, case = fw, "c_w<c_v"
    elif cv < cw:
        rhs, case = fv, "c_v<c_w"
    else:
        rhs = _scaled_sum(fw, len(inst.w.least_size_masks), fv, len(inst.v.least_size_masks))
        case = "equal"
    if lhs != rhs:
        return _fail(_pair_describe(inst), case=case, lhs=_fmt(lhs), rhs=_fmt(rhs))
    return None


def _essential_ls(gwu: GameWithUnions) -> frozenset[int]:
    out: set[int] = set()
    for r in gwu.quotient_ls:
        for k in ids_of(r):
            out.update(least_size_of(_internal_masks(gwu, r, k)))
    return frozenset(out)


def validate_ilse(inst: PairInstance) -> None:
    gw = GameWithUnions(inst.w, inst.partition)
    gv = GameWithUnions(inst.v, inst.partition)
    if len(gw.quotient_ls) != 1:
        raise HypothesisError("the first quotient game must have a single least-size winning coalition")
    (r,) = gw.quotient_ls
    if set(gv.quotient_ls) != {1 << k for k in ids_of(r)}:
        raise HypothesisError("the second quotient game's least-size winners must be the singletons of R")
    if _essential_ls(gw) != _essential_ls(gv):
        raise HypothesisError("the games have different least-size essential coalitions")


def _ilse(index, inst: PairInstance):
    validate_ilse(inst)
    lhs = index(GameWithUnions(inst.w, inst.partition)).values
    rhs = index(GameWithUnions(inst.v, inst.partition)).values
    if lhs != rhs:
        return _fail(_pair_describe(inst), lhs=_fmt(lhs), rhs=_fmt(rhs))
    return None


def drop_coalition(game: ExplicitGame, mask: int) -> ExplicitGame:
    rest = tuple(m for m in game.masks if m != mask)
    if not rest:
        raise HypothesisError("dropping the coalition leaves no winning coalition")
    return ExplicitGame._trusted(game.n, rest)


def validate_iic(inst: IrrelevantInstance) -> ExplicitGame:
    gwu = _explicit(inst.gwu)
    if inst.coalition not in gwu.game.masks:
        raise HypothesisError("the coalition is not minimal winning")
    if _representatives_mask(gwu.partition, inst.coalition) in gwu.quotient.masks:
        raise HypothesisError("the coalition is not irrelevant")
    return drop_coalition(gwu.game, inst.coalition)


def _iic(index, inst: IrrelevantInstance):
    reduced = validate_iic(inst)
    gwu = _explicit(inst.gwu)
    lhs = index(gwu).values
    rhs = index(GameWithUnions(reduced, gwu.partition)).values
    if lhs != rhs:
        d = _describe(gwu)
        return _fail(d, dropped=ids_of(inst.coalition), lhs=_fmt(lhs), rhs=_fmt(rhs))
    return None


_CHECKS: dict[str, tuple[type, Callable]] = {
    "NN": (GameWithUnions, _nn),
    "CFI": (GameWithUnions, _cfi),
    "QG": (GameWithUnions, _qg),
    "PELS": (GameWithUnions, _pels),
    "E": (GameWithUnions, _efficiency),
    "NP": (GameWithUnions, _null_player),
    "S-AU": (GameWithUnions, _sym_unions),
    "S-IU": (GameWithUnions, _sym_inside),
    "TCLS-AU": (PairInstance, _tcls_unions),
    "TCLS-IU": (PairInstance, _tcls_inside),
    "IIC": (IrrelevantInstance, _iic),
    "ILSE": (PairInstance, _ilse),
}


def check_axiom(index: CoalitionalIndex, axiom: str, instance: Instance) -> AxiomReport:
    """Check ``axiom`` for ``index`` on one instance; raises ``HypothesisError`` if it does not apply."""
    try:
        kind, fn = _CHECKS[axiom]
    except KeyError:
        raise DomainError(f"unknown axiom {axiom!r}; known: {', '.join(AXIOMS)}") from None
    if not isinstance(instance, kind):
        raise DomainError(f"{axiom} needs a {kind.__name__}, got {type(instance).__name__}")
    if isinstance(instance, GameWithUnions):
        instance = _explicit(instance)
    witness = fn(index, instance)
    return AxiomReport(axiom, index.name, witness is None, witness, instance)


def hypotheses_hold(axiom: str, instance: Instance) -> bool:
    validators = {
        "TCLS-AU": validate_tcls_unions,
        "TCLS-IU": validate_tcls_inside,
        "ILSE": validate_ilse,
        "IIC": validate_iic,
    }
    fn = validators.get(axiom)
    if fn is None:
        return True
    try:
        fn(instance)
    except HypothesisError:
        return False
    return True

