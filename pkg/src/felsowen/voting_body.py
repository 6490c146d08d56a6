"""Voting bodies read from files, quota resolution, and index reports.

A body is a list of members with integer weights grouped into blocs; the
blocs are the a priori unions.  Reports keep every value as an exact
rational and add a six-place decimal rendering.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from pathlib import Path
from typing import Any, Sequence

from .errors import DomainError, ParseError
from .games import ENUMERATION_BOUND, ExplicitGame, WeightedGame, to_explicit
from .indices import PowerVector, felsenthal, felsenthal_owen
from .unions import GameWithUnions, Partition
from .weighted import count_least_size, felsenthal_owen_weighted, felsenthal_weighted, least_size_quotient
from .weighted.counting import min_winning_size

HEADER = ["id", "name", "weight", "bloc"]
INDEX_CHOICES = ("felsenthal", "felsenthal_owen", "both")
BACKEND_CHOICES = ("auto", "enumeration", "dp")


@dataclass(frozen=True)
class Member:
    id: str
    name: str
    weight: int
    bloc: str


@dataclass
class VotingBody:
    """Members in file order; blocs are numbered by first appearance."""

    members: list[Member]
    explicit: ExplicitGame | None = None
    blocs: list[str] = field(init=False)

    def __post_init__(self):
        if not self.members:
            raise DomainError("a voting body needs at least one member")
        seen: dict[str, None] = {}
        for m in self.members:
            seen.setdefault(m.bloc, None)
        self.blocs = list(seen)
        if self.explicit is None and self.total_weight <= 0:
            raise DomainError("total weight must be positive")

    @property
    def n(self) -> int:
        return len(self.members)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(m.weight for m in self.members)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def partition(self) -> Partition:
        index = {b: k for k, b in enumerate(self.blocs)}
        blocks: list[list[int]] = [[] for _ in self.blocs]
        for i, m in enumerate(self.members):
            blocks[index[m.bloc]].append(i)
        return Partition(self.n, blocks)


def _parse_weight(raw: str, line: int) -> int:
    text = raw.strip()
    try:
        value = int(text)
    except ValueError:
        raise ParseError(f"weight {raw!r} is not an integer", line) from None
    if value < 0:
        raise ParseError(f"weight {value} is negative", line)
    return value


def parse_csv(text: str) -> VotingBody:
    """Parse ``id,name,weight,bloc`` rows; errors carry the 1-based file line."""
    reader = csv.reader(io.StringIO(text.lstrip("\ufeff"), newline=""))
    members: list[Member] = []
    ids: dict[str, int] = {}
    header_seen = False
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        cells = [c.strip() for c in row]
        if not header_seen:
            if [c.lower() for c in cells] != HEADER:
                raise ParseError(f"expected header {','.join(HEADER)}, got {','.join(cells)}", line)
            header_seen = True
            continue
        if len(cells) != 4:
            raise ParseError(f"expected 4 fields, got {len(cells)}", line)
        mid, name, weight, bloc = cells
        if not mid:
            raise ParseError("empty id", line)
        if mid in ids:
            raise ParseError(f"duplicate id {mid!r} (first on line {ids[mid]})", line)
        if not bloc:
            raise ParseError("empty bloc", line)
        ids[mid] = line
        members.append(Member(mid, name, _parse_weight(weight, line), bloc))
    if not header_seen:
        raise ParseError("empty file", 1)
    if not members:
        raise ParseError("no members listed", reader.line_num)
    try:
        return VotingBody(members)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def parse_game_json(text: str) -> VotingBody:
    """Parse ``{"n": int, "minimal_winning": [[ids]], "partition": [[ids]]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(data, dict) or "n" not in data or "minimal_winning" not in data:
        raise ParseError("expected an object with keys n and minimal_winning")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise ParseError("n must be a positive integer")
    try:
        game = ExplicitGame(n, [list(s) for s in data["minimal_winning"]])
        blocks = data.get("partition") or [[i] for i in range(n)]
        part = Partition(n, [list(b) for b in blocks])
    except (DomainError, TypeError) as exc:
        raise ParseError(str(exc)) from None
    labels = data.get("names") or [str(i) for i in range(n)]
    if len(labels) != n:
        raise ParseError("names must list one label per player")
    bloc_of = part.block_of
    members = [Member(str(i), str(labels[i]), 0, f"P{bloc_of[i] + 1}") for i in range(n)]
    return VotingBody(members, explicit=game)


def load_body(path: str | Path) -> VotingBody:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc.strerror}") from None
    if p.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return parse_game_json(text)
    return parse_csv(text)


# quotas -------------------------------------------------------------------------


def parse_quota(text: str) -> int | Fraction:
    """``"0.5"``, ``"1/2"`` and ``"50%"`` are fractions of the total weight; a bare integer is absolute."""
    raw = text.strip()
    try:
        if raw.endswith("%"):
            return Fraction(raw[:-1]) / 100
        if "." in raw or "/" in raw:
            return Fraction(raw)
        return int(raw)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot read quota {text!r}") from None


def resolve_quota(quota: int | Fraction, total: int, inclusive: bool = False) -> int:
    """Integer quota; fractions use strict majority ``floor(f*total)+1`` unless ``inclusive`` (``ceil``)."""
    if isinstance(quota, int):
        q = quota
    else:
        if not 0 < quota <= 1:
            raise DomainError(f"quota fraction {quota} must lie in (0, 1]")
        q = ceil(quota * total) if inclusive else floor(quota * total) + 1
        q = min(q, total)
    if not 0 < q <= total:
        raise DomainError(f"quota {q} must satisfy 0 < q <= {total}")
    return q


# reports ------------------------------------------------------------------------


def exact(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decimal6(x: Fraction) -> str:
    scaled = round(Fraction(x) * 1_000_000)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // 1_000_000}.{scaled % 1_000_000:06d}"


def top_shares(values: Sequence[Fraction], k: int) -> list[Fraction]:
    """Cumulative sums of the ``k`` largest values."""
    out, acc = [], Fraction(0)
    for v in sorted(values, reverse=True)[:k]:
        acc += v
        out.append(acc)
    return out


@dataclass
class IndexResult:
    kind: str
    values: tuple[Fraction, ...]
    bloc_totals: list[Fraction]
    nonzero: int
    top: list[Fraction]


@dataclass
class Report:
    quota: int | None
    total_weight: int | None
    backend: str
    body: VotingBody
    c_w: int
    p_w: int
    c_quotient: int
    p_quotient: int | None
    results: dict[str, IndexResult]

    def as_dict(self) -> dict[str, Any]:
        members = self.body.members
        out: dict[str, Any] = {
            "quota": self.quota,
            "total_weight": self.total_weight,
            "n": self.body.n,
            "blocs": len(self.body.blocs),
            "backend": self.backend,
            "c_W": self.c_w,
            "p_W": self.p_w,
            "c_quotient": self.c_quotient,
            "p_quotient": self.p_quotient,
            "indices": {},
        }
        for kind, res in self.results.items():
            out["indices"][kind] = {
                "nonzero": res.nonzero,
                "top_shares": [{"k": k + 1, "exact": exact(v), "decimal": decimal6(v)} for k, v in enumerate(res.top)],
                "blocs": [
                    {"bloc": b, "exact": exact(v), "decimal": decimal6(v)} for b, v in zip(self.body.blocs, res.bloc_totals)
                ],
                "members": [
                    {"id": m.id, "name": m.name, "bloc": m.bloc, "exact": exact(v), "decimal": decimal6(v)}
                    for m, v in zip(members, res.values)
                ],
            }
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quota", "index", "id", "name", "bloc", "weight", "exact", "decimal"])
        for kind, res in self.results.items():
            for m, v in zip(self.body.members, res.values):
                w.writerow([self.quota, kind, m.id, m.name, m.bloc, m.weight, exact(v), decimal6(v)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [
            "explicit game" if self.quota is None else f"quota {self.quota} of {self.total_weight}",
            f"players {self.body.n}, blocs {len(self.body.blocs)}, backend {self.backend}",
            f"least winning size {self.c_w} ({self.p_w} least-size winning coalitions)",
            f"least winning size among blocs {self.c_quotient}"
            + (f" ({self.p_quotient} least-size bloc coalitions)" if self.p_quotient is not None else ""),
        ]
        for kind, res in self.results.items():
            lines.append("")
            lines.append(f"{kind}: {res.nonzero} nonzero")
            for k, v in enumerate(res.top):
                lines.append(f"  top {k + 1:>2} cumulative {decimal6(v)}")
            width = max(len(m.name) for m in self.body.members)
            for m, v in zip(self.body.members, res.values):
                lines.append(f"  {m.name:<{width}}  {m.bloc:<8} {decimal6(v)}  {exact(v)}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise DomainError(f"unknown format {fmt!r}")


def _choose_backend(body: VotingBody, backend: str) -> str:
    if backend not in BACKEND_CHOICES:
        raise DomainError(f"unknown backend {backend!r}")
    if body.explicit is not None:
        if backend == "dp":
            raise DomainError("the dp backend needs a weighted body, not an explicit game")
        return "enumeration"
    if backend == "auto":
        return "dp" if body.n > ENUMERATION_BOUND else "enumeration"
    return backend


def _result(kind: str, body: VotingBody, vector: PowerVector, top_k: int) -> IndexResult:
    vals = vector.values
    part = body.partition
    totals = [sum((vals[i] for i in part.members(k)), Fraction(0)) for k in range(part.u)]
    return IndexResult(kind, vals, totals, sum(1 for v in vals if v), top_shares(vals, top_k))


def analyze(
    body: VotingBody,
    quota: int | None = None,
    index: str = "both",
    backend: str = "auto",
    top_k: int = 6,
    kernel: str | None = None,
    inclusive: bool = False,
) -> Report:
    """Compute the requested indices of ``body``; ``quota`` is absolute or a fraction of the total."""
    if index not in INDEX_CHOICES:
        raise DomainError(f"unknown index {index!r}")
    kinds = ["felsenthal", "felsenthal_owen"] if index == "both" else [index]
    chosen = _choose_backend(body, backend)
    part = body.partition
    results: dict[str, IndexResult] = {}
    if body.explicit is not None:
        gwu = GameWithUnions(body.explicit, part)
        q = None
        c_w, p_w = body.explicit.least_size, len(body.explicit.least_size_masks)
        c_bar, p_bar = gwu.quotient.least_size, len(gwu.quotient_ls)
        total = None
    else:
        if quota is None:
            raise DomainError("a weighted body needs a quota")
        weights = body.weights
        total = body.total_weight
        q = resolve_quota(quota, total, inclusive)
        union_w = [sum(weights[i] for i in part.members(k)) for k in range(part.u)]
        c_bar = min_winning_size(q, union_w)
        p_bar = None
        if chosen == "dp":
            summary = count_least_size(q, weights, kernel=kernel)
            c_w, p_w = summary.c, summary.p
            if "felsenthal_owen" in kinds:
                p_bar = len(least_size_quotient(q, union_w)[1])
        else:
            gwu = GameWithUnions(to_explicit(WeightedGame(q, weights)), part)
            c_w, p_w = gwu.game.least_size, len(gwu.game.least_size_masks)
            p_bar = len(gwu.quotient_ls)
    for kind in kinds:
        if chosen == "dp":
            if kind == "felsenthal":
                vec = felsenthal_weighted(q, body.weights, kernel=kernel)
            else:
                vec = felsenthal_owen_weighted(q, body.weights, part, kernel=kernel)
        else:
            vec = felsenthal(gwu.game) if kind == "felsenthal" else felsenthal_owen(gwu)
        results[kind] = _result(kind, body, vec, top_k)
    return Report(q, total, chosen, body, c_w, p_w, c_bar, p_bar, results)


DEFAULT_SWEEP = tuple(Fraction(50 + 5 * k, 100) for k in range(11))


def sweep(
    body: VotingBody,
    quotas: Sequence[int | Fraction] = DEFAULT_SWEEP,
    index: str = "felsenthal_owen",
    backend: str = "auto",
    inclusive: bool = False,
    kernel: str | None = None,
) -> list[tuple[int | Fraction, Report]]:
    """One report per quota, in input order."""
    if body.explicit is not None:
        raise DomainError("sweeping quotas needs a weighted body")
    out = []
    for quota in quotas:
        q = resolve_quota(quota, body.total_weight, inclusive)
        out.append((quota, analyze(body, q, index=index, backend=backend, kernel=kernel)))
    return out


def sweep_csv(rows: list[tuple[int | Fraction, Report]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["quota", "q", "index", "member", "value", "decimal"])
    for quota, report in rows:
        label = str(quota) if isinstance(quota, int) else decimal6(quota).rstrip("0").rstrip(".")
        for kind, res in report.results.items():
            for m, v in zip(report.body.members, res.values):
                w.writerow([label, report.quota, kind, m.id, exact(v), decimal6(v)])
    return buf.getvalue()
