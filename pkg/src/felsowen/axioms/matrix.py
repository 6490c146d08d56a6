"""Independence matrices: which index breaks which axiom, with witnesses."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from ..errors import DomainError
from .checks import AxiomReport, Instance, check_axiom
from .generators import exhaustive_games_with_unions, generate_instances
from .indices import PSI, CoalitionalIndex, counterexample_index

THEOREM_AXIOMS = {
    1: ("NN", "CFI", "QG", "PELS"),
    2: ("E", "NP", "S-AU", "S-IU", "TCLS-AU", "TCLS-IU", "IIC", "ILSE"),
}
THEOREM_ROWS = {
    1: ("Psi", "F1", "F2", "F3", "F4"),
    2: ("Psi", "F1", "F5", "F6", "F7", "F8", "F9", "F10", "F11"),
}
#: The axiom each counterexample row is designed to break.
DESIGNED_VIOLATION = {
    1: {"Psi": set(), "F1": {"CFI"}, "F2": {"NN"}, "F3": {"QG"}, "F4": {"PELS"}},
    2: {
        "Psi": set(),
        "F1": {"E"},
        "F5": {"NP"},
        "F6": {"S-AU"},
        "F7": {"S-IU"},
        "F8": {"TCLS-AU"},
        "F9": {"TCLS-IU"},
        "F10": {"IIC"},
        "F11": {"ILSE"},
    },
}


def index_by_name(name: str) -> CoalitionalIndex:
    if name == "Psi":
        return PSI
    if name.startswith("F"):
        base, _, variant = name[1:].partition("-")
        return counterexample_index(int(base), variant=variant or "default")
    raise DomainError(f"unknown index {name!r}")


@dataclass
class Cell:
    index: str
    axiom: str
    trials: int = 0
    failures: int = 0
    witness: AxiomReport | None = field(default=None, repr=False)

    @property
    def violated(self) -> bool:
        return self.failures > 0

    def as_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "axiom": self.axiom,
            "verdict": "violates" if self.violated else "satisfies",
            "trials": self.trials,
            "failures": self.failures,
            "witness": self.witness.witness if self.witness else None,
        }


@dataclass
class IndependenceMatrix:
    theorem: int
    rows: tuple[str, ...]
    axioms: tuple[str, ...]
    cells: dict[tuple[str, str], Cell]

    def cell(self, index: str, axiom: str) -> Cell:
        return self.cells[(index, axiom)]

    def violated(self, index: str) -> set[str]:
        return {a for a in self.axioms if self.cells[(index, a)].violated}

    def matches_design(self, index: str) -> bool:
        return self.violated(index) == DESIGNED_VIOLATION[self.theorem].get(index, set())

    def to_json(self) -> str:
        return json.dumps(
            {
                "theorem": self.theorem,
                "axioms": list(self.axioms),
                "rows": [
                    {"index": r, "cells": [self.cells[(r, a)].as_dict() for a in self.axioms]} for r in self.rows
                ],
            },
            indent=2,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", *self.axioms])
        for r in self.rows:
            row = [r]
            for a in self.axioms:
                c = self.cells[(r, a)]
                row.append(f"fail({c.failures}/{c.trials})" if c.violated else f"pass({c.trials})")
            writer.writerow(row)
        return buf.getvalue()

    def render(self) -> str:
        width = max(len(r) for r in self.rows)
        lines = [" " * width + "  " + "  ".join(f"{a:>7}" for a in self.axioms)]
        for r in self.rows:
            marks = ["   fail" if self.cells[(r, a)].violated else "     ok" for a in self.axioms]
            lines.append(f"{r:<{width}}  " + "  ".join(marks))
        return "\n".join(lines)


def instances_for(axiom: str, trials: int, seed: int, max_n: int = 6, exhaustive_n: int = 0) -> list[Instance]:
    """The shared instance list of one column: ``trials`` generated ones plus an optional exhaustive sweep."""
    out: list[Instance] = list(generate_instances(axiom, seed=seed, count=trials, max_n=max_n))
    if exhaustive_n and axiom in THEOREM_AXIOMS[1] + THEOREM_AXIOMS[2][:4]:
        out.extend(exhaustive_games_with_unions(exhaustive_n))
    return out


def evaluate_column(index: CoalitionalIndex, axiom: str, instances: Iterable[Instance]) -> Cell:
    cell = Cell(index.name, axiom)
    for inst in instances:
        report = check_axiom(index, axiom, inst)
        cell.trials += 1
        if not report.verdict:
            cell.failures += 1
            if cell.witness is None:
                cell.witness = report
    return cell


def independence_matrix(
    theorem: int,
    trials: int = 500,
    seed: int = 0,
    max_n: int = 6,
    exhaustive_n: int = 4,
    rows: Iterable[str] | None = None,
) -> IndependenceMatrix:
    """Check every row index against every axiom of the theorem over a shared instance budget.

    Each column runs ``trials`` generated instances; single-game columns add
    every game with unions on at most ``exhaustive_n`` players.
    """
    if theorem not in THEOREM_AXIOMS:
        raise DomainError("theorem must be 1 or 2")
    axioms = THEOREM_AXIOMS[theorem]
    row_names = tuple(rows) if rows is not None else THEOREM_ROWS[theorem]
    indices = [index_by_name(r) for r in row_names]
    cells: dict[tuple[str, str], Cell] = {}
    for axiom in axioms:
        column = instances_for(axiom, trials, seed, max_n, exhaustive_n)
        for name, idx in zip(row_names, indices):
            cell = evaluate_column(idx, axiom, column)
            cell.index = name
            cells[(name, axiom)] = cell
    return IndependenceMatrix(theorem, row_names, axioms, cells)
