from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from commuting_powers.catalog.enumeration import enumerate_order
from commuting_powers.catalog.scan import parse_pairs, scan, write_scan_records
from commuting_powers.catalog.specs import catalog_groups, make
from commuting_powers.core.cayley_io import write_cayley_file
from commuting_powers.core.group import FiniteGroup, all_subgroups
from commuting_powers.core.law_parser import format_law, parse_law
from commuting_powers.core.laws import eval_word, holds, satisfies_P, witness_assignment
from commuting_powers.core.models import LemmaVerdict
from commuting_powers.core.report_renderer import ReportRenderer, to_record
from commuting_powers.core.settings import Settings, get_settings
from commuting_powers.theorems.lemmas import verify_lemma_3_1, verify_theorem_3_1
from commuting_powers.theorems.torsion import decomposition_errors, torsion_decompose

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2


@dataclass
class CommandOutcome:
    output: str
    exit_code: int = EXIT_OK
    files: List[Path] = field(default_factory=list)


def theorem_status(verdict: Optional[LemmaVerdict]) -> str:
    if verdict is None:
        return "not applicable"
    if not verdict.holds:
        return "FAILED"
    return "vacuous" if verdict.vacuous else "holds"


class VerificationService:
    """Runs one command end to end: build the groups, verify, render text or records."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.renderer = ReportRenderer()

    def group(self, spec: str) -> FiniteGroup:
        return make(spec, cap=self.settings.closure_element_cap)

    def _records(self, lines: List[str]) -> str:
        return "\n".join(lines)

    def check(
        self,
        spec: str,
        m: int,
        n: int,
        fmt: str = "text",
        allow_non_coprime: bool = False,
        timings: bool = False,
    ) -> CommandOutcome:
        G = self.group(spec)
        report = satisfies_P(G, m, n, allow_non_coprime=allow_non_coprime)
        verdict = None
        if report.theorems_applicable:
            verdict = verify_theorem_3_1(G, m, n, cap=self.settings.group_order_cap)
        exit_code = EXIT_INCONSISTENT if verdict is not None and not verdict.holds else EXIT_OK
        if fmt == "records":
            theorem = verdict.dict() if verdict is not None else None
            return CommandOutcome(to_record(report, timings=timings, theorem=theorem), exit_code)
        text = self.renderer.render(
            "check.txt.j2", report=report, verdict=verdict, status=theorem_status(verdict), timings=timings
        )
        return CommandOutcome(text, exit_code)

    def scan(
        self,
        max_order: int,
        pairs: str = "2,3",
        use_catalog: bool = True,
        fmt: str = "text",
        workers: Optional[int] = None,
        output: Optional[Path] = None,
        timings: bool = False,
    ) -> CommandOutcome:
        pair_list = parse_pairs(pairs)
        workers = workers or self.settings.scan_workers
        if use_catalog:
            groups = catalog_groups(max_order)
        else:
            groups = [G for order in range(1, max_order + 1) for G in enumerate_order(order, workers=workers)]
        report = scan(groups, pair_list, workers=workers)
        files = [write_scan_records(report, output, timings=timings)] if output else []
        exit_code = EXIT_INCONSISTENT if report.counterexamples else EXIT_OK
        if fmt == "records":
            return CommandOutcome(self._records([to_record(r, timings=timings) for r in report.rows]), exit_code, files)
        source = "catalog" if use_catalog else "enumerated"
        text = self.renderer.render("scan.txt.j2", report=report, source=source, groups=len(groups), pairs=pair_list)
        return CommandOutcome(text, exit_code, files)

    def enumerate(self, order: int, output_dir: Path, fmt: str = "text", workers: Optional[int] = None) -> CommandOutcome:
        groups = enumerate_order(order, workers=workers or self.settings.scan_workers)
        files = [write_cayley_file(G, Path(output_dir) / f"{G.name}.cayley") for G in groups]
        if fmt == "records":
            lines = [
                to_record(
                    {
                        "name": G.name,
                        "order": G.order,
                        "abelian": G.is_abelian,
                        "order_histogram": [list(pair) for pair in G.order_histogram],
                        "path": str(path),
                    }
                )
                for G, path in zip(groups, files)
            ]
            return CommandOutcome(self._records(lines), EXIT_OK, files)
        text = self.renderer.render("enumerate.txt.j2", order=order, entries=list(zip(groups, files)))
        return CommandOutcome(text, EXIT_OK, files)

    def sylow(self, spec: str, p: int, fmt: str = "text") -> CommandOutcome:
        G = self.group(spec)
        verdict = verify_lemma_3_1(G, p, cap=self.settings.group_order_cap)
        exit_code = EXIT_OK if verdict.holds else EXIT_INCONSISTENT
        if fmt == "records":
            return CommandOutcome(to_record(verdict, group=G.name), exit_code)
        return CommandOutcome(self.renderer.render("sylow.txt.j2", group=G, verdict=verdict), exit_code)

    def decompose(self, spec: str, element: int, fmt: str = "text") -> CommandOutcome:
        G = self.group(spec)
        decomposition = torsion_decompose(G, element)
        errors = decomposition_errors(G, decomposition)
        exit_code = EXIT_INCONSISTENT if errors else EXIT_OK
        if fmt == "records":
            return CommandOutcome(to_record(decomposition, group=G.name, errors=errors), exit_code)
        text = self.renderer.render("decompose.txt.j2", group=G, d=decomposition, errors=errors)
        return CommandOutcome(text, exit_code)

    def law(self, spec: str, law_text: str, fmt: str = "text", workers: Optional[int] = None) -> CommandOutcome:
        G = self.group(spec)
        law = parse_law(law_text)
        check = holds(G, law, budget=self.settings.law_evaluation_budget, workers=workers)
        assignment = witness_assignment(law, check)
        sides = None
        if not check:
            sides = {"lhs": eval_word(G, law.lhs, assignment), "rhs": eval_word(G, law.rhs, assignment)}
        if fmt == "records":
            record = {"group": G.name, "law": format_law(law), "holds": check.holds, "witness": assignment or None}
            if sides:
                record.update(sides)
            return CommandOutcome(to_record(record))
        text = self.renderer.render(
            "law.txt.j2", group=G, law=format_law(law), check=check, assignment=assignment, sides=sides
        )
        return CommandOutcome(text)

    def lattice(self, spec: str, fmt: str = "text") -> CommandOutcome:
        G = self.group(spec)
        subgroups = all_subgroups(G, cap=self.settings.group_order_cap)
        if fmt == "records":
            lines = [
                to_record(
                    {
                        "group": G.name,
                        "order": H.size,
                        "members": list(H.elements),
                        "normal": H.is_normal,
                        "abelian": H.is_abelian,
                    }
                )
                for H in subgroups
            ]
            return CommandOutcome(self._records(lines))
        return CommandOutcome(self.renderer.render("lattice.txt.j2", group=G, subgroups=subgroups))
