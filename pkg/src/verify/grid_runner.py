"""
Main Theorem verifier that evaluates grids of (p, chi, k) cells.
"""

import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from math import lcm
from typing import Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..arith.char import (
    character_of_order,
    character_text,
    is_parity_admissible,
    parse_character,
)
from ..arith.cyclo import extend_ideal, ideal_compare
from ..config import Settings
from ..modular.congruence import max_congruence_search
from ..modular.eisenstein import basis_enumeration, level_one_basis
from ..models.schemas import GridReport, IdealHNF, VerificationCell
from ..storage import ReportManager
from ..theory.cohomology import h1_stabilized
from ..theory.reptheory import oracle_max_congruence, predict_max_congruence

CellSpec = Tuple[int, str, int]

# (p, character, weights); together these reach all seven cases
_DEFAULT_CELLS: Sequence[Tuple[int, str, Tuple[int, ...]]] = (
    (5, "trivial", (4, 6, 8, 20)),
    (3, "trivial", (2, 4, 6, 18)),
    (7, "trivial", (4, 6, 12)),
    (5, "5:2:[1]", (2, 4)),
    (7, "7:6:[1]", (1, 3, 5)),
    (3, "3:2:[1]", (1, 3)),
    (2, "trivial", (2, 4, 6, 8)),
    (2, "4:2:[1]", (1, 3)),
    (3, "9:6:[1]", (1, 3)),
    (3, "9:3:[1]", (2, 4)),
    (5, "25:5:[1]", (2, 4)),
    (2, "8:2:[0,1]", (2, 4)),
    (2, "8:2:[1,0]", (1, 3)),
    (2, "16:4:[0,1]", (2,)),
    (5, "7:6:[1]", (1, 3)),
    (2, "7:3:[1]", (2,)),
    (3, "13:4:[1]", (1,)),
    (5, "11:5:[1]", (2, 4, 8)),
    (3, "7:3:[1]", (2, 4)),
    (3, "13:3:[1]", (2,)),
    (2, "3:2:[1]", (1, 3)),
    (2, "5:4:[1]", (1,)),
    (2, "5:2:[1]", (2,)),
    (2, "12:2:[1,1]", (2,)),
    (2, "15:2:[1,1]", (1, 3)),
)


def default_grid() -> List[CellSpec]:
    """Parity-admissible cells covering all seven cases."""
    cells = []
    for p, text, weights in _DEFAULT_CELLS:
        chi = parse_character(text)
        cells.extend((p, character_text(chi), k) for k in weights if is_parity_admissible(k, chi))
    return cells


def cells_for(p: int, level: int, order: int, weights: Iterable[int]) -> List[CellSpec]:
    """Cells for the first primitive character of the given order modulo level."""
    if level > 1:
        chi = character_of_order(level, order, primitive=True)
    else:
        chi = parse_character("trivial")
    text = character_text(chi)
    return [(p, text, k) for k in weights if k >= 1 and is_parity_admissible(k, chi)]


def _common(ideals: Sequence[IdealHNF]) -> List[IdealHNF]:
    L = 1
    for ideal in ideals:
        L = lcm(L, ideal.n)
    return [extend_ideal(ideal, L) for ideal in ideals]


def evaluate_cell(
    p: int, text: str, k: int, q_precision: int, p_precision: int, m_max: int
) -> VerificationCell:
    """
    Run all four computations for one cell.

    Errors become FAIL rows. Fixed points that never stabilize within the level budget
    leave the cell INCONCLUSIVE rather than failed.
    """
    chi = parse_character(text)
    cell = VerificationCell(p=p, N=chi.conductor, k=k, character=text)
    try:
        prediction = predict_max_congruence(k, chi, p, p_precision)
        cell.case_tag = prediction.case_tag
        cell.predicted = prediction.ideal
        cell.oracle = oracle_max_congruence(k, chi, p, p_precision)
        if chi.conductor == 1:
            basis = level_one_basis(k, q_precision)
        else:
            basis = basis_enumeration(k, chi.conductor, chi, q_precision)
        series = max_congruence_search(basis, p, target=prediction.ideal, M=p_precision)
        cell.series = series.ideal
        cell.stabilization_index = series.stabilization_index
        caveats = []
        try:
            cell.cohomology = h1_stabilized(k, chi, p, m_max).ideal
        except RuntimeError as e:
            caveats.append(str(e))

        computed = [cell.predicted, cell.series, cell.oracle]
        if cell.cohomology is not None:
            computed.append(cell.cohomology)
        predicted, found, *others = _common(computed)
        theory_agrees = all(ideal_compare(x, predicted) == "equal" for x in others)
        series_agrees = ideal_compare(found, predicted) == "equal"
        if not series_agrees and not series.confirmed:
            index = series.stabilization_index
            caveats.append(f"stabilization index {index} exceeds Q/2 = {q_precision // 2}")
        if theory_agrees and (series_agrees or not series.confirmed):
            cell.status = "INCONCLUSIVE" if caveats else "PASS"
            cell.detail = "; ".join(caveats) or None
        else:
            cell.status = "FAIL"
            cell.detail = "ideals disagree"
    except Exception as e:
        cell.status = "FAIL"
        cell.detail = f"{type(e).__name__}: {e}"
    return cell


class MainTheoremVerifier:
    """Orchestrates predict / oracle / series / cohomology over a grid of cells."""

    def __init__(self, settings: Optional[Settings] = None, show_progress: bool = True):
        """
        Initialize verifier.

        Args:
            settings: Precision and pool settings
            show_progress: Draw a progress bar on stderr
        """
        self.settings = settings or Settings()
        self.show_progress = show_progress

    def _arguments(self, cell: CellSpec) -> Tuple[int, str, int, int, int, int]:
        p, text, k = cell
        return (
            p,
            text,
            k,
            self.settings.precision_for(k),
            self.settings.p_precision,
            self.settings.cohomology_m_max,
        )

    def run(self, cells: Sequence[CellSpec], name: str = "main_theorem") -> GridReport:
        """
        Evaluate every cell and collect a report in cell order.

        Args:
            cells: (p, character text, k) triples
            name: Run name used for the saved report

        Returns:
            GridReport with per-cell results and totals
        """
        start_time = time.time()
        results: List[Optional[VerificationCell]] = [None] * len(cells)
        bar = tqdm(total=len(cells), file=sys.stderr, disable=not self.show_progress, desc="cells")

        if self.settings.workers == 1 or len(cells) <= 1:
            for index, cell in enumerate(cells):
                results[index] = evaluate_cell(*self._arguments(cell))
                self._report(results[index], bar)
        else:
            with ProcessPoolExecutor(max_workers=self.settings.workers) as pool:
                futures = {
                    pool.submit(evaluate_cell, *self._arguments(cell)): index
                    for index, cell in enumerate(cells)
                }
                for future in as_completed(futures):
                    index = futures[future]
                    results[index] = future.result()
                    self._report(results[index], bar)
        bar.close()

        finished = [cell for cell in results if cell is not None]
        report = GridReport(
            name=name,
            settings=self.settings.model_dump(mode="json"),
            cells=finished,
            passed=sum(cell.status == "PASS" for cell in finished),
            failed=sum(cell.status == "FAIL" for cell in finished),
            inconclusive=sum(cell.status == "INCONCLUSIVE" for cell in finished),
            duration_seconds=time.time() - start_time,
        )
        print(
            f"📊 {report.passed} passed, {report.failed} failed, "
            f"{report.inconclusive} inconclusive in {report.duration_seconds:.1f}s",
            file=sys.stderr,
        )
        return report

    def _report(self, cell: VerificationCell, bar: tqdm) -> None:
        icon = {"PASS": "✅", "FAIL": "❌", "INCONCLUSIVE": "⚠️ "}[cell.status]
        line = f"{icon} p={cell.p} chi={cell.character} k={cell.k} case={cell.case_tag}"
        if cell.detail:
            line += f" ({cell.detail})"
        if self.show_progress:
            tqdm.write(line, file=sys.stderr)
        bar.update(1)

    def save(self, report: GridReport) -> None:
        ReportManager(self.settings.reports_dir).save_report(report)
