"""
CNF Extractor
DIMACS-style reader and writer for stochastic formulas

Header: `p cnf <variables> <clauses> alternating`. The `alternating` flag
declares that odd variables are player choices and even variables are fair
coins. Clauses are whitespace-separated literals terminated by 0; lines
starting with `c` are comments.
"""
from pathlib import Path
from typing import List, Optional, Union

from ..core.errors import FormulaError
from ..core.formulas import S2SATFormula, S3SATFormula, StochasticFormula, validate_formula
from .base_extractor import BaseExtractor, ExtractionResult

ALTERNATING_FLAG = "alternating"


def parse_dimacs(text: str, k: Optional[int] = None, require_flag: bool = True) -> StochasticFormula:
    """
    Parse DIMACS text into an S2SATFormula (all clauses of width <= 2) or an S3SATFormula

    Raises:
        FormulaError: On a missing or malformed header, bad literals, a clause
            count mismatch or clauses wider than three literals
    """
    header = None
    clauses: List[List[int]] = []
    current: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('c') or line.startswith('%'):
            continue
        if line.startswith('p'):
            if header is not None:
                raise FormulaError(f"Line {lineno}: second header")
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise FormulaError(f"Line {lineno}: header must read 'p cnf <n> <m> {ALTERNATING_FLAG}'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as e:
                raise FormulaError(f"Line {lineno}: non-integer header field") from e
            if require_flag and ALTERNATING_FLAG not in parts[4:]:
                raise FormulaError(f"Line {lineno}: header lacks the '{ALTERNATING_FLAG}' flag")
            continue
        if header is None:
            raise FormulaError(f"Line {lineno}: clause before header")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError as e:
                raise FormulaError(f"Line {lineno}: bad literal {token!r}") from e
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if header is None:
        raise FormulaError("Missing 'p cnf' header")
    if current:
        clauses.append(current)

    n, m = header
    if len(clauses) != m:
        raise FormulaError(f"Header declares {m} clauses, found {len(clauses)}")
    width = max((len(c) for c in clauses), default=0)
    if width > 3:
        raise FormulaError(f"Clause of width {width}; at most 3 literals supported")
    cls = S2SATFormula if width <= 2 else S3SATFormula
    formula = cls.of(n, clauses, k)
    validate_formula(formula, require_even=False, require_coverage=False)
    return formula


def format_dimacs(formula: StochasticFormula) -> str:
    lines = ["c stochastic formula, odd variables chosen, even variables random",
             f"p cnf {formula.n} {formula.m} {ALTERNATING_FLAG}"]
    lines += [" ".join(str(l) for l in clause) + " 0" for clause in formula.clauses]
    return "\n".join(lines) + "\n"


class CNFExtractor(BaseExtractor):
    """Reader for DIMACS formula files"""

    def get_supported_extensions(self) -> List[str]:
        return ['.cnf', '.dimacs', '.txt']

    def extract(self, file_path: Path, **kwargs) -> ExtractionResult:
        """
        Parse a formula file

        Args:
            file_path: DIMACS file
            **kwargs: k (occurrence bound), require_flag

        Returns:
            ExtractionResult whose content is the formula
        """
        file_path = Path(file_path)
        self._log_extraction_start(file_path)
        ok, error = self.validate_file(file_path)
        if not ok:
            self._log_extraction_failure(file_path, error)
            return self._create_error_result("cnf", error)
        try:
            text = file_path.read_text(encoding='utf-8')
            formula = parse_dimacs(text, kwargs.get('k'), kwargs.get('require_flag', True))
        except (FormulaError, UnicodeDecodeError) as e:
            self._log_extraction_failure(file_path, str(e))
            return self._create_error_result("cnf", str(e))
        structure = "s2sat" if isinstance(formula, S2SATFormula) else "s3sat"
        result = ExtractionResult(
            content=formula,
            file_type="cnf",
            extracted_structure=structure,
            metadata=self._metadata(file_path, item_count=formula.m, variables=formula.n),
        )
        self._log_extraction_success(file_path, result)
        return result


def load_formula(path: Union[str, Path], k: Optional[int] = None) -> StochasticFormula:
    """
    Read a formula file

    Raises:
        FormulaError: With the first extraction error
    """
    result = CNFExtractor().extract(Path(path), k=k)
    if not result.success:
        raise FormulaError(result.errors[0])
    return result.content


def save_formula(formula: StochasticFormula, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_dimacs(formula), encoding='utf-8')
    return path


__all__ = ['ALTERNATING_FLAG', 'parse_dimacs', 'format_dimacs', 'CNFExtractor', 'load_formula', 'save_formula']
