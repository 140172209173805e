"""
LP Export
Writes the model in CPLEX LP text format for cross-checking with external solvers
"""
from pathlib import Path
from typing import List, Union

from .model import LPModel


def _terms(row) -> str:
    parts: List[str] = []
    for col, coef in zip(row.indices, row.data):
        sign = "-" if coef < 0 else "+"
        parts.append(f"{sign} {abs(coef):.17g} x{col}")
    text = " ".join(parts) if parts else "0 x0"
    return text[2:] if text.startswith("+ ") else text


def lp_text(model: LPModel) -> str:
    """Render the model; row names encode (family, bin, t, state)"""
    lines = ["\\ columns: " + str(model.n_cols), "Maximize"]
    objective = [f"+ {c:.17g} x{i}" if c >= 0 else f"- {-c:.17g} x{i}"
                 for i, c in enumerate(model.c) if c != 0.0]
    body = " ".join(objective) if objective else "0 x0"
    lines.append(" obj: " + (body[2:] if body.startswith("+ ") else body))
    lines.append("Subject To")
    for r, name in enumerate(model.eq_row_names):
        lines.append(f" {name}: {_terms(model.A_eq.getrow(r))} = {model.b_eq[r]:.17g}")
    for r, name in enumerate(model.ub_row_names):
        lines.append(f" {name}: {_terms(model.A_ub.getrow(r))} <= {model.b_ub[r]:.17g}")
    lines.append("Bounds")
    for i, (lo, hi) in enumerate(model.bounds):
        upper = "+inf" if hi is None else f"{hi:.17g}"
        lines.append(f" {lo:.17g} <= x{i} <= {upper}")
    lines.append("End")
    lines.append("\\ column names")
    lines.extend(f"\\ x{i} {name}" for i, name in enumerate(model.column_names))
    return "\n".join(lines) + "\n"


def export_lp(model: LPModel, path: Union[str, Path]) -> Path:
    """Write lp_text(model) to a file and return its path"""
    path = Path(path)
    path.write_text(lp_text(model), encoding="utf-8")
    return path


__all__ = ['lp_text', 'export_lp']
