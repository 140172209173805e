"""
LP Assembly
Per-bin flow polytopes coupled by ex-ante count rows of the big bins
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import sparse

from ..core.model import Instance, ValueDistribution
from ..preprocess.classification import BinClassification
from ..utils.logger import get_lp_logger
from .state_space import StateSpace, Vector, build_state_space

logger = get_lp_logger()


@dataclass
class BlockLayout:
    """Column and row positions of one maximal small bin's block"""
    bin_index: int
    space: StateSpace
    distributions: Tuple[ValueDistribution, ...]
    y: Dict[Tuple[int, Vector], int] = field(default_factory=dict)
    x: Dict[Tuple[int, Vector, int], int] = field(default_factory=dict)
    xm: Dict[Tuple[int, int], int] = field(default_factory=dict)
    n_col: int = -1
    slack_col: int = -1
    exante_row: int = -1


class _RowBuilder:
    """Sparse rows accumulated as (row, col, coef) triplets"""

    def __init__(self) -> None:
        self.rows: List[int] = []
        self.cols: List[int] = []
        self.data: List[float] = []
        self.rhs: List[float] = []
        self.names: List[str] = []

    def add(self, terms: List[Tuple[int, float]], rhs: float, name: str) -> int:
        row = len(self.rhs)
        merged: Dict[int, float] = {}
        for col, coef in terms:
            merged[col] = merged.get(col, 0.0) + coef
        for col, coef in merged.items():
            if coef != 0.0:
                self.rows.append(row)
                self.cols.append(col)
                self.data.append(coef)
        self.rhs.append(rhs)
        self.names.append(name)
        return row

    def matrix(self, n_cols: int) -> sparse.csr_matrix:
        return sparse.csr_matrix((self.data, (self.rows, self.cols)), shape=(len(self.rhs), n_cols))


@dataclass
class LPModel:
    """The global LP in maximization form: max c.x, A_eq x = b_eq, A_ub x <= b_ub, bounds"""
    instance: Instance
    classification: BinClassification
    c: np.ndarray
    A_eq: sparse.csr_matrix
    b_eq: np.ndarray
    A_ub: sparse.csr_matrix
    b_ub: np.ndarray
    bounds: List[Tuple[float, Optional[float]]]
    column_names: List[str]
    eq_row_names: List[str]
    ub_row_names: List[str]
    blocks: Dict[int, BlockLayout]
    big_rows: Dict[int, int]

    @property
    def n_cols(self) -> int:
        return len(self.column_names)

    @property
    def n_rows(self) -> int:
        return len(self.eq_row_names) + len(self.ub_row_names)

    def block_for(self, element: int) -> BlockLayout:
        return self.blocks[self.classification.block_of(element)]

    def summary(self) -> Dict:
        return {"columns": self.n_cols, "eq_rows": len(self.eq_row_names),
                "ub_rows": len(self.ub_row_names), "blocks": len(self.blocks),
                "big_bins": len(self.big_rows)}


def _vec(s: Vector) -> str:
    return "_".join(f"m{-x}" if x < 0 else str(x) for x in s)


def assemble_lp(instance: Instance, classification: BinClassification) -> LPModel:
    """
    Build the LP over allocation, marginal, state and ex-ante variables

    Args:
        instance: M'' (classification family with shrunk capacities)
        classification: Big/small split whose indices address instance's family

    Returns:
        LPModel
    """
    names: List[str] = []
    obj: List[float] = []
    bounds: List[Tuple[float, Optional[float]]] = []

    def column(name: str, lo: float, hi: Optional[float], coef: float = 0.0) -> int:
        names.append(name)
        obj.append(coef)
        bounds.append((lo, hi))
        return len(names) - 1

    eq = _RowBuilder()
    ub = _RowBuilder()
    blocks: Dict[int, BlockLayout] = {}

    for b in classification.small_maximal:
        space = build_state_space(instance, b)
        dists = tuple(instance.distributions[e] for e in space.elements)
        layout = BlockLayout(b, space, dists)
        m = len(space.elements)
        for j in range(m + 1):
            layer = sorted(space.reachable_at[j] | space.boundary_at[j], reverse=True)
            for s in layer:
                layout.y[(j, s)] = column(f"Y_b{b}_t{j}_s{_vec(s)}", 0.0, 1.0)
            if j == m:
                break
            atoms = dists[j].atoms
            for s in sorted(space.reachable_at[j], reverse=True):
                for a in range(len(atoms)):
                    layout.x[(j, s, a)] = column(f"X_b{b}_t{j}_s{_vec(s)}_a{a}", 0.0, 1.0)
            for a, atom in enumerate(atoms):
                layout.xm[(j, a)] = column(f"XM_b{b}_t{j}_a{a}", 0.0, 1.0,
                                           float(atom.prob) * float(atom.value))
        layout.n_col = column(f"N_b{b}", 0.0, float(m))
        layout.slack_col = column(f"S_b{b}", 0.0, None)

        # initial state carries all mass
        eq.add([(layout.y[(0, space.initial)], 1.0)], 1.0, f"init_b{b}_t0_s{_vec(space.initial)}")
        for j in range(m):
            atoms = dists[j].atoms
            d = space.decrements[j]
            for a in range(len(atoms)):
                terms = [(layout.xm[(j, a)], 1.0)]
                terms += [(layout.x[(j, s, a)], -1.0) for s in space.reachable_at[j]]
                eq.add(terms, 0.0, f"marg_b{b}_t{j}_a{a}")
            for s in space.reachable_at[j]:
                for a in range(len(atoms)):
                    ub.add([(layout.x[(j, s, a)], 1.0), (layout.y[(j, s)], -1.0)], 0.0,
                           f"alloc_b{b}_t{j}_s{_vec(s)}_a{a}")
            for s in sorted(space.reachable_at[j + 1] | space.boundary_at[j + 1], reverse=True):
                terms = [(layout.y[(j + 1, s)], 1.0)]
                if (j, s) in layout.y:
                    terms.append((layout.y[(j, s)], -1.0))
                if s in space.reachable_at[j]:
                    terms += [(layout.x[(j, s, a)], float(atoms[a].prob)) for a in range(len(atoms))]
                src = tuple(x + y for x, y in zip(s, d))
                if src in space.reachable_at[j]:
                    terms += [(layout.x[(j, src, a)], -float(atoms[a].prob)) for a in range(len(atoms))]
                eq.add(terms, 0.0, f"flow_b{b}_t{j + 1}_s{_vec(s)}")
        for j in range(1, m + 1):
            for f in sorted(space.boundary_at[j], reverse=True):
                eq.add([(layout.y[(j, f)], 1.0)], 0.0, f"bnd_b{b}_t{j}_s{_vec(f)}")

        terms = [(layout.xm[(j, a)], float(atom.prob))
                 for j in range(m) for a, atom in enumerate(dists[j].atoms)]
        terms += [(layout.slack_col, 1.0), (layout.n_col, -1.0)]
        layout.exante_row = eq.add(terms, 0.0, f"exante_b{b}")
        blocks[b] = layout

    big_rows = {}
    family = instance.laminar()
    for big in classification.big:
        outer = family.bins[big].members
        terms = [(blocks[s].n_col, 1.0) for s in classification.small_maximal
                 if family.bins[s].members <= outer]
        big_rows[big] = ub.add(terms, float(family.bins[big].capacity), f"cap_b{big}")

    n_cols = len(names)
    model = LPModel(
        instance=instance,
        classification=classification,
        c=np.array(obj, dtype=float),
        A_eq=eq.matrix(n_cols),
        b_eq=np.array(eq.rhs, dtype=float),
        A_ub=ub.matrix(n_cols),
        b_ub=np.array(ub.rhs, dtype=float),
        bounds=bounds,
        column_names=names,
        eq_row_names=eq.names,
        ub_row_names=ub.names,
        blocks=blocks,
        big_rows=big_rows,
    )
    logger.info(f"Assembled LP: {model.summary()}")
    return model


__all__ = ['BlockLayout', 'LPModel', 'assemble_lp']
