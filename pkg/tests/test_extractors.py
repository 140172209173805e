"""
Extractor Tests
Instance JSON and DIMACS formula files
"""
import json
import pytest
from fractions import Fraction
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from matroid_selection.core.errors import FormulaError, InstanceValidationError
from matroid_selection.core.formulas import S2SATFormula, S3SATFormula
from matroid_selection.extractors.cnf_extractor import (CNFExtractor, format_dimacs, load_formula,
                                                        parse_dimacs, save_formula)
from matroid_selection.extractors.instance_extractor import (InstanceExtractor, instance_from_dict,
                                                             load_instance, save_instance)
from matroid_selection.generators.random_instances import random_graphic, random_left_to_right


def laminar_data(**overrides):
    data = {
        "matroid": {"type": "laminar", "bins": [{"members": [0, 1], "capacity": 1}]},
        "distributions": [
            [{"value": 0, "prob": "1/2"}, {"value": 4, "prob": "1/2"}],
            [{"value": "3", "prob": 1}],
        ],
    }
    data.update(overrides)
    return data


class TestInstanceJSON:
    """Schema, numbers and invariants"""

    def test_from_dict(self):
        inst = instance_from_dict(laminar_data())
        assert inst.n == 2
        assert inst.distributions[0].values == (0, 4)
        assert inst.distributions[0].exact

    def test_atoms_sorted_after_validation(self):
        data = laminar_data(distributions=[[{"value": 5, "prob": "1/4"}, {"value": 1, "prob": "3/4"}],
                                           [{"value": 1, "prob": 1}]])
        assert instance_from_dict(data).distributions[0].values == (1, 5)

    def test_float_probabilities(self):
        data = laminar_data(distributions=[[{"value": 1, "prob": 0.25}, {"value": 2, "prob": 0.75}],
                                           [{"value": 1, "prob": 1}]])
        inst = instance_from_dict(data)
        assert not inst.distributions[0].exact

    def test_schema_violation(self):
        with pytest.raises(InstanceValidationError):
            instance_from_dict({"matroid": {"type": "laminar"}, "distributions": []})

    def test_invariant_violation(self):
        data = laminar_data(distributions=[[{"value": 1, "prob": "1/2"}], [{"value": 1, "prob": 1}]])
        with pytest.raises(InstanceValidationError):
            instance_from_dict(data)

    def test_crossing_bins(self):
        data = laminar_data(matroid={"type": "laminar", "bins": [{"members": [0, 1], "capacity": 1},
                                                                 {"members": [1, 2], "capacity": 1}]},
                            distributions=[[{"value": 1, "prob": 1}]] * 3)
        with pytest.raises(InstanceValidationError):
            instance_from_dict(data)

    def test_laminar_file_round_trip(self, tmp_path):
        inst = random_left_to_right(6, 2, 3, 3, seed=9, root_capacity=2)
        path = save_instance(inst, tmp_path / "nested" / "ltr.json")
        assert load_instance(path).to_dict() == inst.to_dict()

    def test_graphic_file_round_trip(self, tmp_path):
        inst = random_graphic(5, 4, 2, seed=2)
        path = save_instance(inst, tmp_path / "graph.json")
        loaded = load_instance(path)
        assert loaded.is_graphic
        assert loaded.to_dict() == inst.to_dict()

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        result = InstanceExtractor().extract(path)
        assert not result.success
        assert "Invalid JSON" in result.errors[0]
        with pytest.raises(InstanceValidationError):
            load_instance(path)

    def test_invalid_utf8(self, tmp_path):
        path = tmp_path / "binary.json"
        path.write_bytes(b"\xff\xfe{")
        result = InstanceExtractor().extract(path)
        assert not result.success
        assert "Invalid JSON" in result.errors[0]
        with pytest.raises(InstanceValidationError):
            load_instance(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InstanceValidationError):
            load_instance(tmp_path / "absent.json")

    def test_name_defaults_to_file_stem(self, tmp_path):
        path = tmp_path / "unnamed.json"
        path.write_text(json.dumps(laminar_data()), encoding="utf-8")
        assert load_instance(path).name == "unnamed"


class TestDimacs:
    """`p cnf n m alternating` files"""

    def test_parse_two_cnf(self):
        text = "c comment\np cnf 2 2 alternating\n1 -2 0\n2 0\n"
        formula = parse_dimacs(text)
        assert isinstance(formula, S2SATFormula)
        assert formula.clauses == ((1, -2), (2,))

    def test_parse_three_cnf(self):
        formula = parse_dimacs("p cnf 3 1 alternating\n1 2 3 0\n")
        assert isinstance(formula, S3SATFormula)

    def test_clause_spanning_lines(self):
        formula = parse_dimacs("p cnf 2 1 alternating\n1\n-2 0\n")
        assert formula.clauses == ((1, -2),)

    def test_missing_flag(self):
        with pytest.raises(FormulaError):
            parse_dimacs("p cnf 2 1\n1 0\n")
        assert parse_dimacs("p cnf 2 1\n1 0\n", require_flag=False).m == 1

    @pytest.mark.parametrize("text", [
        "1 0\n",
        "p cnf 2 2 alternating\n1 0\n",
        "p cnf 2 1 alternating\n1 x 0\n",
        "p cnf 4 1 alternating\n1 2 3 4 0\n",
        "p cnf 2 1 alternating\n3 0\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(FormulaError):
            parse_dimacs(text)

    def test_format_parses_back(self):
        formula = S2SATFormula.of(2, [[1, -2], [2]])
        assert parse_dimacs(format_dimacs(formula)).clauses == formula.clauses

    def test_file_helpers(self, tmp_path):
        path = save_formula(S2SATFormula.of(2, [[1]]), tmp_path / "f.cnf")
        assert load_formula(path).clauses == ((1,),)
        result = CNFExtractor().extract(path)
        assert result.extracted_structure == "s2sat"
        assert result.metadata["item_count"] == 1

    def test_wrong_extension(self, tmp_path):
        path = tmp_path / "f.doc"
        path.write_text("p cnf 2 1 alternating\n1 0\n", encoding="utf-8")
        with pytest.raises(FormulaError):
            load_formula(path)
