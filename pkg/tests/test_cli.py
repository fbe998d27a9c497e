import json

import numpy as np

from ncdomains.cli import main
from ncdomains.corpus import mixed_spec
from ncdomains.serialization import dump_json, operator_to_json
from ncdomains.toeplitz import MultiToeplitzSymbol, symbol_to_operator
from ncdomains.weights import weights_by_factorization


def test_weights_csv_row_count(tmp_path):
    out = tmp_path / "w.csv"
    rc = main(["weights", "--spec", "hyperball_n2_m1", "--max-len", "4",
               "--out", str(out)])
    assert rc == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 1 + 31


def test_weights_with_spec_file(tmp_path):
    spec_path = tmp_path / "spec.json"
    dump_json(mixed_spec(2).to_json(), spec_path)
    rc = main(["weights", "--spec", str(spec_path), "--max-len", "3"])
    assert rc == 0


def test_model_report_json(tmp_path):
    out = tmp_path / "report.json"
    rc = main(["model", "--spec", "hyperball_n2_m2", "--max-len", "3",
               "--out", str(out)])
    assert rc == 0
    report = json.loads(out.read_text())
    assert report["summary"]["fail"] == 0
    assert report["summary"]["total"] > 0
    assert all("identity" in c for c in report["checks"])


def test_toeplitz_check_rejects_perturbed(tmp_path):
    table = weights_by_factorization(mixed_spec(1), 3)
    sym = MultiToeplitzSymbol.scalar(A={(1,): 1.0})
    op = symbol_to_operator(sym, table, 1.0, 3)
    op.matrix[op.basis.index[(1,)], op.basis.index[(2,)]] += 0.1
    spec_path = tmp_path / "spec.json"
    op_path = tmp_path / "op.json"
    dump_json(mixed_spec(1).to_json(), spec_path)
    dump_json(operator_to_json(op), op_path)
    rc = main(["toeplitz", "--spec", str(spec_path), "--max-len", "3",
               "--op", str(op_path)])
    assert rc == 1


def test_toeplitz_build_from_symbol(tmp_path):
    from ncdomains.serialization import symbol_to_json
    sym = MultiToeplitzSymbol.scalar(A={(): 1.0, (1,): 2.0}, B={(2,): 1j})
    sym_path = tmp_path / "sym.json"
    dump_json(symbol_to_json(sym), sym_path)
    rc = main(["toeplitz", "--spec", "hyperball_n2_m2", "--max-len", "3",
               "--symbol", str(sym_path), "--out", str(tmp_path / "op.json")])
    assert rc == 0


def test_berezin_tuple_membership(tmp_path):
    from ncdomains.berezin import OperatorTuple
    from ncdomains.serialization import tuple_to_json
    spec = mixed_spec(1)
    X = OperatorTuple(spec, [np.zeros((2, 2)), np.zeros((2, 2))])
    path = tmp_path / "tuple.json"
    dump_json(tuple_to_json(X), path)
    rc = main(["berezin", "--spec", "mixed_n2_m1", "--max-len", "3",
               "--tuple", str(path)])
    assert rc == 0


def test_malformed_config_exit_code(tmp_path):
    rc = main(["weights", "--spec", str(tmp_path / "missing.json"),
               "--max-len", "3"])
    assert rc == 2


def test_verify_all_small(tmp_path):
    out = tmp_path / "report.json"
    rc = main(["verify-all", "--max-len", "4", "--out", str(out)])
    assert rc == 0
    report = json.loads(out.read_text())
    assert report["summary"]["fail"] == 0
    assert report["config"]["seed"] == 0
