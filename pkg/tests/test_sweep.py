import csv
import io
import math

import pytest

from spinsq.errors import ParameterError
from spinsq.families import FamilySpec
from spinsq.sweep import FIELDS, fmt, run_sweep, to_csv, to_json_obj
from spinsq.theorem import residuals, verify_family
from spinsq.analysis import evaluate
from spinsq.families import build


def test_even_pair_crossings():
    records, crossings = run_sweep(FamilySpec("even-pair", 3, 0), 256)
    assert len(records) == 256
    xs = [c.theta for c in crossings if c.quantity == "xi_s2=1"]
    assert len(xs) == 2
    assert xs[0] == pytest.approx(math.pi / 3, abs=1e-9)
    assert xs[1] == pytest.approx(2 * math.pi / 3, abs=1e-9)
    # xi_T^2 and C only touch their thresholds, never cross
    assert [c for c in crossings if c.quantity != "xi_s2=1"] == []
    for r in records[1:]:
        if abs(r.theta - math.pi / 3) > 1e-6 and abs(r.theta - 2 * math.pi / 3) > 1e-6:
            assert r.xi_t2 < 1 and r.concurrence > 0


def test_adjacent_pair_sweep():
    records, crossings = run_sweep(FamilySpec("adjacent-pair", 3, 0), 128)
    for r in records[1:]:
        assert r.squeezed_T == "yes" and r.entangled == "yes"
    xs = sorted(c.theta for c in crossings if c.quantity == "xi_s2=1")
    assert len(xs) == 2
    mid = [r for r in records if xs[0] < r.theta < xs[1]]
    assert mid and all(r.xi_s2 > 1 for r in mid)


def test_even_rows_respect_gamma_bound():
    records, _ = run_sweep(FamilySpec("even-pair", 6, 2), 64, 4)
    for r in records:
        assert r.parity == "even"
        assert r.xi_t2 <= min(r.xi_s2, r.varsigma2) + 1e-10


def test_csv_layout_and_round_trip():
    records, crossings = run_sweep(FamilySpec("even-pair", 3, 0), 16)
    text = to_csv(records, crossings)
    assert text == to_csv(*run_sweep(FamilySpec("even-pair", 3, 0), 16))
    head, tail = text.split("\n# crossings\n")
    rows = list(csv.reader(io.StringIO(head)))
    assert tuple(rows[0]) == FIELDS
    assert len(rows) == 17
    for rec, row in zip(records, rows[1:]):
        assert float(row[3]) == rec.theta
        assert float(row[7]) == rec.xi_t2
    assert tail.splitlines()[0] == "quantity,phi,theta"
    obj = to_json_obj(records, crossings)
    assert len(obj["records"]) == 16 and obj["crossings"][0]["quantity"] == "xi_s2=1"


def test_fmt():
    assert fmt(0.1) == "0.1"
    assert fmt(math.pi) == "3.141592653589793"
    assert fmt(3) == "3"


def test_sweep_rejects():
    with pytest.raises(ParameterError):
        run_sweep(FamilySpec("even-pair", 3, 0), 1)
    with pytest.raises(ParameterError):
        run_sweep(FamilySpec("single-dicke", 3, 0), 8)


def test_verify_small_grid():
    s = verify_family("even-pair", [2, 3, 4], 32, 2)
    assert s.ok and s.points == s.agree + s.boundary
    s = verify_family("adjacent-pair", [3], 32, 1, theorem=False)
    assert s.ok and s.agree > 0


def test_residuals_need_parity():
    with pytest.raises(ValueError):
        residuals(evaluate(build(FamilySpec("adjacent-pair", 3, 0, theta=0.5))))
