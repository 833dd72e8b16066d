import json
import os
from pathlib import Path

import pytest

import swctl

DATA = Path(os.environ.get("SWCTL_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def load(name):
    return json.loads((DATA / name).read_text())


def test_switching_only_is_controllable():
    v = swctl.check(load("switching_only.json"))
    assert v["structurally_controllable"] is True
    assert v["criterion_a"]["grank_concat"] == 3
    assert v["oracle"]["dim"] == 3
    assert len(v["certificate"]["covered"]) == 3


def test_partial_values():
    sys = load("partial.json")
    assert swctl.grank(sys) == 9
    b = swctl.bounds(sys)
    assert (b["lower"], b["upper"], b["conventional_lower"]) == (8, 8, 6)
    assert swctl.controllable_dim(sys)["dim"] == 8
    assert swctl.cactus(sys)["size"] == 8


def test_mdg_and_realize():
    sys = load("switching_only.json")
    assert swctl.mdg(sys, layers=2)["linking_size"] == 3
    assert swctl.realize(sys, seed=1) == swctl.realize(json.dumps(sys), seed=1)


def test_errors():
    with pytest.raises(swctl.InputError):
        swctl.check('{"n": 2, "subsystems": []}')
    with pytest.raises(swctl.MdgSizeError):
        swctl.mdg(load("partial.json"), layers=40)


def test_cli_in_process():
    code, out, _ = swctl.run_cli("grank", DATA / "switching_only.json", "--format", "text")
    assert (code, out) == (0, "3\n")
