from pathlib import Path

import pytest

from harness import Scenario, ScenarioError, load_scenario

DEMO = Path(__file__).parents[3] / "data" / "demo.yml"


def test_default_scenario():
    """The default scenario has 20 machines of 64 cores."""
    scenario = load_scenario()
    assert scenario.machine_count == 20
    assert scenario.largest_cores == 64
    assert scenario.image.size == 100_000_000
    assert scenario.metering.period_seconds is None


def test_demo_scenario():
    """The bundled scenario loads."""
    scenario = load_scenario(DEMO)
    assert scenario.name == "demo"
    assert scenario.machine_count == 4
    assert scenario.schedulers.pm == "pm-on-demand"
    assert scenario.machines[0].memory == 32_000_000_000
    assert scenario.metering.hvac_watts == 150


def test_config_id():
    """Names don't change the configuration id, machines do."""
    first = Scenario(name="first")
    assert Scenario(name="second").config_id == first.config_id
    wider = Scenario.parse_obj({"machines": [{"cores": 32}]})
    assert wider.config_id != first.config_id


def test_max_vm_cores():
    """VMs are capped by the largest machine and the VM section."""
    scenario = Scenario.parse_obj(
        {"machines": [{"cores": 8}, {"cores": 16}], "vm": {"max_cores": 4}}
    )
    assert scenario.largest_cores == 16
    assert scenario.max_vm_cores == 4
    assert Scenario.parse_obj({"vm": {"max_cores": 100}}).max_vm_cores == 64


@pytest.mark.parametrize(
    "content",
    [
        "machines:\n  - cores: 8\n    colour: red\n",
        "machines:\n  - profile: turbo\n",
        "schedulers:\n  vm: round-robin\n",
        "- just\n- a list\n",
        "name: [unclosed\n",
    ],
)
def test_invalid_scenarios(tmp_path, content):
    """Invalid scenarios are reported as such."""
    path = tmp_path / "scenario.yml"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ScenarioError):
        load_scenario(path)


def test_missing_scenario(tmp_path):
    """A missing file can't be loaded."""
    with pytest.raises(ScenarioError):
        load_scenario(tmp_path / "missing.yml")
