import pytest

from energy import ConstantModel, LinearModel, PowerState, instantaneous_power
from machines import PMState, complex_profile, simplified_profile


def test_linear_model():
    """A linear model interpolates between idle and maximum."""
    model = LinearModel(368.8, 722.7)
    assert model.power(0) == pytest.approx(368.8)
    assert model.power(0.5) == pytest.approx(545.75)
    assert model.power(1) == pytest.approx(722.7)
    assert model.idle == 368.8


def test_constant_model():
    """A constant model ignores the utilisation."""
    model = ConstantModel(36.4)
    assert instantaneous_power(model, 0) == 36.4
    assert instantaneous_power(model, 1) == 36.4


def test_utilisation_out_of_range():
    """Utilisations outside [0, 1] are refused."""
    model = LinearModel(1, 2)
    with pytest.raises(ValueError):
        model.power(1.5)

    with pytest.raises(ValueError):
        model.power(-0.1)


def test_invalid_models():
    """Negative or inverted draws are refused."""
    with pytest.raises(ValueError):
        ConstantModel(-1)

    with pytest.raises(ValueError):
        LinearModel(10, 5)

    with pytest.raises(ValueError):
        PowerState("broken", ConstantModel(1), 1.5)


def test_simplified_profile():
    """The simplified profile matches the measured node."""
    profile = simplified_profile()
    off = profile.power_state(PMState.OFF)
    assert off.model.power(0) == 36.4
    assert off.processing_factor == 0
    assert profile.power_state(PMState.SWITCHING_ON).model.power(0) == 483.1
    assert profile.power_state(PMState.SWITCHING_OFF).model.power(1) == 409.2
    running = profile.power_state(PMState.RUNNING)
    assert running.model.power(0) == pytest.approx(368.8)
    assert running.model.power(1) == pytest.approx(722.7)
    assert profile.duration(PMState.SWITCHING_ON) == 200
    assert profile.duration(PMState.SWITCHING_OFF) == 12


def test_complex_profile_script():
    """The switch-off script of the complex profile lasts 12.02 s."""
    profile = complex_profile()
    script = profile.script(PMState.SWITCHING_OFF)
    seconds = sum(step.delay + step.seconds for step in script)
    assert seconds == pytest.approx(12.02)
    state = profile.power_state(PMState.SWITCHING_OFF)
    assert state.processing_factor == 1
