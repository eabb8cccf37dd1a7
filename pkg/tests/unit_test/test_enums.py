from quiet_zones.enums import ControlMode, CorrelationKind, FilterKind, OracleMethod, Preset


def test_filter_kind_values():
    assert FilterKind.low_pass.value == "low-pass"
    assert FilterKind.high_pass.value == "high-pass"
    assert FilterKind("low-pass") is FilterKind.low_pass


def test_control_mode_values():
    assert ControlMode("near-field") is ControlMode.near_field
    assert ControlMode("far-field") is ControlMode.far_field


def test_correlation_kind_and_oracle_method():
    assert [k.value for k in CorrelationKind] == ["auto", "cross"]
    assert [m.value for m in OracleMethod] == ["table", "direct"]


def test_preset_names_are_cli_contract():
    assert [p.value for p in Preset] == ["tone300", "lpf300", "lpf600", "bpf"]
    assert Preset("bpf") == "bpf"
