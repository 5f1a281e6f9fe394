"""Parameter model and flat key-value config files."""

import logging
import math

import pytest

from data import PARAMS_DIR
from src.polariton import (
    ConfigParseError,
    ConfigValidationError,
    SystemParams,
    UnknownKeyError,
    default_params,
    dump_config,
    load_config,
    load_config_text,
    parse_flat_config,
)

DEFAULT_FILE = PARAMS_DIR / "default.conf"


def test_defaults_describe_reference_structure():
    p = default_params()
    assert p.n_eff == 1.42
    assert p.lattice_a == 0.35
    assert p.omega_vib == 0.2
    assert p.rabi_ir == 0.016
    assert p.n_exc == 1e8
    assert p.n_bg_vis == 1e-6
    assert p.n_bg_ir == 1e-3
    assert p.gamma_vib == pytest.approx(0.002)
    assert p.lr_crossing_k == pytest.approx(2 * math.pi / 0.35)


def test_overrides_keep_other_defaults():
    p = load_config_text("n_eff = 1.5\nrabi_vis_ev = 0.07  # stronger\n")
    assert p.n_eff == 1.5
    assert p.rabi_vis == 0.07
    assert p.omega_vib == default_params().omega_vib


def test_gamma_vis_sets_both_linewidths():
    p = load_config_text("gamma_vis_ev = 0.005")
    assert p.gamma_vis_l == p.gamma_vis_r == 0.005


def test_independent_linewidths():
    p = load_config_text("gamma_vis_l_ev = 0.002\ngamma_vis_r_ev = 0.004")
    assert (p.gamma_vis_l, p.gamma_vis_r) == (0.002, 0.004)


def test_comments_and_blank_lines_ignored():
    assert parse_flat_config("# header\n\n  kt_ev = 0.02 # room\n") == {"kt_ev": "0.02"}


def test_unknown_key_rejected():
    with pytest.raises(UnknownKeyError) as exc:
        load_config_text("n_eff = 1.4\nlattice_b_um = 0.3")
    assert exc.value.keys == ["lattice_b_um"]


@pytest.mark.parametrize(
    "text,line_no",
    [
        ("n_eff 1.42", 1),
        ("n_eff = 1.42\n= 0.3", 2),
        ("n_eff = 1.42\n\nkt_ev =", 3),
        ("n_eff = 1.42\nn_eff = 1.5", 2),
    ],
)
def test_malformed_lines_report_line_number(text, line_no):
    with pytest.raises(ConfigParseError) as exc:
        load_config_text(text)
    assert exc.value.line_no == line_no


@pytest.mark.parametrize("text", ["n_eff = -1", "omega_vib_ev = 0", "kt_ev = warm", "n_exc = 0.5"])
def test_invalid_values_rejected(text):
    with pytest.raises(ConfigValidationError):
        load_config_text(text)


def test_config_errors_are_value_errors():
    with pytest.raises(ValueError):
        load_config_text("n_eff = -1")


def test_dephasing_key_stored_and_logged_as_ignored(caplog):
    with caplog.at_level(logging.WARNING, logger="src.polariton.params"):
        p = load_config_text("dephasing_exc_ev = 0.08")
    assert p.dephasing_exc == 0.08
    assert "dephasing_exc_ev" in caplog.text


def test_dump_round_trips_exactly():
    p = SystemParams(n_eff=1.4300000000000002, rabi_vis=0.1 + 0.2, kt=1 / 39, dephasing_exc=0.07)
    assert load_config_text(dump_config(p)) == p


def test_dump_writes_separate_linewidths_when_unequal():
    p = SystemParams(gamma_vis_l=0.002, gamma_vis_r=0.0035)
    text = dump_config(p)
    assert "gamma_vis_l_ev = 0.002" in text
    assert "gamma_vis_ev" not in text
    assert load_config_text(text) == p


def test_load_config_from_file(tmp_path):
    path = tmp_path / "params.conf"
    path.write_text("omega_ir0_ev = 0.15\n", encoding="utf-8")
    assert load_config(path).omega_ir0 == 0.15


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "absent.conf")


def test_shipped_default_file_matches_defaults():
    assert load_config(DEFAULT_FILE) == default_params()
