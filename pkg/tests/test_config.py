import pytest

from thermofn.config import ENV_VAR, Config, load_config, parse_config, write_config
from thermofn.dispatch import Method, choose_method
from thermofn.quadrature import IntegralParams, Kind


def test_defaults_run_without_file(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert load_config() == Config()


def test_round_trip(tmp_path):
    cfg = Config(oracle_tol=1e-11, series_dps=40, screening_convention="wavenumber",
                 asym_c={"i1": 0.5, "i2": 1.0, "i3": 0.3, "i4": 0.3})
    path = tmp_path / "c.cfg"
    write_config(cfg, path)
    assert load_config(path) == cfg


def test_dotted_table_keys_merge_with_defaults():
    cfg = parse_config("series_zmax.i1.nu0 = 10  # shrink\nasym_c.i2 = 3\n")
    assert cfg.series_zmax["i1.nu0"] == 10.0
    assert cfg.series_zmax["i2.nu0"] == Config().series_zmax["i2.nu0"]
    assert cfg.asym_c["i2"] == 3.0 and cfg.asym_c["i1"] == Config().asym_c["i1"]


def test_env_override(tmp_path, monkeypatch):
    path = tmp_path / "env.cfg"
    path.write_text("series_zmax.i1.nu0 = 0.1\n")
    monkeypatch.setenv(ENV_VAR, str(path))
    cfg = load_config()
    assert cfg.zmax("i1", 0) == 0.1
    assert choose_method(IntegralParams(Kind.I1, 1.0, 0), config=cfg).method is not Method.SERIES


@pytest.mark.parametrize("text", ["nonsense = 1", "oracle_tol", "oracle_tol = 1e-30",
                                  "screening_convention = inverse", "term_cap = 3"])
def test_rejects_bad_config(text):
    with pytest.raises(ValueError):
        parse_config(text)


def test_zmax_nearest_order():
    cfg = Config(series_zmax={"i1.nu0": 10.0, "i1.nu2": 30.0})
    assert cfg.zmax("i1", 0) == 10.0
    assert cfg.zmax("i1", 1.8) == 30.0
    assert cfg.zmax("i1", 1) == 10.0
    assert cfg.zmax("i3", 0) == 0.0


def test_electrostatic_constant():
    assert Config().e2_kev_cm == pytest.approx(1.439964548e-10, rel=1e-9)
