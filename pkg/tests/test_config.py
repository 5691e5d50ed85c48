import pytest

from wave_adr.core.errors import ConfigError
from wave_adr.io.config import load_alphas, load_spec, parse_key_values, save_alphas


def test_parse_key_values():
    text = """
    # medium
    omega=10
    fgmres.restart=30
    fgmres.tol=1.0e-8
    source=[0.25, 0.75]
    method=csl
    """
    data = parse_key_values(text)
    assert data["omega"] == 10
    assert data["fgmres"] == {"restart": 30, "tol": 1e-8}
    assert data["source"] == [0.25, 0.75]
    assert data["method"] == "csl"


@pytest.mark.parametrize("text", ["omega", "=3", "a=1\na.b=2", "a.b=1\na=2", "x=[1, 2"])
def test_malformed_lines(text):
    with pytest.raises(ConfigError):
        parse_key_values(text)


def test_load_key_value_spec(tmp_path):
    path = tmp_path / "marmousi_small.cfg"
    path.write_text("omega=31.4\nn=63\nsource=[0.5, 0.25]\nwave_adr.correction_steps=4\n")
    spec = load_spec(path)
    assert spec.name == "marmousi_small"
    assert spec.omega == 31.4
    assert spec.n == 63
    assert spec.source == (0.5, 0.25)
    assert spec.wave_adr.correction_steps == 4
    assert spec.method == "wave_adr"
    assert spec.wave_adr.adr.coarsest == "direct"
    assert spec.wave_adr.adr.max_omega_h == 2.5
    assert spec.wave_ray.ray_equation == "consistent"


def test_adr_solver_keys(tmp_path):
    path = tmp_path / "ablation.cfg"
    path.write_text(
        "omega=31.4\nn=63\nwave_adr.adr.scheme=central\nwave_adr.adr.solver=direct\n"
        "wave_adr.adr.max_omega_h=null\nwave_ray.ray_equation=printed\n"
    )
    spec = load_spec(path)
    assert spec.wave_adr.adr.scheme == "central"
    assert spec.wave_adr.adr.solver == "direct"
    assert spec.wave_adr.adr.max_omega_h is None
    assert spec.wave_ray.ray_equation == "printed"


def test_load_yaml_spec_resolves_slowness(tmp_path):
    (tmp_path / "model.pgm").write_bytes(b"")
    path = tmp_path / "run.yaml"
    path.write_text("name: layered\nomega: 20\nslowness: model.pgm\ntuner: defaults\n")
    spec = load_spec(path)
    assert spec.name == "layered"
    assert spec.slowness == str(tmp_path / "model.pgm")
    assert spec.tuner == "defaults"


@pytest.mark.parametrize(
    "text",
    ["omega=-1", "omega=10\nbogus=1", "omega=10\nmethod=multigrid", "omega=10\nn=2"],
)
def test_invalid_specs(tmp_path, text):
    path = tmp_path / "bad.cfg"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_spec(path)


def test_unreadable_config(tmp_path):
    with pytest.raises(ConfigError):
        load_spec(tmp_path / "absent.cfg")
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        load_spec(path)


def test_alphas_round_trip(tmp_path):
    alphas = {3: 7.123456789012345, 2: 4.6, 4: 30.0}
    path = save_alphas(alphas, tmp_path / "out" / "alphas.cfg", loss=1.5e-3)
    text = path.read_text()
    assert text.startswith("# tuned loss 1.500000e-03")
    assert "wave_adr.alphas.2=4.6" in text
    assert load_alphas(path) == alphas


@pytest.mark.parametrize(
    "text", ["wave_adr.alphas.2=0.9", "omega=3\nwave_adr.alphas.2=3", "wave_adr.alphas.x=3"]
)
def test_invalid_alpha_files(tmp_path, text):
    path = tmp_path / "alphas.cfg"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_alphas(path)
