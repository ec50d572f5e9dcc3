import json

import pytest
from click.testing import CliRunner
from PIL import Image

from rollcall import barcode, idcard, records, schema
from rollcall.cli import main
from rollcall.config import ConnectionConfig, StorageStrategy
from rollcall.db import connect
from rollcall.model import EMP_TABLE

from conftest import employee

LO = StorageStrategy.LARGE_OBJECT


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def env(tmp_path):
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps({
        "engine": "sqlite", "path": str(tmp_path / "cli.db"),
    }))
    return {"cfg_file": str(cfg_path),
            "config": ConnectionConfig(engine="sqlite", path=str(tmp_path / "cli.db")),
            "tmp": tmp_path}


def invoke(runner, env, *args):
    return runner.invoke(main, ["--config", env["cfg_file"], *args])


def test_migrate_fresh(runner, env):
    result = invoke(runner, env, "migrate", "--target", "latest")
    assert result.exit_code == 0
    assert "applied versions: [1, 2, 3, 4]" in result.output


def test_verify_after_migrate(runner, env):
    invoke(runner, env, "migrate")
    result = invoke(runner, env, "verify")
    assert result.exit_code == 0
    assert "schema ok" in result.output
    assert "tab_t_emp_details.myphoto -> oid" in result.output


def test_verify_empty_db_fails(runner, env):
    result = invoke(runner, env, "verify")
    assert result.exit_code == 1


def test_version_regression_is_operational_error(runner, env):
    invoke(runner, env, "migrate")
    result = invoke(runner, env, "migrate", "--target", "1")
    assert result.exit_code == 1
    assert "version_regression" in result.output


def test_unknown_flag_usage_error(runner, env):
    result = invoke(runner, env, "migrate", "--no-such-flag")
    assert result.exit_code == 2
    assert "Usage" in result.output or "no such option" in result.output.lower()


def test_emit_ddl(runner, env):
    out = env["tmp"] / "ddl"
    result = invoke(runner, env, "emit-ddl", "--out", str(out))
    assert result.exit_code == 0
    assert (out / "V1__create_lo_domain.sql").exists()


def test_import_export(runner, env):
    invoke(runner, env, "migrate")
    header = ",".join(records.record_fields(EMP_TABLE))
    csv_in = env["tmp"] / "in.csv"
    csv_in.write_text(header + "\n"
                      "9,Sourav,,Bag,8131042345,1991-05-14,Electronics and Cor,"
                      "2015-07-01,M.Tech,Asst. Professor,Employee,Male,A+,1,\n")
    result = invoke(runner, env, "import", "--table", "employees",
                    "--file", str(csv_in))
    assert result.exit_code == 0
    assert "inserted: 1" in result.output

    csv_out = env["tmp"] / "out.csv"
    result = invoke(runner, env, "export", "--table", "employees",
                    "--file", str(csv_out))
    assert result.exit_code == 0
    assert "Sourav" in csv_out.read_text()


def test_idcard_command(runner, env):
    invoke(runner, env, "migrate")
    with connect(env["config"]) as db:
        records.create_record(db, EMP_TABLE, employee())
    out = env["tmp"] / "card.png"
    result = invoke(runner, env, "idcard", "--table", "employees",
                    "--id", "9", "--out", str(out))
    assert result.exit_code == 0
    with Image.open(out) as img:
        layout = idcard.CardLayout()
        bs = layout.barcode_slot
        region = img.crop((bs.x, bs.y, bs.x + bs.width, bs.y + bs.height))
        assert barcode.decode_modules(barcode.scan_row(region)) == "9"


def test_idcard_absent_record(runner, env):
    invoke(runner, env, "migrate")
    result = invoke(runner, env, "idcard", "--table", "employees",
                    "--id", "404", "--out", str(env["tmp"] / "x.png"))
    assert result.exit_code == 1


def test_vacuum_orphans_command(runner, env):
    invoke(runner, env, "migrate")
    with connect(env["config"]) as db:
        with db.transaction():
            db.lo_create([b"stray"])
    result = invoke(runner, env, "vacuum-orphans")
    assert result.exit_code == 0
    assert "reclaimed: 1" in result.output


def test_bench_command(runner, env):
    invoke(runner, env, "migrate")
    spec = env["tmp"] / "spec.json"
    spec.write_text(json.dumps({
        "strategy": "large_object", "n_images": 3,
        "size_bytes": [4096], "concurrency": 1, "seed": 2,
    }))
    out = env["tmp"] / "bench.csv"
    result = invoke(runner, env, "bench", "--spec-file", str(spec),
                    "--out", str(out))
    assert result.exit_code == 0
    text = out.read_text()
    assert text.startswith("strategy,size_bytes,op,")
    assert "large_object,4096,store,3," in text
