import json

import pytest

from heckecm.golden import check_golden, default_golden_dir, load_goldens

GOLDENS = load_goldens()
REQUIRED = {"name", "module", "kind", "inputs", "value", "method", "oracle"}


def test_golden_directory_populated():
    assert default_golden_dir().is_dir()
    assert len(GOLDENS) >= 13


@pytest.mark.parametrize("path,data,err", GOLDENS, ids=[p.stem for p, _, _ in GOLDENS])
def test_golden_value(path, data, err):
    assert err is None
    assert REQUIRED <= set(data)
    assert data["oracle"].startswith("python3 scripts/make_golden.py --only ")
    result = check_golden(path, data, err)
    assert result.passed, result.details


def test_golden_checks_reject_wrong_values(tmp_path):
    path, data, _ = next(g for g in GOLDENS if g[0].stem == "verify_Qi_f8_a4")
    bad = dict(data, value=[47, -1])
    target = tmp_path / path.name
    target.write_text(json.dumps(bad))
    assert not check_golden(target, bad, None).passed
