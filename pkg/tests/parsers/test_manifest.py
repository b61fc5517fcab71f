import pytest

from fluor.parsers.exceptions import ParsingError
from fluor.parsers.manifest import parse_manifest


def test_parse(fixture_file):
    path = fixture_file("manifest", "materials.toml")
    entries = parse_manifest(path)

    assert list(entries) == ["NOISY", "WHITE", "IXCAXORA"]
    assert entries["NOISY"] == path.parent / "../donaldson/noisy.csv"
    assert entries["WHITE"].resolve().exists()


def test_no_materials_table(fixture_file):
    with pytest.raises(ParsingError, match="no \\[materials\\] table"):
        parse_manifest(fixture_file("manifest", "broken.toml"))


def test_invalid_entries(tmpdir):
    path = tmpdir.join("manifest.toml")
    path.write("[materials]\nA = 3\n")
    with pytest.raises(ParsingError, match="must map to a file path"):
        parse_manifest(path)

    path.write("[materials\n")
    with pytest.raises(ParsingError, match="Unable to parse"):
        parse_manifest(path)


def test_missing_file(fixture_file):
    with pytest.raises(ParsingError, match="not existent"):
        parse_manifest(fixture_file("manifest", "missing.toml"))
