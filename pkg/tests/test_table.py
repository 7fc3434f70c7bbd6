import pytest

from fermatlines.errors import RowNotFound
from fermatlines.table import degrees, load_table, parse_row, rows_for, validate_row


def test_table_shape():
    rows = load_table()
    assert len(rows) == 36
    expected = [m for m in range(5, 100) if m % 2 and m % 3]
    assert degrees() == expected
    assert len(expected) == 32


def test_roundtrip():
    for row in load_table():
        assert parse_row(row.to_fields()) == row


def test_specific_rows():
    (r17,) = rows_for(17)
    assert r17.pairs[0][0] == (1, 0, 0, 0, 1, 1, 0, 1)
    r55 = rows_for(55)
    assert [len(r.pairs) for r in r55] == [1, 2]
    assert [r.ells for r in r55] == [(5,), (11,)]
    (r89,) = rows_for(89)
    assert r89.f == (1, 16, 1)


def test_missing_row():
    with pytest.raises(RowNotFound):
        rows_for(6)


@pytest.mark.parametrize("row", load_table(), ids=lambda r: f"m{r.m}-{'_'.join(map(str, r.ells))}")
def test_rows_validate(row):
    validate_row(row)
