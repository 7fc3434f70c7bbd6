"""The certification table: one supersingular set-up per degree 4 < m < 100.

Each row fixes r, q = r*m - 1 = p^n, the primes ell | m it certifies, a
polynomial f over F_p whose root gamma is a primitive m-th root of unity in
F_{q^2}, and the special pairs (alpha, beta) as coefficient lists in gamma.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import RowNotFound, ValidationFailed

COLUMNS = ("m", "r", "q", "p", "n", "ells", "f", "pairs")


@dataclass(frozen=True)
class TableRow:
    m: int
    r: int
    q: int
    p: int
    n: int
    ells: tuple[int, ...]
    f: tuple[int, ...]
    pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def to_fields(self) -> list[str]:
        c = lambda v: ",".join(str(x) for x in v)
        return [str(self.m), str(self.r), str(self.q), str(self.p), str(self.n), c(self.ells),
                c(self.f), ";".join(c(a) + "/" + c(b) for a, b in self.pairs)]


def _ints(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(",") if x.strip())


def parse_row(fields: list[str]) -> TableRow:
    if len(fields) != len(COLUMNS):
        raise ValueError(f"expected {len(COLUMNS)} columns, got {len(fields)}")
    m, r, q, p, n = (int(x) for x in fields[:5])
    pairs = []
    for chunk in fields[7].split(";"):
        a, b = chunk.split("/")
        pairs.append((_ints(a), _ints(b)))
    row = TableRow(m, r, q, p, n, _ints(fields[5]), _ints(fields[6]), tuple(pairs))
    if row.q != row.r * row.m - 1 or row.p ** row.n != row.q:
        raise ValueError(f"inconsistent cover data in row for m={m}")
    return row


def default_table_path() -> Path:
    return Path(str(resources.files("fermatlines") / "data" / "table.tsv"))


def load_table(path: str | Path | None = None) -> list[TableRow]:
    path = Path(path) if path is not None else default_table_path()
    rows = []
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.startswith("#")]
    reader = csv.reader(lines, delimiter="\t")
    header = next(reader)
    if tuple(header) != COLUMNS:
        raise ValueError(f"unexpected header {header}")
    for fields in reader:
        rows.append(parse_row(fields))
    return rows


def rows_for(m: int, path=None) -> list[TableRow]:
    rows = [row for row in load_table(path) if row.m == m]
    if not rows:
        raise RowNotFound(f"degree {m} is not in the table")
    return rows


def degrees(path=None) -> list[int]:
    return sorted({row.m for row in load_table(path)})


def validate_row(row: TableRow) -> None:
    """Check every algebraic claim a row makes; raises ValidationFailed."""
    from .charp import find_cover_params, general_line, is_special_pair, validate_line_on_surface
    from .field_tower import build_field_ctx

    cover = find_cover_params(row.m)
    if (cover.r, cover.q, cover.p, cover.n) != (row.r, row.q, row.p, row.n):
        raise ValidationFailed(f"m={row.m}: cover search gives {cover}, row says r={row.r}")
    if any(row.m % ell for ell in row.ells):
        raise ValidationFailed(f"m={row.m}: ells {row.ells} do not all divide m")
    ctx = build_field_ctx(row.p, list(row.f), row.m)
    if ctx.q != row.q:
        raise ValidationFailed(f"m={row.m}: f has the wrong degree")
    for a, b in row.pairs:
        alpha, beta = ctx.elem(a), ctx.elem(b)
        if not is_special_pair(ctx, alpha, beta):
            raise ValidationFailed(f"m={row.m}: ({a}, {b}) is not a special pair")
        if not validate_line_on_surface(general_line(ctx, alpha, beta), row.q + 1, ctx):
            raise ValidationFailed(f"m={row.m}: line for ({a}, {b}) is not on the surface")
