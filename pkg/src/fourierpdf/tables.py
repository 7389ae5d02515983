"""Reference values for tables 1-9 and a cell-by-cell comparison engine.

Reference cells are kept as the printed decimal strings so that "within N
units of the last printed digit" is decided exactly.  Data files live in
``fourierpdf/data/tableN.tsv``: one ``# caption:`` line, a tab-separated
header, then one row per line; ``--`` marks a gap and a trailing ``u`` marks
a contested cell, compared with a looser tolerance.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from importlib import resources

from .exact_dists import uniform_sum_coeff_exact
from .moments import Family
from .numerics import DEFAULT_PRECISION_BITS
from .series import (
    SKEWNESS_TRUNCATION,
    TruncationSpec,
    build_model,
    moment_coefficients,
    percentile,
    tail_prob,
)

TABLE_IDS = tuple(range(1, 10))
GAP = "--"


@dataclass(frozen=True)
class ReferenceCell:
    text: str
    underlined: bool = False

    @property
    def is_gap(self) -> bool:
        return self.text == GAP

    @property
    def decimal(self) -> Decimal:
        return Decimal(self.text)

    @property
    def value(self) -> float:
        return float(self.decimal)

    @property
    def last_digit_unit(self) -> Decimal:
        """Place value of the last printed digit, e.g. ``1E-10`` for ``3.61470e-7``."""
        return Decimal(1).scaleb(self.decimal.as_tuple().exponent)

    def formatted(self) -> str:
        """Re-render the parsed decimal in the style it was printed in."""
        if self.is_gap:
            text = GAP
        else:
            text = format_decimal(self.decimal, scientific="e" in self.text.lower())
        return text + ("u" if self.underlined else "")

    @classmethod
    def parse(cls, raw: str) -> "ReferenceCell":
        raw = raw.strip()
        if raw.endswith("u"):
            cell = cls(raw[:-1], True)
        else:
            cell = cls(raw, False)
        if not cell.is_gap:
            cell.decimal  # raises on malformed text
        return cell


def format_decimal(d: Decimal, scientific: bool) -> str:
    sign, digits, exponent = d.as_tuple()
    s = "-" if sign else ""
    ds = "".join(map(str, digits))
    if scientific:
        return f"{s}{ds[0]}.{ds[1:]}e{d.adjusted()}"
    if exponent >= 0:
        return s + ds + "0" * exponent
    places = -exponent
    ds = ds.rjust(places + 1, "0")
    return f"{s}{ds[:-places]}.{ds[-places:]}"


@dataclass(frozen=True)
class ReferenceTable:
    id: int
    caption: str
    row_header: str
    column_labels: tuple[str, ...]
    row_labels: tuple[str, ...]
    cells: tuple[tuple[ReferenceCell, ...], ...]

    def __post_init__(self) -> None:
        for row in self.cells:
            if len(row) != len(self.column_labels):
                raise ValueError(f"table {self.id}: ragged row")
        if self.id not in (8, 9) and any(c.underlined for row in self.cells for c in row):
            raise ValueError(f"table {self.id}: underline flags are only used in tables 8 and 9")

    def to_tsv(self) -> str:
        lines = [f"# caption: {self.caption}", "\t".join((self.row_header,) + self.column_labels)]
        for label, row in zip(self.row_labels, self.cells):
            lines.append("\t".join([label] + [c.formatted() for c in row]))
        return "\n".join(lines) + "\n"


def parse_table(table_id: int, text: str) -> ReferenceTable:
    caption = ""
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            if line.startswith("# caption:"):
                caption = line[len("# caption:"):].strip()
            continue
        rows.append(line.split("\t"))
    header, body = rows[0], rows[1:]
    return ReferenceTable(
        id=table_id,
        caption=caption,
        row_header=header[0],
        column_labels=tuple(header[1:]),
        row_labels=tuple(r[0] for r in body),
        cells=tuple(tuple(ReferenceCell.parse(c) for c in r[1:]) for r in body),
    )


def load_table(table_id: int) -> ReferenceTable:
    if table_id not in TABLE_IDS:
        raise ValueError(f"unknown table id {table_id}; expected 1..9")
    text = resources.files("fourierpdf").joinpath("data").joinpath(f"table{table_id}.tsv").read_text(encoding="utf-8")
    return parse_table(table_id, text)


@dataclass(frozen=True)
class CellComparison:
    table_id: int
    row: str
    column: str
    reference: str
    computed: float
    abs_diff: float
    tolerance: float
    rule: str
    passed: bool
    underlined: bool = False

    @property
    def reference_value(self) -> float:
        return float(self.reference)


@dataclass(frozen=True)
class ComparisonReport:
    table_id: int
    caption: str
    cells: tuple[CellComparison, ...]
    passed: bool = field(init=False)
    max_abs_diff: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "passed", all(c.passed for c in self.cells))
        object.__setattr__(self, "max_abs_diff", max((c.abs_diff for c in self.cells), default=0.0))

    @property
    def failures(self) -> list[CellComparison]:
        return [c for c in self.cells if not c.passed]


_COLUMN = re.compile(r"n=(\d+)(?:,J=(\d+))?")


def _column_n(label: str) -> tuple[int, int | None]:
    m = _COLUMN.fullmatch(label)
    if not m:
        raise ValueError(f"cannot parse column label {label!r}")
    return int(m.group(1)), (int(m.group(2)) if m.group(2) else None)


def _last_digit_rule(table_id, row, col, cell, computed, units=5, noise_floor=None):
    if noise_floor is not None and abs(cell.value) < noise_floor:
        diff = abs(computed)
        return CellComparison(table_id, row, col, cell.text, computed, abs(computed - cell.value),
                              noise_floor, "|computed| <= floor (printed value is rounding noise)",
                              diff <= noise_floor)
    tol = float(units * cell.last_digit_unit)
    diff = abs(computed - cell.value)
    # the printed value is exact in decimal; compare in Decimal to avoid a spurious edge miss
    exact_diff = abs(Decimal(repr(computed)) - cell.decimal)
    return CellComparison(table_id, row, col, cell.text, computed, diff, tol,
                          f"within {units} units of the last printed digit",
                          exact_diff <= units * cell.last_digit_unit)


def _absolute_rule(table_id, row, col, cell, computed, tol, underlined_tol=None):
    limit = underlined_tol if (cell.underlined and underlined_tol is not None) else tol
    diff = abs(computed - cell.value)
    return CellComparison(table_id, row, col, cell.text, computed, diff, limit,
                          f"absolute difference <= {limit:g}", diff <= limit, cell.underlined)


def _table1(table: ReferenceTable, precision_bits: int) -> list[CellComparison]:
    out = []
    for label, row in zip(table.row_labels, table.cells):
        n = int(label)
        K, J = int(row[0].text), int(row[1].text)
        coeffs = moment_coefficients(Family.UNIFORM_SUM, n, TruncationSpec(K, J), precision_bits)
        computed = max(abs(float(coeffs[k]) - uniform_sum_coeff_exact(n, k)) for k in range(K + 1))
        ref = row[2]
        ratio = computed / ref.value
        out.append(CellComparison(1, label, table.column_labels[2], ref.text, computed,
                                  abs(computed - ref.value), 2.0, "within a factor of 2",
                                  0.5 <= ratio <= 2.0))
    return out


def _coefficient_table(table: ReferenceTable, precision_bits: int) -> list[CellComparison]:
    out = []
    noise_floor = 1e-12 if table.id in (2, 3) else None
    for j, col in enumerate(table.column_labels):
        n, J = _column_n(col)
        if table.id in (2, 3):
            family, K = Family.UNIFORM_SUM, 8
        else:
            family, (K, J) = Family.NORMAL_SKEWNESS, SKEWNESS_TRUNCATION
        coeffs = moment_coefficients(family, n, TruncationSpec(K, J), precision_bits)
        for i, label in enumerate(table.row_labels):
            cell = table.cells[i][j]
            if cell.is_gap:
                continue
            k = int(label)
            out.append(_last_digit_rule(table.id, label, col, cell, float(coeffs[k]), noise_floor=noise_floor))
    return out


def _percentile_table(table: ReferenceTable, precision_bits: int) -> list[CellComparison]:
    family = Family.UNIFORM_SUM if table.id == 4 else Family.NORMAL_SKEWNESS
    out = []
    for label, row in zip(table.row_labels, table.cells):
        model = build_model(family, int(label), precision_bits=precision_bits)
        for col, cell in zip(table.column_labels, row):
            if cell.is_gap:
                continue
            x = percentile(model, float(col))
            out.append(_absolute_rule(table.id, label, col, cell, x, 1e-4, 2e-4 if table.id == 9 else None))
    return out


def _tail_table(table: ReferenceTable, precision_bits: int) -> list[CellComparison]:
    out = []
    for j, col in enumerate(table.column_labels):
        n, _ = _column_n(col)
        model = build_model(Family.NORMAL_SKEWNESS, n, precision_bits=precision_bits)
        for i, label in enumerate(table.row_labels):
            cell = table.cells[i][j]
            if cell.is_gap:
                continue
            out.append(_absolute_rule(8, label, col, cell, tail_prob(model, float(label)), 1e-4, 2e-4))
    return out


def reproduce_table(table_id: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> ComparisonReport:
    """Recompute every non-gap cell of a reference table and compare it with the stored value."""
    table = load_table(table_id)
    if table_id == 1:
        cells = _table1(table, precision_bits)
    elif table_id in (2, 3, 5, 6, 7):
        cells = _coefficient_table(table, precision_bits)
    elif table_id in (4, 9):
        cells = _percentile_table(table, precision_bits)
    else:
        cells = _tail_table(table, precision_bits)
    return ComparisonReport(table_id, table.caption, tuple(cells))
