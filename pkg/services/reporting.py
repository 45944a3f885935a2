# -*- coding: utf-8 -*-
"""
Звіти перевірок: рядки pass/fail, CSV з фіксованим порядком стовпців
"""

import csv
import hashlib
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, List, Optional, TextIO

from models.instance import OpinionInstance
from models.scalar import format_rational
from services.data_loader import instance_to_dict

COLUMNS = ("experiment", "digest", "quantity", "value_decimal", "value_rational", "bound", "pass")


def digest(data: Any) -> str:
    """Перші 16 hex-символів sha256 канонічного JSON"""
    text = json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True, default=str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def instance_digest(instance: OpinionInstance) -> str:
    return digest(instance_to_dict(instance))


def _decimal(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _bound(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


@dataclass
class ReportRow:
    """
    Один виміряний факт

    Attributes:
        experiment: Ідентифікатор експерименту (набір/випадок)
        digest: Хеш екземпляра
        quantity: Назва величини
        value: Виміряне значення (Fraction для точного режиму)
        bound: Поріг або очікуване значення
        passed: Результат перевірки
    """
    experiment: str
    digest: str
    quantity: str
    value: Any
    bound: Any = None
    passed: bool = True

    def as_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "digest": self.digest,
            "quantity": self.quantity,
            "value_decimal": _decimal(self.value),
            "value_rational": format_rational(self.value) if isinstance(self.value, Fraction) else "",
            "bound": _bound(self.bound),
            "pass": "true" if self.passed else "false",
        }

    def sort_key(self):
        return self.experiment, self.digest, self.quantity


@dataclass
class Report:
    """Набір рядків звіту"""
    rows: List[ReportRow] = field(default_factory=list)

    def add(self, experiment: str, digest_value: str, quantity: str, value: Any,
            bound: Any = None, passed: bool = True) -> ReportRow:
        row = ReportRow(experiment, digest_value, quantity, value, bound, bool(passed))
        self.rows.append(row)
        return row

    def extend(self, rows: Iterable[ReportRow]) -> None:
        self.rows.extend(rows)

    def sorted_rows(self) -> List[ReportRow]:
        return sorted(self.rows, key=ReportRow.sort_key)

    @property
    def failures(self) -> List[ReportRow]:
        return [row for row in self.rows if not row.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def write_csv(self, stream: TextIO) -> None:
        """Пише CSV, відсортований за (experiment, digest, quantity)"""
        writer = csv.DictWriter(stream, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in self.sorted_rows():
            writer.writerow(row.as_dict())

    def save(self, file_path: Optional[str] = None) -> None:
        """Пише CSV у файл або в stdout"""
        if file_path is None:
            self.write_csv(sys.stdout)
            return
        with open(file_path, 'w', encoding='utf-8', newline='') as f:
            self.write_csv(f)

    def print_summary(self, title: str, file: Optional[TextIO] = None) -> None:
        file = file if file is not None else sys.stderr
        print("\n" + "=" * 60, file=file)
        print(title, file=file)
        print("=" * 60, file=file)
        print(f"Рядків:      {len(self.rows)}", file=file)
        print(f"Успішних:    {len(self.rows) - len(self.failures)}", file=file)
        print(f"Невдалих:    {len(self.failures)}", file=file)
        for row in self.failures[:10]:
            print(f"  ✗ {row.experiment} / {row.quantity} = {_decimal(row.value)} (межа {_bound(row.bound)})",
                  file=file)
        if len(self.failures) > 10:
            print(f"  ... та ще {len(self.failures) - 10}", file=file)
        print("=" * 60, file=file)
