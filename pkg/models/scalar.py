# -*- coding: utf-8 -*-
"""
Числові бекенди: точні раціональні числа та 64-бітні float
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from numbers import Rational
from typing import Union

import numpy as np

Scalar = Union[Fraction, float]


def parse_scalar(value) -> Fraction:
    """
    Перетворює значення на точний дріб

    Рядки приймаються у вигляді "p/q" або десяткового запису,
    звичайні числа читаються як точні десяткові дроби (0.1 -> 1/10).

    Args:
        value: Fraction, int, float, str або numpy-скаляр

    Returns:
        Точне раціональне значення
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise TypeError(f"Логічне значення не є числом: {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            raise ValueError(f"Нескінченне значення не підтримується: {value!r}")
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"Некоректне раціональне число: {value!r}") from exc
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"Непідтримуваний тип числа: {type(value).__name__}")


def format_rational(value) -> str:
    """Записує значення як нескоротний дріб "p/q" з q > 0"""
    frac = parse_scalar(value) if not isinstance(value, Fraction) else value
    return f"{frac.numerator}/{frac.denominator}"


class Backend(ABC):
    """
    Арифметика, у якій виконуються обчислення.

    Бекенд обирається для кожного виклику окремо: сертифікати
    працюють у точному режимі, внутрішні цикли оптимізаторів у float.
    """

    name: str = ""
    exact: bool = False

    @abstractmethod
    def scalar(self, value) -> Scalar:
        """Перетворює одне значення у числовий тип бекенду"""

    @abstractmethod
    def array(self, values) -> np.ndarray:
        """Перетворює вектор або матрицю у масив бекенду (завжди нова копія)"""

    @abstractmethod
    def zeros(self, shape) -> np.ndarray:
        pass

    @abstractmethod
    def negligible(self, pivot, scale, size: int) -> bool:
        """Чи вважається опорний елемент нульовим"""

    def eye(self, n: int) -> np.ndarray:
        result = self.zeros((n, n))
        for i in range(n):
            result[i, i] = self.scalar(1)
        return result

    def ones(self, n: int) -> np.ndarray:
        result = self.zeros(n)
        result[:] = self.scalar(1)
        return result

    def leq(self, a, b, tol: float = 0.0) -> bool:
        """a <= b; у float-режимі з явним допуском tol"""
        if self.exact:
            return a <= b
        return float(a) <= float(b) + tol

    def equal(self, a, b, tol: float = 0.0) -> bool:
        """a == b; у float-режимі |a - b| <= tol"""
        if self.exact:
            return a == b
        return abs(float(a) - float(b)) <= tol

    def __repr__(self):
        return f"{self.__class__.__name__}()"


class ExactBackend(Backend):
    """Довільна точність через fractions.Fraction у numpy-масивах dtype=object"""

    name = "exact"
    exact = True

    def scalar(self, value) -> Fraction:
        return parse_scalar(value)

    def array(self, values) -> np.ndarray:
        source = np.asarray(values, dtype=object)
        result = np.empty(source.shape, dtype=object)
        for index, value in np.ndenumerate(source):
            result[index] = parse_scalar(value)
        return result

    def zeros(self, shape) -> np.ndarray:
        result = np.empty(shape, dtype=object)
        result.fill(Fraction(0))
        return result

    def negligible(self, pivot, scale, size: int) -> bool:
        return pivot == 0


class FloatBackend(Backend):
    """IEEE-754 binary64"""

    name = "float"
    exact = False

    def scalar(self, value) -> float:
        return float(value)

    def array(self, values) -> np.ndarray:
        return np.array(values, dtype=float)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=float)

    def negligible(self, pivot, scale, size: int) -> bool:
        return abs(pivot) <= size * np.finfo(float).eps * max(float(scale), 1.0)


EXACT = ExactBackend()
FLOAT = FloatBackend()


def get_backend(name: Union[str, Backend]) -> Backend:
    """
    Повертає бекенд за назвою

    Args:
        name: "exact", "float" або вже готовий бекенд

    Returns:
        Екземпляр бекенду
    """
    if isinstance(name, Backend):
        return name
    backends = {EXACT.name: EXACT, FLOAT.name: FLOAT}
    try:
        return backends[name]
    except KeyError:
        raise ValueError(f"Невідомий бекенд: {name!r} (очікується exact або float)") from None
