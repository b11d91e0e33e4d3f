"""Иерархия исключений crlab.

Результаты проверок (нарушение тождества Якоби, провал оракула, вердикт
"inconclusive") исключениями не являются и возвращаются как содержимое
отчетов. Исключения сигнализируют только о некорректном входе или о
невозможности выполнить вычисление.
"""


class CrlabError(Exception):
    """Базовый класс всех ошибок crlab."""


class InputError(CrlabError, ValueError):
    """Некорректные входные данные: формат скаляра, смешение полей, размерности, неизвестные имена."""


class NotSplitError(CrlabError):
    """Характеристический многочлен не раскладывается над ℚ(i) или оператор не диагонализуем."""


class FiltrationError(CrlabError):
    """Фильтрация не согласована со скобкой, gr(·) построить нельзя."""


class CalibrationError(CrlabError):
    """Система привязки выделенных элементов не имеет единственного решения."""


class DegenerateBasePoint(CrlabError):
    """Базовая точка трубки дает q + σq коразмерности, отличной от 1."""
