# -*- coding: utf-8 -*-
"""
Завантаження та збереження екземплярів (JSON) і графів (текстовий список ребер)
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, ValidationError, model_validator

from models.errors import InputError
from models.instance import InteractionMatrix, OpinionInstance
from models.network import build_clique_matrix, build_regular_matrix, mix_matrices
from models.scalar import format_rational, parse_scalar
from reduction.gadgets import ReductionArtifact
from reduction.vertex_cover import VertexCoverInstance


def _rational(value: Any) -> Fraction:
    try:
        return parse_scalar(value)
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


Rational = Annotated[Fraction, BeforeValidator(_rational)]


class _Schema(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, extra="forbid")


class DenseInteraction(_Schema):
    type: Literal["dense"]
    rows: List[List[Rational]]


class MixInteraction(_Schema):
    """P = (1 - delta) C + delta R для d-регулярного графа на 1..clique_n"""
    type: Literal["mix"]
    delta: Rational
    clique_n: int = Field(ge=2)
    edges: List[Tuple[int, int]]
    degree: int = Field(ge=1)


class ReductionBlock(_Schema):
    kind: Literal["l0", "l1"]
    theta: Rational
    gap: Rational
    delta: Optional[Rational] = None
    delta_source: Optional[str] = None
    n: int
    d: int
    k: int


class InstanceSchema(_Schema):
    """Схема файлу екземпляра"""
    agents: int = Field(ge=1)
    innate: List[Rational]
    alpha_init: List[Rational]
    bounds: List[Tuple[Rational, Rational]]
    interaction: Union[DenseInteraction, MixInteraction] = Field(discriminator="type")
    label: str = ""
    reduction: Optional[ReductionBlock] = None

    @model_validator(mode="after")
    def check_lengths(self) -> 'InstanceSchema':
        for name in ("innate", "alpha_init", "bounds"):
            if len(getattr(self, name)) != self.agents:
                raise ValueError(f"{name} має {len(getattr(self, name))} елементів, очікується {self.agents}")
        if isinstance(self.interaction, DenseInteraction):
            rows = self.interaction.rows
            if len(rows) != self.agents or any(len(row) != self.agents for row in rows):
                raise ValueError(f"interaction.rows має бути матрицею {self.agents}x{self.agents}")
        elif self.interaction.clique_n + 1 != self.agents:
            raise ValueError(f"mix: clique_n + 1 = {self.interaction.clique_n + 1} ≠ agents = {self.agents}")
        return self


class AlphaSchema(_Schema):
    alpha: List[Rational]


def _format_errors(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<корінь>"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def _read_json(file_path: Union[str, Path]) -> Any:
    with open(file_path, 'r', encoding='utf-8') as f:
        try:
            return json.load(f, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise InputError(f"{file_path}: рядок {exc.lineno}, стовпець {exc.colno}: {exc.msg}") from exc


def _interaction(schema: InstanceSchema) -> InteractionMatrix:
    block = schema.interaction
    if isinstance(block, DenseInteraction):
        return InteractionMatrix(np.array(block.rows, dtype=object))
    return mix_matrices(build_clique_matrix(block.clique_n),
                        build_regular_matrix(block.edges, block.clique_n, block.degree), block.delta)


def instance_from_dict(data: Any, source: str = "<dict>") -> OpinionInstance:
    """
    Будує OpinionInstance зі словника у форматі файлу екземпляра

    Raises:
        InputError: Порушення схеми (з шляхом до поля)
        ConstructionError: Некоректний граф у блоці mix
    """
    try:
        schema = InstanceSchema.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"{source}: {_format_errors(exc)}") from exc
    return OpinionInstance(
        innate=np.array(schema.innate, dtype=object),
        bounds=np.array(schema.bounds, dtype=object),
        alpha_init=np.array(schema.alpha_init, dtype=object),
        interaction=_interaction(schema),
        label=schema.label,
    )


def load_instance(file_path: Union[str, Path]) -> OpinionInstance:
    """
    Завантажує екземпляр з JSON файлу

    Формат: agents, innate, alpha_init, bounds, interaction
    ({"type": "dense", "rows": ...} або {"type": "mix", ...}).
    Числа приймаються як "p/q", цілі або десяткові записи (читаються точно).

    Args:
        file_path: Шлях до JSON файлу

    Returns:
        OpinionInstance з точними елементами
    """
    return instance_from_dict(_read_json(file_path), str(file_path))


def load_alpha(file_path: Union[str, Path], instance: Optional[OpinionInstance] = None) -> np.ndarray:
    """
    Завантажує вектор alpha: JSON-масив або об'єкт {"alpha": [...]}

    Args:
        file_path: Шлях до JSON файлу
        instance: Якщо задано, перевіряються довжина та межі l_i <= alpha_i <= u_i

    Returns:
        object-масив дробів
    """
    data = _read_json(file_path)
    if isinstance(data, list):
        data = {"alpha": data}
    try:
        schema = AlphaSchema.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"{file_path}: {_format_errors(exc)}") from exc
    if instance is not None and len(schema.alpha) != instance.n_agents:
        raise InputError(f"{file_path}: alpha має {len(schema.alpha)} елементів, очікується {instance.n_agents}")
    if instance is not None:
        for i, (value, low, high) in enumerate(zip(schema.alpha, instance.lower, instance.upper)):
            if not low <= value <= high:
                raise InputError(f"{file_path}: alpha[{i}] = {value} поза межами [{low}, {high}]")
    return np.array(schema.alpha, dtype=object)


def _text(value) -> str:
    return format_rational(value)


def instance_to_dict(instance: OpinionInstance) -> Dict[str, Any]:
    """Словник у форматі файлу екземпляра (щільна матриця, числа як "p/q")"""
    return {
        "agents": instance.n_agents,
        "label": instance.label,
        "innate": [_text(v) for v in instance.innate],
        "alpha_init": [_text(v) for v in instance.alpha_init],
        "bounds": [[_text(low), _text(high)] for low, high in instance.bounds],
        "interaction": {
            "type": "dense",
            "rows": [[_text(v) for v in row] for row in instance.interaction.entries],
        },
    }


def artifact_to_dict(artifact: ReductionArtifact) -> Dict[str, Any]:
    """
    Експорт гаджета: файл екземпляра плюс блок reduction

    L1-гаджет записується компактно як {"type": "mix", ...}.
    """
    data = instance_to_dict(artifact.instance)
    graph = artifact.graph
    if artifact.delta is not None:
        data["interaction"] = {
            "type": "mix",
            "delta": _text(artifact.delta),
            "clique_n": graph.n,
            "edges": [list(edge) for edge in graph.edges],
            "degree": graph.d,
        }
    data["reduction"] = {
        "kind": artifact.kind.value,
        "theta": _text(artifact.theta),
        "gap": _text(artifact.gap),
        "delta": _text(artifact.delta) if artifact.delta is not None else None,
        "delta_source": artifact.delta_source,
        "n": graph.n,
        "d": graph.d,
        "k": graph.k,
    }
    return data


def save_json(data: Dict[str, Any], file_path: Union[str, Path]) -> None:
    with open(file_path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, ensure_ascii=False)
        f.write("\n")


def save_instance(instance: OpinionInstance, file_path: Union[str, Path]) -> None:
    save_json(instance_to_dict(instance), file_path)


def parse_graph(text: str, source: str = "<text>") -> VertexCoverInstance:
    """
    Розбирає граф у форматі "n d k" + рядки "u v"

    Порожні рядки та все після '#' ігноруються.

    Raises:
        InputError: Некоректний рядок (з номером рядка)
        ConstructionError: Граф не є простим d-регулярним
    """
    header: Optional[Tuple[int, int, int]] = None
    edges: List[Tuple[int, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        expected = 2 if header is not None else 3
        try:
            values = [int(field) for field in fields]
        except ValueError:
            raise InputError(f"{source}: рядок {number}: очікуються цілі числа, отримано {line!r}") from None
        if len(values) != expected:
            what = "ребро 'u v'" if header is not None else "заголовок 'n d k'"
            raise InputError(f"{source}: рядок {number}: очікується {what}, отримано {line!r}")
        if header is None:
            header = (values[0], values[1], values[2])
        else:
            edges.append((values[0], values[1]))
    if header is None:
        raise InputError(f"{source}: відсутній заголовок 'n d k'")
    n, d, k = header
    return VertexCoverInstance(n=n, edges=tuple(edges), d=d, k=k)


def load_graph(file_path: Union[str, Path]) -> VertexCoverInstance:
    """Завантажує граф з текстового файлу (див. parse_graph)"""
    with open(file_path, 'r', encoding='utf-8') as f:
        return parse_graph(f.read(), str(file_path))
