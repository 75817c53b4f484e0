"""
Экспорт небольших графов достижимости в формат DOT.
Вершины подписаны конфигурациями и окрашены по значению консенсуса.
"""

import logging
import os
from typing import Optional

from jinja2 import Environment, FileSystemLoader

from core.configuration import is_consensus
from core.errors import ToolkitError
from core.protocol import Output, Protocol
from core.reachability import ReachabilityGraph
from utils.config import Config

logger = logging.getLogger(__name__)

TEMPLATES_DIR = os.path.join(os.path.dirname(__file__), "templates")

COLORS = {Output.TOP: "palegreen", Output.BOT: "lightpink", None: "white"}


def _environment() -> Environment:
    return Environment(loader=FileSystemLoader(TEMPLATES_DIR), trim_blocks=True, lstrip_blocks=True)


def _consensus(p: Protocol, c) -> Optional[Output]:
    for value in (Output.TOP, Output.BOT):
        if is_consensus(p, c, value):
            return value
    return None


def render_reachability_dot(p: Protocol, graph: ReachabilityGraph,
                            max_nodes: Optional[int] = None) -> str:
    """
    DOT-описание графа; вершины нижних компонент обведены двойной рамкой

    Raises:
        ToolkitError: граф больше max_nodes (по умолчанию DOT_MAX_NODES)
    """
    limit = max_nodes or Config().DOT_MAX_NODES
    if len(graph) > limit:
        raise ToolkitError(f"Граф из {len(graph)} конфигураций больше предела {limit} для DOT")

    ordered = sorted(graph.nodes, key=lambda c: c.sort_key())
    index = {c: i for i, c in enumerate(ordered)}
    bottom = {c for members in graph.bottom_components() for c in members}

    nodes = [
        {
            "index": index[c],
            "label": str(c).replace('"', '\\"'),
            "color": COLORS[_consensus(p, c)],
            "bottom": c in bottom,
            "root": c == graph.root,
        }
        for c in ordered
    ]
    edges = [
        {"source": index[c], "target": index[target]}
        for c in ordered for target in graph.successors(c)
    ]
    logger.debug(f"Экспорт DOT: {len(nodes)} вершин, {len(edges)} ребер")
    return _environment().get_template("reach_graph.dot.j2").render(nodes=nodes, edges=edges)
