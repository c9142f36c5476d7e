"""
Dependency graph between statements: an edge a -> b means a is used in the
proof of b.
"""

import logging
from typing import Iterable

import networkx as nx

logger = logging.getLogger(__name__)

PROOF_EDGES = [
    # cubic sums
    ("andrews-watson", "lemma3.2"),
    ("lemma3.1", "thm2.1"),
    ("lemma3.2", "thm2.1"),
    ("thm2.1", "cor2.2"),
    ("thm2.1", "int2.1"),
    ("cor2.2", "int1.3"),
    ("int2.4", "int1.3"),
    ("int1.3", "int1.2"),
    ("lemma3.1", "remark-cor2.2"),
    # the Clausen-type product
    ("lemma4.1a", "lemma4.2a"),
    ("lemma4.1b", "lemma4.2a"),
    ("eq4.3", "lemma4.2a"),
    ("lemma4.2a", "lemma4.2b"),
    ("qbinom-thm", "eq4.14"),
    ("lemma4.2b", "lemma4.3"),
    ("eq4.14", "lemma4.3"),
    ("qdixon", "lemma4.3"),
    ("eq4.3", "lemma4.4"),
    ("lemma4.3", "thm2.5"),
    ("lemma4.4", "thm2.5"),
    ("qchu-4.19", "thm2.5"),
    ("qchu-4.21", "thm2.5"),
    # sums modulo [p]^2 with arbitrary m
    ("thm2.5", "thm2.3-2.5"),
    ("thm2.5", "thm2.3-2.6"),
    ("thm2.5", "thm2.3-2.7"),
    ("lemma3.1", "thm2.3-2.5"),
    ("lemma3.1", "thm2.3-2.6"),
    ("lemma5.1", "thm2.3-2.7"),
    ("thm2.3-2.5", "cor2.4"),
    ("eq2.8", "cor2.4"),
    ("thm2.3-2.6", "int1.7"),
    ("cor2.4", "int1.4"),
    ("cor2.4", "int1.5"),
    ("cor2.4", "int1.6"),
    # balanced sums
    ("eq6.5", "thm2.7-2.11"),
    ("eq6.6", "thm2.7-2.11"),
    ("lemma6.1a", "thm2.7-2.11"),
    ("thm2.7-2.11", "thm2.7-2.12"),
    ("thm2.7-2.12", "cor2.8"),
    ("eq2.8", "cor2.8"),
    ("cor2.8", "eq1.14"),
    ("cor2.8", "eq1.15"),
    ("cor2.8", "eq1.16"),
    ("eq1.14", "int1.9"),
    ("eq1.15", "int1.10"),
    ("eq1.16", "int1.11"),
    ("lemma6.1a", "eq6.3"),
    ("lemma6.1b", "eq6.4"),
    ("lemma6.1b", "thm2.6"),
    ("eq6.3", "thm2.6"),
    ("eq6.4", "thm2.6"),
    ("thm2.6", "eq1.13"),
    ("eq1.13", "int1.8"),
    ("thm2.6", "int1.12"),
    # conjectures resting on proven cases
    ("thm2.3-2.6", "conj7.3"),
    ("cor2.4", "conj7.4"),
    ("cor2.8", "conj7.5"),
    ("thm2.7-2.12", "conj7.6"),
    ("thm2.5", "conj7.2"),
]


def build_graph(ids: Iterable[str] = ()) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(ids)
    graph.add_edges_from(PROOF_EDGES)
    if not nx.is_directed_acyclic_graph(graph):
        raise ValueError("proof dependencies contain a cycle")
    return graph


def execution_order(ids: Iterable[str]) -> list[str]:
    """Ids in a topological order of the proof graph, ties broken by name"""
    ids = list(ids)
    wanted = set(ids)
    graph = build_graph(ids)
    return [node for node in nx.lexicographical_topological_sort(graph) if node in wanted]


def affected_by(failed: Iterable[str], ids: Iterable[str] = ()) -> dict[str, list[str]]:
    """
    Statements downstream of each failed id

    Args:
        failed: ids with at least one failing row
        ids: restrict the answer to these ids (all when empty)

    Returns:
        dict: failed id -> sorted list of dependent ids
    """
    graph = build_graph()
    keep = set(ids)
    out = {}
    for check_id in sorted(set(failed)):
        base = check_id.split("/")[0].split("@")[0]
        if base not in graph:
            continue
        downstream = sorted(nx.descendants(graph, base))
        if keep:
            downstream = [d for d in downstream if d in keep]
        if downstream:
            out[check_id] = downstream
    logger.debug(f"Downstream of failures: {out}")
    return out
