import sys

import pytest

from hyperturan import Hypergraph, StructureKind, StructureWitness, VertexSet
from hyperturan.structures import Family


def hg(n, *edges, r=None):
    """Hypergraph from 1-based edge strings such as ``"123"`` or lists."""
    sets = [[int(c) - 1 for c in e] if isinstance(e, str) else [v - 1 for v in e] for e in edges]
    if r is None:
        r = len(sets[0]) if sets else 3
    return Hypergraph(n, r, sets)


def vs(n, *members):
    return VertexSet.of(n, [v - 1 for v in members])


def witness(n, family, edges, connectors):
    """Witness from 1-based edges and connectors."""
    kind = StructureKind(Family(family), len(edges))
    es = tuple(VertexSet.of(n, [int(c) - 1 for c in e] if isinstance(e, str) else [v - 1 for v in e])
               for e in edges)
    return StructureWitness(kind, es, tuple(v - 1 for v in connectors))


@pytest.fixture
def two_edges():
    return hg(6, "123", "345")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[num])
