import networkx as nx

from classical import INTEGER_CHECKS
from displays import DISPLAYS
from proof_graph import PROOF_EDGES, affected_by, build_graph, execution_order


class TestGraph:

    def test_acyclic(self):
        assert nx.is_directed_acyclic_graph(build_graph())

    def test_every_node_is_registered(self):
        registered = set(DISPLAYS) | set(INTEGER_CHECKS)
        nodes = {node for edge in PROOF_EDGES for node in edge}
        assert nodes <= registered

    def test_extra_ids_become_nodes(self):
        assert 'conj7.7' in build_graph(['conj7.7'])


class TestExecutionOrder:

    def test_prerequisites_first(self):
        assert execution_order(['cor2.2', 'thm2.1', 'lemma3.1']) == ['lemma3.1', 'thm2.1', 'cor2.2']

    def test_only_requested_ids(self):
        order = execution_order(['int1.2', 'int1.3'])
        assert order == ['int1.3', 'int1.2']

    def test_ids_outside_the_graph(self):
        assert set(execution_order(['conj7.7', 'thm2.6'])) == {'conj7.7', 'thm2.6'}


class TestAffected:

    def test_downstream(self):
        assert affected_by(['thm2.1']) == {'thm2.1': ['cor2.2', 'int1.2', 'int1.3', 'int2.1']}

    def test_suffixed_rows(self):
        assert affected_by(['cor2.2/q->1']) == {'cor2.2/q->1': ['int1.2', 'int1.3']}
        assert affected_by(['cor2.8@printed'])['cor2.8@printed'] == [
            'conj7.5', 'eq1.14', 'eq1.15', 'eq1.16', 'int1.10', 'int1.11', 'int1.9',
        ]

    def test_restricted(self):
        assert affected_by(['thm2.1'], ids=['cor2.2']) == {'thm2.1': ['cor2.2']}

    def test_leaves_and_unknown_ids(self):
        assert affected_by(['int1.2', 'conj7.7']) == {}
