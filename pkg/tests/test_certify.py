import json
import math
import random

from .utils import *
import pytest

import networkx as nx

from tdlccert import groups
from tdlccert.certify import *
from tdlccert.complex import (Complex2D, ComplexError, DirectedEdgeOrbits, build_coset_complex,
        extend_symmetry, from_facets, octahedron, projective_plane, swap_witness)
from tdlccert.perm import PermGroup, conjugacy_classes_of, nonabelian, subgroups_of_order
from tdlccert.raag import (Raag, conjugation_formula_check, edge_generator_from_conjugates,
        random_kernel_word)


def all_true():
    return {name: True for name in PREMISES}


class TestConclusions:
    def test_all_premises_hold(self):
        result = derive_conclusions(all_true())
        assert [c.name for c in result] == ['npc', 'not_simply_connected', 'bb_fp2_not_fp']
        assert all(c.holds for c in result)

    def test_failure_cascades(self):
        premises = all_true()
        premises['link_girth_at_least_6'] = False
        assert [c.holds for c in derive_conclusions(premises)] == [False, False, False]

    def test_unevaluated_premise_does_not_hold(self):
        premises = all_true()
        premises['h1_trivial'] = None
        assert [c.holds for c in derive_conclusions(premises)] == [False, False, False]

    def test_unevaluated_group_premises(self):
        premises = all_true()
        for name in ('directed_edge_transitive', 'edge_swap', 'edge_swap_or_transitive'):
            premises[name] = None
        cert = Certificate({'vertices': 1, 'edges': 0, 'triangles': 0}, premises, {}, {})
        assert not any(c.holds for c in cert.conclusions)
        assert not cert.passed

    def test_citations_attached(self):
        for c in derive_conclusions(all_true()):
            assert c.citations
            assert c.premises


class TestGirth:
    def test_cycle(self):
        assert girth(nx.cycle_graph(5)) == 5

    def test_forest(self):
        assert girth(nx.path_graph(4)) == math.inf
        assert girth_value(math.inf) == 'inf'
        assert girth_value(6) == 6

    def test_octahedron_links(self):
        c = octahedron()
        assert link_girths(c) == [4] * 6
        assert min_link_girth(c) == 4

    def test_link_girths_with_workers(self):
        c = projective_plane()
        assert link_girths(c, workers=2) == link_girths(c) == [3] * 6

    def test_vertex_link(self):
        link = vertex_link(octahedron(), 0)
        assert nx.is_isomorphic(link, nx.cycle_graph(4))
        with pytest.raises(ComplexError):
            vertex_link(octahedron(), 6)

    def test_empty_complex(self):
        assert min_link_girth(from_facets([])) == math.inf


class TestCertify:
    def test_octahedron_fails_on_link_girth(self):
        cert = certify(octahedron())
        assert cert.premises['connected'] is True
        assert cert.premises['flag'] is True
        assert cert.premises['every_edge_in_triangle'] is True
        assert cert.premises['directed_edge_transitive'] is True
        assert cert.premises['edge_swap'] is True
        assert cert.premises['link_girth_at_least_6'] is False
        assert cert.premises['h1_trivial'] is True
        assert cert.measurements['min_link_girth'] == 4
        assert cert.measurements['triangle_orbits'] == 1
        assert cert.measurements['h2'] == {'betti': 1, 'torsion': []}
        assert not cert.passed
        assert not cert.conclusion('npc')
        assert not cert.conclusion('not_simply_connected')
        assert 'edge_swap_example' in cert.witnesses

    def test_without_group(self):
        cert = certify(projective_plane())
        for name in ('directed_edge_transitive', 'edge_swap', 'edge_swap_or_transitive'):
            assert cert.premises[name] is None
        assert cert.measurements['triangle_orbits'] is None
        assert cert.measurements['h1'] == {'betti': 0, 'torsion': [2]}
        assert cert.premises['h1_trivial'] is False
        assert not cert.passed

    def test_without_group_derives_nothing(self):
        # Every evaluated premise holds for a lone triangle
        cert = certify(from_facets([[0, 1, 2]]))
        evaluated = {name: v for name, v in cert.premises.items() if v is not None}
        assert set(evaluated) == set(PREMISES) - {
                'directed_edge_transitive', 'edge_swap', 'edge_swap_or_transitive'}
        assert all(evaluated.values())
        assert [c.holds for c in cert.conclusions] == [False, False, False]
        assert not cert.passed

    def test_reloaded_complex_certifies_alike(self):
        S4 = groups.symmetric(4)
        subgroups = [PermGroup([P(t, 4)]) for t in ('(1 2)', '(2 3)', '(3 4)')]
        c = extend_symmetry(build_coset_complex(S4, subgroups))
        again = Complex2D.from_dict(json.loads(json.dumps(c.to_dict())))
        assert again.action is not None
        first, second = certify(c), certify(again)
        assert second.premises == first.premises
        assert second.measurements == first.measurements
        assert second.premises['directed_edge_transitive'] is not None

    def test_flag_witness(self):
        hollow = from_facets([[0, 1], [1, 2], [0, 2]])
        cert = certify(hollow)
        assert cert.premises['flag'] is False
        assert sorted(cert.witnesses['flag']) == [0, 1, 2]
        assert cert.premises['every_edge_in_triangle'] is False

    def test_expected_triangle_orbits(self):
        cert = certify(octahedron(), expected_triangle_orbits=6)
        assert cert.warnings == ['1 triangle orbits, expected 6']
        assert certify(octahedron(), expected_triangle_orbits=1).warnings == []

    def test_progress(self):
        seen = []
        certify(octahedron(), progress=lambda name, value: seen.append(name))
        assert seen == [p for p in PREMISES if p != 'bounded']

    def test_to_dict(self):
        cert = certify(projective_plane(), environment={'tool': 'tdlccert'})
        data = cert.to_dict()
        assert data['schema'] == 'tdlccert/certificate/1'
        assert data['environment'] == {'tool': 'tdlccert'}
        assert list(data['premises']) == list(PREMISES)
        assert data['premises']['edge_swap'] == {'status': 'not evaluated', 'value': None}
        assert data['premises']['flag'] == {'status': 'checked', 'value': True}
        assert [c['status'] for c in data['conclusions']] == ['derived'] * 3
        assert data['passed'] is False

    def test_report(self):
        text = certify(octahedron()).report()
        assert 'link_girth_at_least_6: False' in text
        assert text.endswith('passed: False\n')


class TestTriples:
    def test_candidate_triples_in_s3(self):
        S3 = groups.symmetric(3)
        classes = conjugacy_classes_of(S3, subgroups_of_order(S3, 2))
        triples = list(candidate_triples(S3, classes))
        assert len(triples) == 1
        keys = {H.element_set() for H in triples[0]}
        assert len(keys) == 3
        assert generates(S3, triples[0])

    def test_generates(self):
        S4 = groups.symmetric(4)
        assert generates(S4, [PermGroup([P(t, 4)]) for t in ('(1 2)', '(2 3)', '(3 4)')])
        assert not generates(S4, [PermGroup([P(t, 4)]) for t in ('(1 2)', '(3 4)', '(1 2)(3 4)')])

    def test_links_pass(self):
        S3 = groups.symmetric(3)
        transpositions = [PermGroup([P(t, 3)]) for t in ('(1 2)', '(1 3)', '(2 3)')]
        assert links_pass(S3, transpositions)
        mixed = [PermGroup([P('(1 2 3)')]), PermGroup([P('(1 2)', 3)]), PermGroup([P('(1 3)', 3)])]
        assert not links_pass(S3, mixed)



# The search and certificate below take more than 25 minutes in pure Python
@pytest.fixture(scope='module')
def selected():
    q = groups.direct_product(groups.psl2(13), groups.cyclic(3), groups.cyclic(3))
    found = [H for H in subgroups_of_order(q, 39) if nonabelian(H)]
    search = select_triple(q, conjugacy_classes_of(q, found))
    assert search.triple is not None
    return search.complex


@pytest.mark.slow
class TestSelectedComplex:
    def test_certificate(self, selected):
        assert selected.n_vertices == 756
        cert = certify(selected, expected_triangle_orbits=6)
        assert cert.measurements['triangle_orbits'] == 6
        assert cert.warnings == []
        assert cert.passed
        assert cert.conclusion('bb_fp2_not_fp')

    def test_without_action(self, selected):
        cert = certify(selected.without_action())
        assert cert.premises['edge_swap_or_transitive'] is None
        assert cert.premises['link_girth_at_least_6'] is True
        assert not any(c.holds for c in cert.conclusions)

    def test_conjugation_formula(self, selected):
        raag = Raag(selected.graph())
        autos = selected.action.generators
        rng = random.Random(11)
        for _ in range(1000):
            assert conjugation_formula_check(random_kernel_word(raag, 8, rng), autos)

    def test_edge_generators(self, selected):
        raag = Raag(selected.graph())
        table = DirectedEdgeOrbits(selected, selected.symmetry_group())
        rng = random.Random(13)
        for x, y in rng.sample(selected.darts(), 300):
            z, q = swap_witness(selected, x, y, table=table)
            assert len(edge_generator_from_conjugates(raag, x, y, z, q).steps) == 2
