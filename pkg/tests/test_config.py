# coding=utf-8
from .utils import *
from unittest import mock
import pytest

import os

import tdlccert.config
from tdlccert.config import ConfigError, JobConfig
from tdlccert.certify import PREMISES


def job(**data):
    return JobConfig(**data)


class TestGroupSchema:
    def test_simple(self):
        node = tdlccert.config._group_node({'psl2': 13}, 'group')
        assert node == {'psl2': 13}
        assert tdlccert.config.make_group(node).order() == 1092

    def test_generators(self):
        node = tdlccert.config._group_node({'generators': '(1 2 3)'}, 'group')
        assert node == {'generators': ['(1 2 3)']}
        assert tdlccert.config.make_group(node).order() == 3

    def test_generators_with_degree(self):
        node = {'generators': ['(1 2)'], 'degree': 4}
        assert tdlccert.config.make_group(tdlccert.config._group_node(node, 'g')).degree == 4

    def test_direct_product(self):
        node = tdlccert.config._group_node(
                {'direct_product': [{'psl2': 13}, {'cyclic': 3}, {'cyclic': 3}]}, 'group')
        assert tdlccert.config.describe_group(node) == 'psl2(13) x cyclic(3) x cyclic(3)'
        G = tdlccert.config.make_group(node)
        assert G.order() == 9828
        assert G.degree == 20

    def test_affine(self):
        node = tdlccert.config._group_node({'affine': {'p': 5, 'k': 2}}, 'group')
        assert tdlccert.config.describe_group(node) == 'affine(5, 2)'

    def test_regular(self):
        node = tdlccert.config._group_node({'regular': {'symmetric': 3}}, 'group')
        assert tdlccert.config.describe_group(node) == 'regular(symmetric(3))'
        G = tdlccert.config.make_group(node)
        assert G.degree == 6
        assert G.order() == 6

    def test_two_constructors(self):
        with pytest.raises(ConfigError):
            tdlccert.config._group_node({'cyclic': 3, 'symmetric': 3}, 'group')

    def test_unknown_constructor(self):
        with pytest.raises(ConfigError) as e:
            tdlccert.config._group_node({'dihedral': 4}, 'group')
        assert 'Unrecognized node: dihedral' in str(e.value)

    def test_bad_argument(self):
        with pytest.raises(ConfigError):
            tdlccert.config._group_node({'cyclic': 'three'}, 'group')
        with pytest.raises(ConfigError):
            tdlccert.config._group_node({'cyclic': 0}, 'group')
        with pytest.raises(ConfigError):
            tdlccert.config._group_node({'cyclic': True}, 'group')

    def test_construction_error(self):
        node = tdlccert.config._group_node({'psl2': 12}, 'group')
        with pytest.raises(ConfigError):
            tdlccert.config.make_group(node)

    def test_cycle_parse_error(self):
        node = tdlccert.config._group_node({'generators': ['(1 2']}, 'group')
        with pytest.raises(ConfigError):
            tdlccert.config.make_group(node)


class TestWords:
    def test_parse_word(self):
        G = tdlccert.config.make_group({'generators': ['(1 2)', '(1 2 3)']})
        a, b = G.generators
        assert tdlccert.config.parse_word('g1 g2^-1 g2^2', G) == a * b
        assert tdlccert.config.parse_word('', G).is_identity()

    def test_bad_token(self):
        G = tdlccert.config.make_group({'cyclic': 3})
        with pytest.raises(ConfigError):
            tdlccert.config.parse_word('h1', G)
        with pytest.raises(ConfigError):
            tdlccert.config.parse_word('g2', G)


class TestJobSchema:
    def test_empty(self):
        config = job()
        assert config.group is None
        assert config.complex is None
        assert config.checks == list(PREMISES)
        assert config.expect == {}
        assert config.output == {'dir': '.', 'name': 'job'}

    def test_unexpected_node(self):
        with pytest.raises(ConfigError) as e:
            job(image='busybox')
        assert 'Job: Unrecognized node: image' in str(e.value)

    def test_search(self):
        config = job(group={'symmetric': 4}, subgroups={'search': {'order': 3}})
        assert config.subgroups == {'search': {'order': 3, 'nonabelian': False, 'count': 3}}
        assert config.complex == {'source': 'coset', 'symmetry': 'extend'}

    def test_search_count(self):
        with pytest.raises(ConfigError):
            job(group={'symmetric': 4}, subgroups={'search': {'order': 3, 'count': 4}})

    def test_search_nonabelian_boolean(self):
        with pytest.raises(ConfigError):
            job(group={'symmetric': 4}, subgroups={'search': {'order': 6, 'nonabelian': 'yes'}})

    def test_subgroups_need_group(self):
        with pytest.raises(ConfigError):
            job(subgroups=[{'generators': ['(1 2)']}])

    def test_explicit_subgroups(self):
        config = job(group={'symmetric': 4},
                subgroups=[{'generators': ['(1 2)']}, {'words': ['g1']}, {'generators': '(3 4)'}])
        G = tdlccert.config.make_group(config.group)
        found = tdlccert.config.make_subgroups(G, config.subgroups)
        assert [H.order() for H in found] == [2, 2, 2]

    def test_subgroup_outside_group(self):
        config = job(group={'alternating': 4}, subgroups=[{'generators': ['(1 2)']}])
        G = tdlccert.config.make_group(config.group)
        with pytest.raises(ConfigError):
            tdlccert.config.make_subgroups(G, config.subgroups)

    def test_subgroup_degree(self):
        config = job(group={'symmetric': 3}, subgroups=[{'generators': ['(1 5)']}])
        G = tdlccert.config.make_group(config.group)
        with pytest.raises(ConfigError):
            tdlccert.config.make_subgroups(G, config.subgroups)

    def test_subgroup_entry_with_both_keys(self):
        with pytest.raises(ConfigError):
            job(group={'symmetric': 3}, subgroups=[{'generators': ['(1 2)'], 'words': ['g1']}])

    def test_facets(self):
        config = job(complex={'source': 'facets', 'facets': [[1, 2], [2, 3]], 'action': '(1 3)'})
        assert config.complex == {'source': 'facets', 'facets': [[1, 2], [2, 3]],
                'action': ['(1 3)'], 'symmetry': 'action'}

    def test_facets_one_based(self):
        with pytest.raises(ConfigError):
            job(complex={'source': 'facets', 'facets': [[0, 1]]})

    def test_cross_polytope(self):
        config = job(complex={'source': 'cross_polytope'})
        assert config.complex == {'source': 'cross_polytope', 'dimension': 3, 'symmetry': 'action'}

    def test_coset_needs_subgroups(self):
        with pytest.raises(ConfigError):
            job(complex={'source': 'coset'})

    def test_unknown_source(self):
        with pytest.raises(ConfigError):
            job(complex={'source': 'sphere'})

    def test_symmetry_mode(self):
        with pytest.raises(ConfigError):
            job(complex={'source': 'cross_polytope', 'symmetry': 'guess'})

    def test_checks(self):
        assert job(checks=['flag', 'h1_trivial']).checks == ['flag', 'h1_trivial']
        with pytest.raises(ConfigError) as e:
            job(checks=['flag', 'hyperbolic'])
        assert 'Unrecognized check: hyperbolic' in str(e.value)

    def test_raag_defaults(self):
        config = job(raag=None)
        assert config.raag == {'graph': 'complex', 'samples': 200, 'length': 8,
                'edges': 1000, 'seed': 0}

    def test_raag_graph(self):
        config = job(raag={'graph': {'vertices': 3, 'edges': [[1, 2], [2, 3]]}})
        assert config.raag['graph'] == {'vertices': 3, 'edges': [[1, 2], [2, 3]]}
        with pytest.raises(ConfigError):
            job(raag={'graph': {'vertices': 3, 'edges': [[1, 4]]}})
        with pytest.raises(ConfigError):
            job(raag={'graph': 'petersen'})

    def test_tree_defaults(self):
        config = job(tree={'x': 2, 'y': 3})
        assert config.tree == {
            'x': 2,
            'y': 3,
            'radius': 2,
            'root_side': 'X',
            'local_groups': {'M': {'symmetric': 2}, 'N': {'symmetric': 3}},
            'fix_root': True,
            'radii': [2, 3],
        }

    def test_tree_needs_degrees(self):
        with pytest.raises(ConfigError):
            job(tree={'x': 2})
        with pytest.raises(ConfigError):
            job(tree={'x': 1, 'y': 3})

    def test_tree_bad_root_side(self):
        with pytest.raises(ConfigError):
            job(tree={'x': 2, 'y': 3, 'root_side': 'Z'})

    def test_output(self):
        assert job(output={'name': 'q'}).output == {'dir': '.', 'name': 'q'}
        with pytest.raises(ConfigError):
            job(output={'name': os.path.join('a', 'b')})
        with pytest.raises(ConfigError):
            job(output={'dir': ''})

    def test_expect(self):
        assert job(expect={'triangle_orbits': 6}).expect == {'triangle_orbits': 6}
        with pytest.raises(ConfigError):
            job(expect={'orbits': 6})

    def test_to_dict_round_trip(self):
        config = job(group={'symmetric': 4}, subgroups={'search': {'order': 3}},
                tree={'x': 2, 'y': 3})
        assert JobConfig(**config.to_dict()) == config


@pytest.mark.usefixtures("in_tmp_path")
class TestLoadConfig:
    def _invalid_config(self, match=None):
        with pytest.raises(ConfigError) as e:
            tdlccert.config.load_config('job.yml')
        if match:
            assert match in str(e.value)

    def test_load_config_missing(self):
        '''load_config raises ConfigNotFoundError for a missing file'''
        with pytest.raises(tdlccert.config.ConfigNotFoundError):
            tdlccert.config.load_config('job.yml')

    def test_load_config_minimal(self, in_tmp_path):
        '''load_config loads a minimal job'''
        write_file('job.yml', 'complex:\n  source: cross_polytope\n')
        config = tdlccert.config.load_config('job.yml')
        assert config.complex['dimension'] == 3
        assert config.output['name'] == 'job'
        assert_paths_equal(config.root, in_tmp_path)
        assert_paths_equal(config.resolve('x.json'), in_tmp_path / 'x.json')

    def test_load_config_empty(self):
        write_file('job.yml', '')
        assert tdlccert.config.load_config('job.yml').group is None

    def test_load_config_not_mapping(self):
        write_file('job.yml', '- 1\n- 2\n')
        self._invalid_config('top level must be a mapping')

    def test_load_config_bad_yaml(self):
        write_file('job.yml', 'group: [\n')
        self._invalid_config()

    def test_load_unexpected_node(self):
        write_file('job.yml', 'group:\n  cyclic: 3\nimage: busybox\n')
        self._invalid_config('Unrecognized node')

    def test_load_config_safe(self):
        '''load_config refuses arbitrary Python objects'''
        write_file('job.yml', 'group: !!python/object/apply:os.system ["true"]\n')
        self._invalid_config()

    def test_group_from_yaml(self):
        '''load_config loads a group using !from_yaml'''
        write_file('groups.yml', 'q:\n  direct_product:\n    - psl2: 13\n    - cyclic: 3\n')
        write_file('job.yml', 'group: !from_yaml groups.yml q\n')
        config = tdlccert.config.load_config('job.yml')
        assert config.group == {'direct_product': [{'psl2': 13}, {'cyclic': 3}]}

    def test_from_yaml_nested_keys_with_escaped_characters(self):
        write_file('groups.yml', 'psl.2:\n  small:\n    psl2: 5\n')
        write_file('job.yml', 'group: !from_yaml groups.yml "psl\\.2.small"\n')
        assert tdlccert.config.load_config('job.yml').group == {'psl2': 5}

    def test_from_yaml_cached_file(self):
        '''load_config opens a !from_yaml file only once'''
        write_file('groups.yml', 'g: {symmetric: 4}\nm: {symmetric: 2}\nn: {symmetric: 3}\n')
        write_file('job.yml', '\n'.join([
            'group: !from_yaml groups.yml g',
            'tree:',
            '  x: 2',
            '  y: 3',
            '  local_groups:',
            '    M: !from_yaml groups.yml m',
            '    N: !from_yaml groups.yml n',
        ]) + '\n')

        with mock.patch('builtins.open', side_effect=open) as m:
            tdlccert.config.load_config('job.yml')

        assert m.mock_calls == [
            mock.call('job.yml', 'r'),
            mock.call('groups.yml', 'r'),
        ]

    def test_from_yaml_missing_key(self):
        write_file('groups.yml', 'q:\n  cyclic: 3\n')
        write_file('job.yml', 'group: !from_yaml groups.yml q.NONEXISTENT\n')
        self._invalid_config()

    def test_from_yaml_missing_file(self):
        write_file('job.yml', 'group: !from_yaml NONEXISTENT.yml q\n')
        self._invalid_config()

    def test_from_yaml_missing_arg(self):
        write_file('groups.yml', 'q:\n  cyclic: 3\n')
        write_file('job.yml', 'group: !from_yaml groups.yml\n')
        self._invalid_config()

    def test_output_name_from_file(self):
        write_file('psl2-13.yml', 'complex:\n  source: cross_polytope\n')
        assert tdlccert.config.load_config('psl2-13.yml').output['name'] == 'psl2-13'

    def test_dump_config(self):
        write_file('job.yml', 'tree:\n  x: 2\n  y: 3\n')
        config = tdlccert.config.load_config('job.yml')
        write_file('again.yml', tdlccert.config.dump_config(config))
        again = tdlccert.config.load_config('again.yml')
        assert again.tree == config.tree
        assert again.output == {'dir': '.', 'name': 'job'}
