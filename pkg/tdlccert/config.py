import os
import re
import shlex

import yaml

from . import groups
from .certify import PREMISES
from .perm import GroupError, Permutation, PermGroup
from .utils import CycleParseError


class ConfigError(Exception):
    pass


class ConfigNotFoundError(ConfigError):
    pass


# http://stackoverflow.com/a/9577670
class Loader(yaml.SafeLoader):
    def __init__(self, stream):
        self._root = os.path.split(stream.name)[0]
        self._cache = dict()
        super().__init__(stream)

    def from_yaml(self, node):
        '''
        Implements a !from_yaml constructor with the following syntax:
            !from_yaml filename key

        Arguments:
            filename:   Filename of external YAML document from which to load,
                        relative to the current YAML file.
            key:        Key from external YAML document to return,
                        using a dot-separated syntax for nested keys.

        Examples:
            !from_yaml groups.yml q
            !from_yaml groups.yml pipeline.subgroups
            !from_yaml "my groups.yml" "psl\\.2.generators"
        '''
        parts = shlex.split(self.construct_scalar(node))
        if len(parts) != 2:
            raise yaml.YAMLError('Two arguments expected to !from_yaml')
        filename, key = parts

        # path is relative to the current YAML document
        path = os.path.join(self._root, filename)

        doc = self._cache.get(path)
        if not doc:
            with open(path, 'r') as f:
                doc = yaml.load(f, self.__class__)
                self._cache[path] = doc

        try:
            cur = doc
            # Split on '.' not preceded by a backslash
            for k in re.split(r'(?<!\\)\.', key):
                cur = cur[k.replace('\\.', '.')]
        except (KeyError, TypeError):
            raise yaml.YAMLError('Key "{}" not found in {}'.format(key, filename))
        return cur

Loader.add_constructor('!from_yaml', Loader.from_yaml)


def _check_keys(node, allowed, name):
    if not isinstance(node, dict):
        raise ConfigError("'{}' must be a mapping, not {}".format(name, type(node).__name__))
    extra = [n for n in node if n not in allowed]
    if extra:
        raise ConfigError('{}: Unrecognized node{}: {}'.format(name,
                's' if len(extra) > 1 else '', ', '.join(map(str, extra))))


def _int(node, name, minimum=None):
    if isinstance(node, bool) or not isinstance(node, int):
        raise ConfigError("'{}' must be an integer, not {!r}".format(name, node))
    if minimum is not None and node < minimum:
        raise ConfigError("'{}' must be at least {}, not {}".format(name, minimum, node))
    return node


def _str_list(node, name):
    if isinstance(node, str):
        node = [node]
    if not isinstance(node, list) or not all(isinstance(s, str) for s in node):
        raise ConfigError("'{}' must be a list of strings".format(name))
    return list(node)


################################################################################
# Groups

# Constructors taking one integer argument
SIMPLE_GROUPS = {
    'symmetric': groups.symmetric,
    'alternating': groups.alternating,
    'cyclic': groups.cyclic,
    'psl2': groups.psl2,
    'hyperoctahedral': groups.hyperoctahedral,
}


def _group_node(node, name):
    '''Validates a group description and returns it normalized'''
    if not isinstance(node, dict) or not node:
        raise ConfigError("'{}' must be a mapping naming one group constructor".format(name))
    if 'generators' in node:
        _check_keys(node, ('generators', 'degree'), name)
        result = {'generators': _str_list(node['generators'], name + '.generators')}
        if 'degree' in node:
            result['degree'] = _int(node['degree'], name + '.degree', 1)
        return result
    if len(node) != 1:
        raise ConfigError('{}: exactly one group constructor expected, got {}'.format(
                name, ', '.join(map(str, node))))
    (kind, arg), = node.items()
    sub = '{}.{}'.format(name, kind)
    if kind in SIMPLE_GROUPS:
        return {kind: _int(arg, sub, 1)}
    if kind == 'affine':
        _check_keys(arg, ('p', 'k'), sub)
        return {kind: {'p': _int(arg.get('p'), sub + '.p', 2), 'k': _int(arg.get('k'), sub + '.k', 1)}}
    if kind == 'direct_product':
        if not isinstance(arg, list) or not arg:
            raise ConfigError("'{}' must be a nonempty list of groups".format(sub))
        return {kind: [_group_node(f, '{}[{}]'.format(sub, i)) for i, f in enumerate(arg)]}
    if kind == 'regular':
        return {kind: _group_node(arg, sub)}
    raise ConfigError('{}: Unrecognized node: {}'.format(name, kind))


def make_group(node, name='group'):
    '''Builds the PermGroup of a normalized group description'''
    try:
        if 'generators' in node:
            return groups.from_cycles(node['generators'], node.get('degree', 0))
        (kind, arg), = node.items()
        if kind in SIMPLE_GROUPS:
            return SIMPLE_GROUPS[kind](arg)
        if kind == 'affine':
            return groups.affine(arg['p'], arg['k'])
        if kind == 'regular':
            return groups.regular_action(make_group(arg, name))
        return groups.direct_product(*[make_group(f, name) for f in arg])
    except CycleParseError as e:
        raise ConfigError('{}: {}'.format(name, e))
    except GroupError as e:
        raise ConfigError('{}: {}'.format(name, e))


def describe_group(node):
    if 'generators' in node:
        return 'generated by {}'.format(', '.join(node['generators']))
    (kind, arg), = node.items()
    if kind == 'affine':
        return 'affine({}, {})'.format(arg['p'], arg['k'])
    if kind == 'direct_product':
        return ' x '.join(describe_group(f) for f in arg)
    if kind == 'regular':
        return 'regular({})'.format(describe_group(arg))
    return '{}({})'.format(kind, arg)


def parse_word(text, G):
    '''A product of group generators written "g1 g2^-1 g1^2"'''
    result = G.identity()
    for token in text.split():
        m = re.fullmatch(r'g(\d+)(?:\^(-?\d+))?', token)
        if not m:
            raise ConfigError('Bad word token {!r} in {!r}'.format(token, text))
        k = int(m.group(1))
        if not 1 <= k <= len(G.generators):
            raise ConfigError('Word {!r} uses g{}, but the group has {} generators'.format(
                    text, k, len(G.generators)))
        result = result * G.generators[k - 1] ** int(m.group(2) or 1)
    return result


################################################################################
# Sections

def _subgroups_node(node):
    name = 'subgroups'
    if isinstance(node, dict):
        _check_keys(node, ('search',), name)
        search = node.get('search')
        _check_keys(search, ('order', 'nonabelian', 'count'), name + '.search')
        nonabelian = search.get('nonabelian', False)
        if not isinstance(nonabelian, bool):
            raise ConfigError("'subgroups.search.nonabelian' must be a boolean")
        # the triple search builds triangle complexes only
        count = _int(search.get('count', 3), name + '.search.count')
        if count != 3:
            raise ConfigError("'subgroups.search.count' must be 3, not {}".format(count))
        return {'search': {
            'order': _int(search.get('order'), name + '.search.order', 1),
            'nonabelian': nonabelian,
            'count': count,
        }}
    if not isinstance(node, list) or not node:
        raise ConfigError("'subgroups' must be a search mapping or a nonempty list")
    result = []
    for i, entry in enumerate(node):
        sub = '{}[{}]'.format(name, i)
        _check_keys(entry, ('generators', 'words'), sub)
        if len(entry) != 1:
            raise ConfigError("{}: exactly one of 'generators' or 'words' expected".format(sub))
        (kind, value), = entry.items()
        result.append({kind: _str_list(value, '{}.{}'.format(sub, kind))})
    return result


def make_subgroups(G, node):
    '''Explicit subgroups of G; search nodes are handled by the job runner'''
    result = []
    for i, entry in enumerate(node):
        name = 'subgroups[{}]'.format(i)
        if 'generators' in entry:
            try:
                gens = groups.from_cycles(entry['generators'], G.degree).generators
            except (CycleParseError, GroupError) as e:
                raise ConfigError('{}: {}'.format(name, e))
        else:
            gens = [parse_word(w, G) for w in entry['words']]
        if any(g.degree != G.degree for g in gens):
            raise ConfigError('{}: generators move points beyond the group degree {}'.format(
                    name, G.degree))
        H = PermGroup(gens, degree=G.degree)
        if not H.is_subgroup_of(G):
            raise ConfigError('{}: not a subgroup of the group'.format(name))
        result.append(H)
    return result


COMPLEX_SOURCES = ('coset', 'facets', 'file', 'cross_polytope')
SYMMETRY_MODES = ('action', 'extend')


def _complex_node(node, has_subgroups):
    name = 'complex'
    _check_keys(node, ('source', 'facets', 'action', 'file', 'dimension', 'symmetry'), name)
    source = node.get('source', 'coset' if has_subgroups else None)
    if source not in COMPLEX_SOURCES:
        raise ConfigError("'complex.source' must be one of {}, not {!r}".format(
                ', '.join(COMPLEX_SOURCES), source))
    result = {'source': source}
    if source == 'facets':
        facets = node.get('facets')
        if not isinstance(facets, list) or not facets:
            raise ConfigError("'complex.facets' must be a nonempty list of vertex lists")
        for i, f in enumerate(facets):
            if not isinstance(f, list) or not f:
                raise ConfigError("'complex.facets[{}]' must be a nonempty list".format(i))
            for v in f:
                _int(v, 'complex.facets[{}]'.format(i), 1)
        result['facets'] = [list(f) for f in facets]
        if 'action' in node:
            result['action'] = _str_list(node['action'], 'complex.action')
    elif source == 'file':
        if not isinstance(node.get('file'), str):
            raise ConfigError("'complex.file' must be a path")
        result['file'] = node['file']
    elif source == 'cross_polytope':
        result['dimension'] = _int(node.get('dimension', 3), 'complex.dimension', 1)
    elif not has_subgroups:
        raise ConfigError("complex source 'coset' needs 'group' and 'subgroups'")
    symmetry = node.get('symmetry', 'extend' if source == 'coset' else 'action')
    if symmetry not in SYMMETRY_MODES:
        raise ConfigError("'complex.symmetry' must be one of {}, not {!r}".format(
                ', '.join(SYMMETRY_MODES), symmetry))
    result['symmetry'] = symmetry
    return result


def _checks_node(node):
    names = _str_list(node, 'checks')
    unknown = [n for n in names if n not in PREMISES]
    if unknown:
        raise ConfigError('checks: Unrecognized check{}: {}'.format(
                's' if len(unknown) > 1 else '', ', '.join(unknown)))
    return names


RAAG_GRAPHS = ('complex', 'octahedron')


def _raag_node(node):
    name = 'raag'
    _check_keys(node, ('graph', 'samples', 'length', 'edges', 'seed'), name)
    graph = node.get('graph', 'complex')
    if isinstance(graph, dict):
        _check_keys(graph, ('vertices', 'edges'), 'raag.graph')
        n = _int(graph.get('vertices'), 'raag.graph.vertices', 1)
        edges = graph.get('edges', [])
        if not isinstance(edges, list):
            raise ConfigError("'raag.graph.edges' must be a list of vertex pairs")
        for e in edges:
            if not (isinstance(e, list) and len(e) == 2 and
                    all(isinstance(v, int) and 1 <= v <= n for v in e)):
                raise ConfigError("'raag.graph.edges' entry {!r} is not a pair of vertices "
                        "in 1..{}".format(e, n))
        graph = {'vertices': n, 'edges': [list(e) for e in edges]}
    elif graph not in RAAG_GRAPHS:
        raise ConfigError("'raag.graph' must be a mapping or one of {}, not {!r}".format(
                ', '.join(RAAG_GRAPHS), graph))
    return {
        'graph': graph,
        'samples': _int(node.get('samples', 200), 'raag.samples', 0),
        'length': _int(node.get('length', 8), 'raag.length', 0),
        'edges': _int(node.get('edges', 1000), 'raag.edges', 0),
        'seed': _int(node.get('seed', 0), 'raag.seed'),
    }


def _tree_node(node):
    name = 'tree'
    _check_keys(node, ('x', 'y', 'radius', 'root_side', 'local_groups', 'fix_root', 'radii'),
            name)
    x = _int(node.get('x'), 'tree.x', 2)
    y = _int(node.get('y'), 'tree.y', 2)
    root_side = node.get('root_side', 'X')
    if root_side not in ('X', 'Y'):
        raise ConfigError("'tree.root_side' must be X or Y, not {!r}".format(root_side))
    local = node.get('local_groups', {})
    _check_keys(local, ('M', 'N'), 'tree.local_groups')
    fix_root = node.get('fix_root', True)
    if not isinstance(fix_root, bool):
        raise ConfigError("'tree.fix_root' must be a boolean")
    radii = node.get('radii', [2, 3])
    if not isinstance(radii, list):
        raise ConfigError("'tree.radii' must be a list of integers")
    return {
        'x': x,
        'y': y,
        'radius': _int(node.get('radius', 2), 'tree.radius', 1),
        'root_side': root_side,
        'local_groups': {
            'M': _group_node(local.get('M', {'symmetric': x}), 'tree.local_groups.M'),
            'N': _group_node(local.get('N', {'symmetric': y}), 'tree.local_groups.N'),
        },
        'fix_root': fix_root,
        'radii': [_int(r, 'tree.radii', 1) for r in radii],
    }


def _expect_node(node):
    _check_keys(node, ('triangle_orbits',), 'expect')
    result = {}
    if 'triangle_orbits' in node:
        result['triangle_orbits'] = _int(node['triangle_orbits'], 'expect.triangle_orbits', 0)
    return result


def _output_node(node, default_name):
    _check_keys(node, ('dir', 'name'), 'output')
    result = {'dir': node.get('dir', '.'), 'name': node.get('name', default_name)}
    for k, v in result.items():
        if not isinstance(v, str) or not v:
            raise ConfigError("'output.{}' must be a nonempty string".format(k))
    if os.sep in result['name']:
        raise ConfigError("'output.name' must not contain a path separator")
    return result


class JobConfig:
    TOP_LEVEL = ('group', 'subgroups', 'complex', 'checks', 'raag', 'tree', 'expect', 'output')

    def __init__(self, root='.', default_name='job', **data):
        extra = [n for n in data if n not in self.TOP_LEVEL]
        if extra:
            raise ConfigError('Job: Unrecognized node{}: {}'.format(
                    's' if len(extra) > 1 else '', ', '.join(map(str, extra))))
        self.root = root
        self.group = _group_node(data['group'], 'group') if 'group' in data else None
        self.subgroups = _subgroups_node(data['subgroups']) if 'subgroups' in data else None
        if self.subgroups is not None and self.group is None:
            raise ConfigError("'subgroups' given without a 'group'")
        self.complex = (_complex_node(data['complex'], self.subgroups is not None)
                if 'complex' in data else None)
        if self.complex is None and self.subgroups is not None:
            self.complex = _complex_node({}, True)
        self.checks = _checks_node(data['checks']) if 'checks' in data else list(PREMISES)
        self.raag = _raag_node(data['raag'] or {}) if 'raag' in data else None
        self.tree = _tree_node(data['tree']) if 'tree' in data else None
        self.expect = _expect_node(data.get('expect') or {})
        self.output = _output_node(data.get('output') or {}, default_name)

    def resolve(self, path):
        '''A path relative to the job file'''
        return os.path.join(self.root, path)

    def to_dict(self):
        '''The normalized job, loadable again'''
        result = {}
        for key in self.TOP_LEVEL:
            value = getattr(self, key)
            if value is not None:
                result[key] = value
        return result

    def __eq__(self, other):
        if not isinstance(other, JobConfig):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def dump_config(job):
    return yaml.safe_dump(job.to_dict(), default_flow_style=None, sort_keys=False)


def load_config(path):
    if not os.path.exists(path):
        raise ConfigNotFoundError('Job file not found: {}'.format(path))
    try:
        with open(path, 'r') as f:
            data = yaml.load(f, Loader)
    except IOError as e:
        raise ConfigError('Error opening {}: {}'.format(path, e))
    except yaml.YAMLError as e:
        raise ConfigError('Error loading {}: {}'.format(path, e))

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError('{}: top level must be a mapping'.format(path))
    root = os.path.dirname(os.path.abspath(path))
    name = os.path.splitext(os.path.basename(path))[0]
    return JobConfig(root=root, default_name=name, **data)
