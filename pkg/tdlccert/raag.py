'''
Right-angled Artin groups, their Bestvina-Brady subgroups and the
semidirect products with graph automorphisms.

Normal forms come from piling: one pile per vertex records the letters a
word pushes past, so cancellation and commutation are read off the pile
tops.  Depiling by least vertex first gives the shortlex-least reduced word.
'''
import re
from collections import deque, namedtuple

import networkx as nx

from .perm import Permutation
from .utils import format_cycles


class RaagError(ValueError):
    pass


class RaagDomainError(RaagError):
    '''An identity or precondition that fails for the given element'''
    def __init__(self, msg, equation=None):
        super().__init__(msg)
        self.equation = equation


class Raag:
    '''The right-angled Artin group of a simple graph'''

    def __init__(self, graph):
        if any(u == v for u, v in graph.edges):
            raise RaagError('Defining graph has a loop')
        self.graph = nx.freeze(nx.Graph(graph))
        self.vertices = tuple(sorted(graph.nodes))
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self._names = {str(v): v for v in self.vertices}
        n = len(self.vertices)
        adjacent = [set() for _ in range(n)]
        for u, v in graph.edges:
            adjacent[self.index[u]].add(self.index[v])
            adjacent[self.index[v]].add(self.index[u])
        self._blocking = [frozenset(j for j in range(n) if j != i and j not in adjacent[i])
                for i in range(n)]
        self._blocking_and_self = [b | {i} for i, b in enumerate(self._blocking)]
        self._automorphisms = set()

    @classmethod
    def from_edges(cls, n, edges):
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(edges)
        return cls(g)

    def commute(self, u, v):
        return u == v or self.graph.has_edge(u, v)

    def is_automorphism(self, q):
        '''True iff the permutation q of vertex positions preserves adjacency'''
        if q.degree != len(self.vertices):
            return False
        if q in self._automorphisms:
            return True
        vs = self.vertices
        ok = all(self.graph.has_edge(vs[q(self.index[u])], vs[q(self.index[v])])
                for u, v in self.graph.edges)
        if ok:
            self._automorphisms.add(q)
        return ok

    def word(self, letters=()):
        return RaagWord(self, letters)

    def generator(self, v, exponent=1):
        return RaagWord(self, [(v, 1 if exponent > 0 else -1)] * abs(exponent))

    def identity(self):
        return RaagWord(self, ())

    def parse(self, text):
        '''Parses words like "x y^-1 z^2"; "1" or "" is the identity'''
        letters = []
        for token in text.split():
            if token == '1':
                continue
            m = re.fullmatch(r'([^\^]+)(?:\^(-?\d+))?', token)
            if not m or m.group(1) not in self._names:
                raise RaagError('Unknown letter {!r} in word {!r}'.format(token, text))
            v = self._names[m.group(1)]
            k = int(m.group(2)) if m.group(2) is not None else 1
            letters.extend([(v, 1 if k > 0 else -1)] * abs(k))
        return RaagWord(self, letters)

    ################################################################################
    # Piling

    def _piles(self, letters):
        piles = [deque() for _ in self.vertices]
        for v, e in letters:
            i = self.index[v]
            if piles[i] and piles[i][-1] == -e:
                for j in self._blocking_and_self[i]:
                    piles[j].pop()
            else:
                piles[i].append(e)
                for j in self._blocking[i]:
                    piles[j].append(0)
        return piles

    def _depile(self, piles):
        result = []
        n = len(self.vertices)
        while True:
            i = next((j for j in range(n) if piles[j] and piles[j][0]), None)
            if i is None:
                return result
            result.append((self.vertices[i], piles[i][0]))
            for j in self._blocking_and_self[i]:
                piles[j].popleft()

    def normal_form(self, letters):
        return tuple(self._depile(self._piles(letters)))


class RaagWord:
    '''A word in the generators of a Raag and their inverses'''
    __slots__ = ('raag', 'letters')

    def __init__(self, raag, letters=()):
        letters = tuple(letters)
        for v, e in letters:
            if v not in raag.index:
                raise RaagError('Unknown vertex {!r}'.format(v))
            if e not in (1, -1):
                raise RaagError('Letter exponent must be +1 or -1, not {!r}'.format(e))
        self.raag = raag
        self.letters = letters

    def _same(self, other):
        if other.raag is not self.raag:
            raise RaagError('Words over different defining graphs')

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        self._same(other)
        return RaagWord(self.raag, self.letters + other.letters)

    def inverse(self):
        return RaagWord(self.raag, [(v, -e) for v, e in reversed(self.letters)])

    def act(self, q):
        '''Image under the graph automorphism q (a permutation of vertex positions)'''
        vs, index = self.raag.vertices, self.raag.index
        return RaagWord(self.raag, [(vs[q(index[v])], e) for v, e in self.letters])

    def normalize(self):
        return RaagWord(self.raag, self.raag.normal_form(self.letters))

    def equals(self, other):
        '''Equality in the group'''
        self._same(other)
        return self.raag.normal_form(self.letters) == self.raag.normal_form(other.letters)

    def is_identity(self):
        return not self.raag.normal_form(self.letters)

    def __eq__(self, other):
        if not isinstance(other, RaagWord):
            return NotImplemented
        return self.raag is other.raag and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        if not self.letters:
            return '1'
        return ' '.join(str(v) if e == 1 else '{}^-1'.format(v) for v, e in self.letters)

    def __repr__(self):
        return 'RaagWord({!r})'.format(str(self))


def normalize(w):
    return w.normalize()


def exponent_sum(w):
    '''The homomorphism sending every generator to 1'''
    return sum(e for _, e in w.letters)


def syllables(w):
    '''Maximal powers of one generator: [(vertex, exponent), ...]'''
    result = []
    for v, e in w.letters:
        if result and result[-1][0] == v:
            result[-1] = (v, result[-1][1] + e)
            if result[-1][1] == 0:
                result.pop()
        else:
            result.append((v, e))
    return result


def _least_shortest_path(graph, source, target, cache):
    if target not in cache:
        cache[target] = nx.single_source_shortest_path_length(graph, target)
    dist = cache[target]
    path = [source]
    v = source
    while v != target:
        v = min(u for u in graph[v] if dist.get(u) == dist[v] - 1)
        path.append(v)
    return path


def rewrite_in_edge_generators(h):
    '''Writes h in the generators x y^-1 over the edges (x, y)

    Collect h as x1^b1 ... xn^bn with partial sums ai = b1 + ... + bi, so
    that h = prod xi^ai x(i+1)^-ai; each factor telescopes along the least
    shortest path from xi to x(i+1).  Returns [((x, y), exponent), ...].
    '''
    raag = h.raag
    if raag.vertices and not nx.is_connected(raag.graph):
        raise RaagError('Defining graph is not connected')
    phi = exponent_sum(h)
    if phi != 0:
        raise RaagDomainError('Exponent sum is {}, not 0'.format(phi),
                equation='phi({}) = {}'.format(h, phi))

    parts = syllables(h)
    result = []
    cache = {}
    a = 0
    for (x, b), (y, _) in zip(parts, parts[1:]):
        a += b
        if a == 0 or x == y:
            continue
        path = _least_shortest_path(raag.graph, x, y, cache)
        for u, v in zip(path, path[1:]):
            result.append(((u, v), a))
    return result


def edge_word(raag, terms):
    '''The word of [((x, y), k), ...] as (x y^-1)^k products'''
    letters = []
    for (x, y), k in terms:
        if not raag.graph.has_edge(x, y):
            raise RaagError('({}, {}) is not an edge'.format(x, y))
        block = [(x, 1), (y, -1)] if k > 0 else [(y, 1), (x, -1)]
        letters.extend(block * abs(k))
    return RaagWord(raag, letters)


################################################################################
# Semidirect products with graph automorphisms

class SdElement:
    '''A pair (h, q) with h a word and q a graph automorphism

    (h, q)(h', q') = (h * q.h', q q'); composition q q' applies q' first,
    which is the permutation product q' * q.
    '''
    __slots__ = ('h', 'q')

    def __init__(self, h, q=None):
        n = len(h.raag.vertices)
        if q is None:
            q = Permutation.identity(n)
        if not h.raag.is_automorphism(q):
            raise RaagError('Not an automorphism of the defining graph')
        self.h = h
        self.q = q

    def __mul__(self, other):
        return sd_multiply(self, other)

    def inverse(self):
        return sd_inverse(self)

    def __eq__(self, other):
        if not isinstance(other, SdElement):
            return NotImplemented
        return self.q == other.q and self.h.equals(other.h)

    def __hash__(self):
        return hash((self.q, self.h.raag.normal_form(self.h.letters)))

    def __repr__(self):
        return 'SdElement({}, {})'.format(self.h.normalize(), format_cycles(self.q))


def sd_multiply(a, b):
    if a.h.raag is not b.h.raag:
        raise RaagError('Elements over different defining graphs')
    return SdElement(a.h * b.h.act(a.q), b.q * a.q)


def sd_inverse(a):
    qi = a.q.inverse()
    return SdElement(a.h.inverse().act(qi), qi)


def conjugation_formula_check(h, automorphisms):
    '''(h,1)(1,p)(h,1)^-1 == (h * p.h^-1, p) for every p'''
    hh = SdElement(h)
    for p in automorphisms:
        lhs = hh * SdElement(h.raag.identity(), p) * hh.inverse()
        rhs = SdElement(h * h.inverse().act(p), p)
        if lhs != rhs:
            return False
    return True


ProofTrace = namedtuple('ProofTrace', 'edge apex element steps')


def edge_generator_from_conjugates(raag, x, y, z, q):
    '''Shows (x y^-1, 1) is a product of conjugates of automorphisms

    With q fixing z and sending x to y:
    (x z^-1, 1)(1, q)(x z^-1, 1)^-1 = (x y^-1, q), then times (1, q^-1).
    Raises RaagDomainError naming the failed equation.
    '''
    index, vs = raag.index, raag.vertices
    image = lambda v: vs[q(index[v])]
    if x != y:
        if not (raag.graph.has_edge(x, y) and raag.graph.has_edge(x, z)
                and raag.graph.has_edge(y, z)):
            raise RaagDomainError('{{{}, {}, {}}} is not a triangle'.format(x, y, z))
    if image(z) != z or image(x) != y:
        raise RaagDomainError('Element does not fix {} and send {} to {}'.format(z, x, y),
                equation='q.{} = {}, q.{} = {}'.format(z, image(z), x, image(x)))

    xz = raag.word([(x, 1), (z, -1)])
    xy = raag.word([(x, 1), (y, -1)]) if x != y else raag.identity()
    one = raag.identity()

    lhs = xz * raag.word([(z, 1), (x, -1)]).act(q)
    if not lhs.equals(xy):
        raise RaagDomainError('Telescoping identity fails',
                equation='{} * q.({} {}^-1) != {}'.format(xz, z, x, xy))

    conj = SdElement(xz) * SdElement(one, q) * SdElement(xz).inverse()
    if conj != SdElement(xy, q):
        raise RaagDomainError('Conjugation step fails',
                equation='({}, 1)(1, q)({}, 1)^-1 != ({}, q)'.format(xz, xz, xy))
    final = conj * SdElement(one, q.inverse())
    if final != SdElement(xy):
        raise RaagDomainError('Cancellation step fails',
                equation='({}, q)(1, q^-1) != ({}, 1)'.format(xy, xy))

    steps = [
        '({}, 1)(1, q)({}, 1)^-1 = ({}, q)'.format(xz, xz, xy.normalize()),
        '({}, q)(1, q^-1) = ({}, 1)'.format(xy.normalize(), xy.normalize()),
    ]
    return ProofTrace((x, y), z, q, steps)


################################################################################
# Samples

def random_word(raag, length, rng):
    return RaagWord(raag, [(rng.choice(raag.vertices), rng.choice((1, -1)))
            for _ in range(length)])


def random_kernel_word(raag, length, rng):
    '''A random word of even length with exponent sum 0'''
    half = length // 2
    letters = [(rng.choice(raag.vertices), 1) for _ in range(half)]
    letters += [(rng.choice(raag.vertices), -1) for _ in range(half)]
    rng.shuffle(letters)
    return RaagWord(raag, letters)
