'''
Permutation groups acting on the right.

Points are numbered from 0.  A permutation is stored as its tuple of images and
products are read left to right: ``(p * q)(i) == q(p(i))``.  This is the
convention GAP uses, and the one cycle notation in job files is parsed with.
'''
import math
from collections import deque
from functools import reduce

# Element enumeration is refused above this order.
ENUMERATION_LIMIT = 10**5


class GroupError(ValueError):
    pass


class Permutation:
    '''A bijection of {0, ..., degree-1}'''
    __slots__ = ('_images', '_hash')

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise GroupError('Not a permutation: {}'.format(list(images)))
        self._images = images
        self._hash = None

    @classmethod
    def _raw(cls, images):
        p = cls.__new__(cls)
        p._images = images
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree):
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree, cycles):
        '''Builds a permutation from disjoint 0-based cycles'''
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(images)

    @property
    def images(self):
        return self._images

    @property
    def degree(self):
        return len(self._images)

    def __call__(self, point):
        return self._images[point]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other._images) != len(self._images):
            raise GroupError('Degree mismatch: {} vs {}'.format(
                    len(self._images), len(other._images)))
        o = other._images
        return Permutation._raw(tuple([o[i] for i in self._images]))

    def inverse(self):
        inv = [0] * len(self._images)
        for i, j in enumerate(self._images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    __invert__ = inverse

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** -n
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, g):
        '''Returns g^-1 * self * g'''
        return g.inverse() * self * g

    def is_identity(self):
        return all(i == j for i, j in enumerate(self._images))

    def cycles(self):
        '''Nontrivial cycles, each starting at its least point'''
        seen = set()
        result = []
        for i in range(len(self._images)):
            if i in seen or self._images[i] == i:
                continue
            cycle = [i]
            seen.add(i)
            j = self._images[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self._images[j]
            result.append(tuple(cycle))
        return result

    def order(self):
        return reduce(_lcm, (len(c) for c in self.cycles()), 1)

    def support(self):
        return [i for i, j in enumerate(self._images) if i != j]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __lt__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images < other._images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._images)
        return self._hash

    def __repr__(self):
        body = ''.join('({})'.format(' '.join(map(str, c))) for c in self.cycles())
        return 'Permutation({}, degree={})'.format(body or '()', self.degree)


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class _Level:
    '''One level of a stabilizer chain'''
    __slots__ = ('base', 'gens', 'transversal', 'next')

    def __init__(self):
        self.base = None
        self.gens = []
        # orbit point -> (u, u^-1) with base^u == point
        self.transversal = {}
        self.next = None


class PermGroup:
    '''A permutation group given by generators

    The order and the stabilizer chain are computed on first use with a
    deterministic Schreier-Sims construction; both are write-once caches.
    '''

    def __init__(self, generators=(), degree=None):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise GroupError('Degree required for a group without generators')
            degree = generators[0].degree
        for g in generators:
            if not isinstance(g, Permutation):
                raise GroupError('Generator is not a Permutation: {!r}'.format(g))
            if g.degree != degree:
                raise GroupError('Generator degree {} does not match group degree {}'.format(
                        g.degree, degree))
        self._degree = degree
        self._generators = tuple(generators)
        self._chain = None
        self._order = None
        self._elements = None
        self._element_set = None

    @classmethod
    def trivial(cls, degree):
        return cls((), degree=degree)

    @property
    def degree(self):
        return self._degree

    @property
    def generators(self):
        return self._generators

    def identity(self):
        return Permutation.identity(self._degree)

    def __repr__(self):
        return 'PermGroup(degree={}, generators={})'.format(self._degree, len(self._generators))

    ################################################################################
    # Stabilizer chain

    def _stabilizer_chain(self):
        if self._chain is None:
            top = _Level()
            for g in self._generators:
                _extend(top, g, self._degree)
            self._chain = top
        return self._chain

    def order(self):
        if self._order is None:
            n = 1
            level = self._stabilizer_chain()
            while level is not None and level.base is not None:
                n *= len(level.transversal)
                level = level.next
            self._order = n
        return self._order

    def base(self):
        result = []
        level = self._stabilizer_chain()
        while level is not None and level.base is not None:
            result.append(level.base)
            level = level.next
        return result

    def __contains__(self, g):
        if g.degree != self._degree:
            return False
        if self._element_set is not None:
            return g.images in self._element_set
        return _sift(self._stabilizer_chain(), g).is_identity()

    ################################################################################
    # Exhaustive enumeration

    def elements(self):
        '''All elements, sorted by image sequence'''
        if self._elements is None:
            if self.order() > ENUMERATION_LIMIT:
                raise GroupError('Group of order {} is too large to enumerate'.format(
                        self.order()))
            ident = self.identity()
            seen = {ident.images: ident}
            queue = deque([ident])
            while queue:
                x = queue.popleft()
                for s in self._generators:
                    y = x * s
                    if y.images not in seen:
                        seen[y.images] = y
                        queue.append(y)
            self._elements = tuple(seen[k] for k in sorted(seen))
            self._element_set = frozenset(seen)
        return self._elements

    def element_set(self):
        '''Frozen set of image tuples, usable as a subgroup key'''
        self.elements()
        return self._element_set

    ################################################################################
    # Structure

    def is_abelian(self):
        gens = self._generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i+1:])

    def is_subgroup_of(self, other):
        return self._degree == other.degree and all(g in other for g in self._generators)

    def is_normal_in(self, other):
        return self.is_subgroup_of(other) and all(
                h.conjugate(g) in self for h in self._generators for g in other.generators)

    def conjugate(self, g):
        '''The subgroup g^-1 H g'''
        return PermGroup([h.conjugate(g) for h in self._generators], degree=self._degree)

    def same_group(self, other):
        return self.order() == other.order() and self.is_subgroup_of(other)


def _sift(level, g):
    while level is not None and level.base is not None:
        pt = g(level.base)
        entry = level.transversal.get(pt)
        if entry is None:
            return g
        g = g * entry[1]
        level = level.next
    return g


def _extend(level, g, degree):
    '''Adds g to the group of this level, keeping the chain complete below it'''
    if _sift(level, g).is_identity():
        return
    if level.base is None:
        level.base = g.support()[0]
        ident = Permutation.identity(degree)
        level.transversal = {level.base: (ident, ident)}
        level.next = _Level()
    level.gens.append(g)

    queue = deque()

    def process(pt, s):
        u = level.transversal[pt][0] * s
        image = s(pt)
        entry = level.transversal.get(image)
        if entry is None:
            level.transversal[image] = (u, u.inverse())
            queue.append(image)
        else:
            schreier = u * entry[1]
            if not schreier.is_identity():
                _extend(level.next, schreier, degree)

    for pt in list(level.transversal):
        process(pt, g)
    while queue:
        pt = queue.popleft()
        for s in level.gens:
            process(pt, s)


def group_from_elements(elements, degree):
    '''Builds a group from an element list, keeping only needed generators'''
    group = PermGroup.trivial(degree)
    gens = []
    for x in elements:
        if x not in group:
            gens.append(x)
            group = PermGroup(gens, degree=degree)
    return group


################################################################################
# Operations

def group_order(G):
    return G.order()


ACTION_KINDS = ('points', 'tuples', 'sets')


def _act(g, item, kind):
    if kind == 'points':
        return g(item)
    if kind == 'tuples':
        return tuple(g(i) for i in item)
    return frozenset(g(i) for i in item)


def orbit(G, seed, kind='points'):
    '''The orbit of a point, tuple or set under G'''
    if kind not in ACTION_KINDS:
        raise GroupError('Unknown action kind: {}'.format(kind))
    points = [seed] if kind == 'points' else list(seed)
    for p in points:
        if not isinstance(p, int) or not 0 <= p < G.degree:
            raise GroupError('Point {!r} out of range for degree {}'.format(p, G.degree))
    if kind == 'tuples':
        seed = tuple(seed)
    elif kind == 'sets':
        seed = frozenset(seed)

    result = {seed}
    queue = deque([seed])
    while queue:
        item = queue.popleft()
        for s in G.generators:
            image = _act(s, item, kind)
            if image not in result:
                result.add(image)
                queue.append(image)
    return frozenset(result)


def orbits(G, kind='points', items=None):
    '''Partitions items (default: all points) into G-orbits'''
    if items is None:
        items = range(G.degree)
    remaining = list(items)
    done = set()
    result = []
    for item in remaining:
        key = item if kind == 'points' else (tuple(item) if kind == 'tuples' else frozenset(item))
        if key in done:
            continue
        orb = orbit(G, key, kind)
        done.update(orb)
        result.append(orb)
    return result


class CosetSpace:
    '''Right cosets Hg of H in G with the right multiplication action

    Cosets are numbered by their lexicographically least element, so coset 0
    is H itself with the identity as representative.
    '''

    def __init__(self, parent, subgroup):
        if not subgroup.is_subgroup_of(parent):
            raise GroupError('Subgroup is not contained in the parent group')
        self.parent = parent
        self.subgroup = subgroup

        members = subgroup.elements()
        index_of = {}
        reps = []
        for g in parent.elements():
            if g.images in index_of:
                continue
            idx = len(reps)
            reps.append(g)
            for h in members:
                index_of[(h * g).images] = idx
        self._index_of = index_of
        self.representatives = tuple(reps)

    def __len__(self):
        return len(self.representatives)

    def index_of(self, g):
        '''Index of the coset containing g'''
        return self._index_of[g.images]

    def act(self, i, g):
        return self._index_of[(self.representatives[i] * g).images]

    def permutation(self, g):
        '''The permutation of coset indices induced by g'''
        return Permutation._raw(tuple(
                self._index_of[(r * g).images] for r in self.representatives))

    def action_group(self):
        return PermGroup([self.permutation(g) for g in self.parent.generators],
                degree=len(self))

    def members(self, i):
        r = self.representatives[i]
        return [h * r for h in self.subgroup.elements()]


def coset_space(G, H):
    return CosetSpace(G, H)


def _require_subgroup(G, H):
    if not H.is_subgroup_of(G):
        raise GroupError('Subgroup is not contained in the parent group')


def core(G, H):
    '''Kernel of the action of G on the right cosets of H'''
    cosets = coset_space(G, H)
    kernel = [h for h in H.elements()
            if all(cosets.act(i, h) == i for i in range(len(cosets)))]
    return group_from_elements(kernel, G.degree)


def normal_closure(G, H):
    '''Smallest normal subgroup of G containing H'''
    _require_subgroup(G, H)
    gens = [h for h in H.generators if not h.is_identity()]
    N = PermGroup(gens, degree=G.degree)
    queue = deque(gens)
    while queue:
        n = queue.popleft()
        for g in G.generators:
            c = n.conjugate(g)
            if c not in N:
                gens.append(c)
                N = PermGroup(gens, degree=G.degree)
                queue.append(c)
    return N


def is_faithful_on_cosets(G, H):
    return core(G, H).order() == 1


def conjugates_generate(G, H):
    return normal_closure(G, H).order() == G.order()


def normalizer(G, H):
    '''Elements of G conjugating H onto itself'''
    _require_subgroup(G, H)
    members = H.element_set()
    found = [g for g in G.elements()
            if all(h.conjugate(g).images in members for h in H.generators)]
    return group_from_elements(found, G.degree)


def acts_freely(G):
    '''True iff every nonidentity element moves every point'''
    return all(g.is_identity() or all(g(i) != i for i in range(G.degree))
            for g in G.elements())


def conjugate_key(key, g):
    '''Conjugates a subgroup given by its element set'''
    gi = g.inverse().images
    gm = g.images
    return frozenset(tuple(gm[x[gi[i]]] for i in range(len(gm))) for x in key)


def _prime_factors(n):
    result = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            result.append(p)
            n //= p
        p += 1
    if n > 1:
        result.append(n)
    return result


def subgroups_of_order(G, order):
    '''All subgroups of the given order with a normal subgroup of prime order p

    p is the largest prime dividing the order.  Supported orders are p and
    p*m with m = 1 or a prime other than p: the subgroups are found by
    extending each subgroup P of order p by elements of its normalizer whose
    m-th power lies in P.
    '''
    if order < 1 or G.order() % order:
        raise GroupError('Order {} does not divide the group order {}'.format(order, G.order()))
    if order == 1:
        return [PermGroup.trivial(G.degree)]
    factors = _prime_factors(order)
    p = factors[-1]
    m = order // p
    if m % p == 0 or len(_prime_factors(m)) > 1:
        raise GroupError('Subgroup search supports orders p or p*m with m prime, not {}'.format(
                order))

    # Subgroups of order p, one per generator class
    by_key = {}
    for x in G.elements():
        if x.order() == p:
            cyc = PermGroup([x], degree=G.degree)
            by_key.setdefault(cyc.element_set(), cyc)
    prime_subgroups = [by_key[k] for k in sorted(by_key, key=sorted)]

    found = {}
    for P in prime_subgroups:
        if m == 1:
            found.setdefault(P.element_set(), P)
            continue
        members = P.element_set()
        ext = []
        for t in normalizer(G, P).elements():
            if t.images in members or (t ** m).images not in members:
                continue
            if any(t in K for K in ext):
                continue
            K = PermGroup(list(P.generators) + [t], degree=G.degree)
            if K.order() == order:
                ext.append(K)
                found.setdefault(K.element_set(), K)
    return [found[k] for k in sorted(found, key=sorted)]


def conjugacy_classes_of(G, subgroups):
    '''Groups subgroups into G-conjugacy classes, preserving input order'''
    index = {H.element_set(): H for H in subgroups}
    assigned = set()
    classes = []
    for H in subgroups:
        key = H.element_set()
        if key in assigned:
            continue
        cls = [key]
        assigned.add(key)
        queue = deque([key])
        while queue:
            k = queue.popleft()
            for g in G.generators:
                c = conjugate_key(k, g)
                if c not in assigned:
                    assigned.add(c)
                    cls.append(c)
                    queue.append(c)
        classes.append([index[k] if k in index else group_from_elements(
                [Permutation._raw(x) for x in sorted(k)], G.degree) for k in cls])
    return classes


def find_subgroups(G, order, predicate=None):
    '''One representative per conjugacy class of subgroups of the given order

    predicate, if given, is a test applied to each candidate subgroup.
    '''
    candidates = subgroups_of_order(G, order)
    if predicate is not None:
        candidates = [H for H in candidates if predicate(H)]
    return [cls[0] for cls in conjugacy_classes_of(G, candidates)]


def nonabelian(H):
    return not H.is_abelian()
