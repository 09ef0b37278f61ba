'''
Normal forms in amalgamated free products A *_C B of finite permutation
groups.

A word is a sequence of tagged letters ('A', a), ('B', b) or ('C', c).  Its
normal form is c * t1 * t2 * ... with c in C and the ti alternating between
nontrivial right-transversal elements of C in A and in B.
'''
from collections import deque

from .perm import PermGroup, coset_space
from .utils import format_cycles

SIDES = ('A', 'B')


class AmalgamError(ValueError):
    pass


def _extend_embedding(C, images, target):
    '''Extends generator images to a map on all of C, checking it is an
    injective homomorphism into target
    '''
    if len(images) != len(C.generators):
        raise AmalgamError('{} images given for {} generators'.format(
                len(images), len(C.generators)))
    for img in images:
        if img not in target:
            raise AmalgamError('Image {} lies outside its factor'.format(format_cycles(img)))
    ident = C.identity()
    mapping = {ident.images: target.identity()}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s, img in zip(C.generators, images):
            y = x * s
            fy = mapping[x.images] * img
            known = mapping.get(y.images)
            if known is None:
                mapping[y.images] = fy
                queue.append(y)
            elif known != fy:
                raise AmalgamError('Generator images do not define a homomorphism')
    if len({v.images for v in mapping.values()}) != len(mapping):
        raise AmalgamError('Embedding is not injective')
    return mapping


class AmalgamPresentation:
    '''A *_C B with embeddings given on the generators of C'''

    def __init__(self, A, B, C, embed_a, embed_b, transversals=None):
        self.A = A
        self.B = B
        self.C = C
        self.factors = {'A': A, 'B': B}
        self._embed = {
            'A': _extend_embedding(C, list(embed_a), A),
            'B': _extend_embedding(C, list(embed_b), B),
        }
        self._images = {side: PermGroup([self._embed[side][g.images] for g in C.generators],
                degree=self.factors[side].degree) for side in SIDES}
        self._preimage = {side: {v.images: k for k, v in self._embed[side].items()}
                for side in SIDES}
        self._cosets = {side: coset_space(self.factors[side], self._images[side])
                for side in SIDES}
        if transversals is None:
            transversals = {side: self._cosets[side].representatives for side in SIDES}
        self.transversals = {}
        for side in SIDES:
            reps = tuple(transversals[side])
            cosets = self._cosets[side]
            if len(reps) != len(cosets) or not reps[0].is_identity():
                raise AmalgamError('Transversal of C in {} must start with the identity '
                        'and meet every coset once'.format(side))
            if sorted(cosets.index_of(t) for t in reps) != list(range(len(cosets))):
                raise AmalgamError('Transversal of C in {} misses a coset'.format(side))
            self.transversals[side] = reps

    @classmethod
    def over_common_subgroup(cls, G, C):
        '''G *_C G with C included identically in both factors'''
        if not C.is_subgroup_of(G):
            raise AmalgamError('C is not a subgroup of the factor')
        return cls(G, G, C, C.generators, C.generators)

    def with_transversals(self, rng):
        '''The same amalgam with a random transversal of each coset space'''
        chosen = {}
        for side in SIDES:
            cosets = self._cosets[side]
            reps = [self.factors[side].identity()]
            for i in range(1, len(cosets)):
                reps.append(rng.choice(sorted(cosets.members(i))))
            chosen[side] = reps
        return AmalgamPresentation(self.A, self.B, self.C,
                [self._embed['A'][g.images] for g in self.C.generators],
                [self._embed['B'][g.images] for g in self.C.generators], chosen)

    def embed(self, side, c):
        return self._embed[side][c.images]

    def factor(self, side, x):
        '''Splits x in the given factor as embed(c) * t with t in the transversal'''
        t = self.transversals[side][self._cosets[side].index_of(x)]
        c = self._preimage[side][(x * t.inverse()).images]
        return c, t

    def check_letter(self, letter):
        side, x = letter
        group = self.C if side == 'C' else self.factors.get(side)
        if group is None:
            raise AmalgamError('Unknown factor tag {!r}'.format(side))
        if x not in group:
            raise AmalgamError('Letter {} is not in factor {}'.format(format_cycles(x), side))


class AmalgamWord:
    '''Normal form c * t1 * t2 * ...; syllables are (side, t) pairs'''
    __slots__ = ('presentation', 'prefix', 'syllables')

    def __init__(self, presentation, prefix, syllables):
        self.presentation = presentation
        self.prefix = prefix
        self.syllables = tuple(syllables)

    def __len__(self):
        return len(self.syllables)

    def letters(self):
        return [('C', self.prefix)] + list(self.syllables)

    def __mul__(self, other):
        return normal_form(self.presentation, self.letters() + other.letters())

    def same_element(self, other):
        return self.prefix == other.prefix and self.syllables == other.syllables

    def __str__(self):
        parts = [format_cycles(self.prefix)]
        parts += ['{}{}'.format(side, format_cycles(t)) for side, t in self.syllables]
        return ' * '.join(parts)


def normal_form(presentation, letters):
    '''Normal form of a word, multiplying letters in from the right'''
    p = presentation
    for letter in letters:
        p.check_letter(letter)
    prefix = p.C.identity()
    syllables = []
    for side, x in reversed(letters):
        if side == 'C':
            prefix = x * prefix
            continue
        g = x * p.embed(side, prefix)
        if syllables and syllables[0][0] == side:
            g = g * syllables.pop(0)[1]
        prefix, t = p.factor(side, g)
        if not t.is_identity():
            syllables.insert(0, (side, t))
    return AmalgamWord(p, prefix, tuple(syllables))


def syllable_length(w):
    return len(w.syllables)


def random_word(presentation, length, rng):
    '''Random letters alternating between the factors, starting on either side'''
    side = rng.choice(SIDES)
    letters = []
    for _ in range(length):
        letters.append((side, rng.choice(presentation.factors[side].elements())))
        side = 'B' if side == 'A' else 'A'
    return letters


def insert_relator(presentation, letters, rng):
    '''Inserts embed_A(c) * embed_B(c)^-1, which is trivial in the amalgam'''
    c = rng.choice(presentation.C.elements())
    pos = rng.randint(0, len(letters))
    relator = [('A', presentation.embed('A', c)), ('B', presentation.embed('B', c).inverse())]
    return letters[:pos] + relator + letters[pos:]
