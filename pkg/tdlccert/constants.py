# Environment variable capping the worker processes used for link checks
THREADS_ENV_VAR = 'TDLC_CERTIFY_THREADS'

# Exit codes of the command line front end
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

# Schema identifiers written into every JSON artifact
SCHEMA_PREFIX = 'tdlccert'
SCHEMA_VERSION = 1

# Recorded in every artifact header
CONVENTIONS = {
    'points': '1-based in cycle notation, 0-based vertex and point indices',
    'action': 'right action; cycles composed left to right, (p*q)(i) = q(p(i))',
    'cosets': 'right cosets Hg, numbered by lexicographically least element, part-major',
    'orientation': 'simplices oriented by increasing vertex order',
}


def schema(kind):
    return '{}/{}/{}'.format(SCHEMA_PREFIX, kind, SCHEMA_VERSION)
