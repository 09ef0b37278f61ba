import tdlccert.version
from setuptools import setup
import os


def read_project_file(path):
    proj_dir = os.path.dirname(__file__)
    path = os.path.join(proj_dir, path)
    with open(path, 'r') as f:
        return f.read()

################################################################################
# Dynamic versioning

def get_version():
    # CI builds
    # If CI_VERSION_BUILD_NUMBER is set, append that to the base version
    build_num = os.getenv('CI_VERSION_BUILD_NUMBER')
    if build_num:
        return '{}.{}'.format(tdlccert.version.BASE_VERSION, build_num)

    # Otherwise, use the auto-versioning
    return tdlccert.version.__version__

################################################################################

setup(
    name = 'tdlccert',
    version = get_version(),
    python_requires='>=3.8',
    description = 'Checkable certificates for coset complexes, RAAG identities and tree actions',
    long_description = read_project_file('README.md'),
    long_description_content_type = 'text/markdown',
    classifiers = [
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    license = 'MIT',
    keywords = 'group theory, simplicial complex, homology, certificate',
    packages = ['tdlccert'],
    zip_safe = False,   # http://stackoverflow.com/q/24642788/119527
    entry_points = {
        'console_scripts': [
            'tdlccert = tdlccert.__main__:main',
        ]
    },
    install_requires = [
        'PyYAML',
        'networkx>=3.4',
    ],
    extras_require = {
        'argcomplete': [
            'argcomplete>=1.10.1',
        ],
    },
)
