from setuptools import setup
import re
import os
import sys

ver_info = sys.version_info
if ver_info < (3,7,0):
    raise RuntimeError("champ requires at least python 3.7")

with open(os.path.join(os.path.dirname(__file__), 'champ', 'orchestrator.py')) as r:
    version = re.search(r'version = \'(\d+\.\d+\.\d+[-_a-zA-Z0-9]*)\'', r.read()).group(1)

with open("README.md") as r:
    long_description = r.read()

setup(
    name = 'champ',
    version = version,
    packages = [
        'champ',
        'champ.networks',
        'champ.heuristics',
        'champ.envelope'
    ],
    entry_points={
        'console_scripts':[
            'champ = champ.__main__:main'
        ]
    },
    description = 'Prunes ensembles of community-detection partitions to their domains of modularity optimality',
    long_description = long_description,
    long_description_content_type = 'text/markdown',
    install_requires = [
        'numpy>=1.18.0',
        'scipy>=1.11.0',
        'pandas>=0.24.1',
        'scikit-learn>=0.22',
        'PyYAML>=5.1',
        'agutil>=4.1.0',
        'psutil>=5.6.7',
        'crayons>=0.3.0'
    ],
    classifiers = [
        "Development Status :: 4 - Beta",
        "Programming Language :: Python :: 3",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Information Analysis",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Typing :: Typed",
        "License :: OSI Approved :: BSD License"
    ],
    license="BSD3"
)
