# Licensed to the White Turing under one or more
# contributor license agreements.  See the NOTICE file
# distributed with this work for additional information
# regarding copyright ownership.  The SFC licenses this file
# to you under the Apache License, Version 2.0 (the
# "License"); you may not use this file except in compliance
# with the License.  You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing,
# software distributed under the License is distributed on an
# "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, either express or implied.  See the License for the
# specific language governing permissions and limitations
# under the License.


# Note: To upload this project, you must:

'''
python setup.py sdist
pip install dist/straus-0.1.0.tar.gz
python setup.py bdist_wheel
pip install twine
twine upload dist/*
'''

import os.path
import re
from setuptools import setup


# What packages are required for this module to be executed?
requires = [
    'sympy>=1.6',
]

# Import the README and use it as the long-description.
cwd = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(cwd, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

# Read the version from the package.
with open(os.path.join(cwd, 'straus', '__init__.py'), encoding='utf-8') as f:
    __version__ = re.search(r'^__version__ = "([^"]+)"', f.read(), re.M).group(1)

# Where the magic happens:
setup(
    name='straus',
    packages=['straus'],
    version=__version__,
    license='Apache 2.0',
    author='White Turing',
    description='Exact-arithmetic decompositions 4/P = 1/A + 1/B + 1/C for primes P.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    keywords=['number theory', 'egyptian fractions', 'erdos-straus', 'diophantine'],
    classifiers=[
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: Implementation :: CPython',
        'Programming Language :: Python :: Implementation :: PyPy',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    entry_points={
        'console_scripts': [
            'straus = straus.cli:main',
        ],
    },
    python_requires='>=3.8.0',
    install_requires=requires,
)
