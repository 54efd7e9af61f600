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

import sys

from .config import SolveConfig
from .decomp import Decomposition, Rejection, verified, verify
from .exceptions import *
from .solver import Solver
from .tags import Method, Policy, Status, Strategy


# Meta information
__author__ = "White Turing"
__version__ = "0.1.0"


# Sanity checking.
try:
    assert sys.version_info.major == 3
    assert sys.version_info.minor > 7
except AssertionError:
    raise RuntimeError('Straus requires Python 3.8+!') from AssertionError

__all__ = [
    'Decomposition',
    'Method',
    'Policy',
    'Rejection',
    'SolveConfig',
    'Solver',
    'Status',
    'Strategy',
    'verified',
    'verify',
]
