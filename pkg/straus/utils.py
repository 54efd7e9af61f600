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

"""The utils methods."""

from typing import Any, Dict, Mapping


def merge_dict(dict1: Mapping, dict2: Mapping) -> Dict:
    new_dict = {**dict1, **dict2}
    return new_dict


def ceil_log2(n: int) -> int:
    """Smallest e with 2**e >= n, for n >= 1."""
    if n < 1:
        raise ValueError(f'ceil_log2 needs a positive argument, got {n!r}.')
    return (n - 1).bit_length()


def to_decimal(value: Any) -> Any:
    """Converts every integer inside value to a decimal string.

    Args:
        value: An int, a mapping, a sequence or anything else.

    Returns:
        The same structure with integers replaced by their decimal strings.
    """
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Mapping):
        return {str(key): to_decimal(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_decimal(item) for item in value]
    return value


def parse_decimal(text: Any, name: str = 'value') -> int:
    """Parses a decimal string into an int, rejecting anything else."""
    if isinstance(text, bool) or not isinstance(text, str):
        raise ValueError(f'{name} must be a decimal string, got {text!r}.')
    if not (text.isascii() and text.isdigit()):
        raise ValueError(f'{name} is not a non-negative decimal integer: {text!r}.')
    return int(text)
