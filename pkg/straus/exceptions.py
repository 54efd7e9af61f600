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

"""Exceptions that may happen in all the straus code."""


class StrausException(Exception):
    """Base straus exception."""
    pass


class DomainException(StrausException, ValueError):
    """Thrown when an argument lies outside the domain of an operation."""
    pass


class BudgetExceededException(StrausException):
    """Thrown when a factorization exceeds its step budget."""

    def __init__(self, message: str, number: int = None, partial=None, cofactors=()) -> None:
        super(BudgetExceededException, self).__init__(message)
        self.number = number
        self.partial = partial
        self.cofactors = tuple(cofactors)


class VerificationException(StrausException):
    """Thrown when an exact identity that must hold does not."""

    def __init__(self, message: str, rejection=None) -> None:
        super(VerificationException, self).__init__(message)
        self.rejection = rejection


class RecordFormatException(StrausException):
    """Thrown when a decomposition record cannot be parsed."""
    pass
