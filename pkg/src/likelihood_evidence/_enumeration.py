"""Exact enumeration of i.i.d. samples over a finite support."""

from __future__ import annotations

import itertools
import math
import os

import numpy as np

from .errors import EnumerationTooLarge

THREADS_ENV = "LIKELIHOOD_EVIDENCE_THREADS"


def worker_count(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def sequence_count(s: int, n: int) -> int:
    return s**n


def multiset_count(s: int, n: int) -> int:
    return math.comb(s + n - 1, n)


def all_sequences(s: int, n: int, limit: int) -> np.ndarray:
    """Every length-``n`` sequence of support positions, lexicographic, shape ``(s**n, n)``."""
    if s**n > limit:
        raise EnumerationTooLarge(f"{s}**{n} = {s**n} sequences exceeds the limit {limit}")
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((s,) * n, dtype=np.int64).reshape(n, -1).T


def all_multisets(s: int, n: int, limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Sorted index rows of every multiset of size ``n`` and their multiplicities.

    The multiplicity of a row is the number of orderings of it, i.e. the
    multinomial coefficient ``n! / prod(k_i!)``.
    """
    total = multiset_count(s, n)
    if total > limit:
        raise EnumerationTooLarge(f"{total} multisets of size {n} over {s} outcomes exceeds the limit {limit}")
    rows = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations_with_replacement(range(s), n)),
        dtype=np.int64,
        count=total * n,
    ).reshape(total, n)
    return rows, multiplicities(rows)


def multiplicities(sorted_rows: np.ndarray) -> np.ndarray:
    """Number of distinct orderings of each sorted row."""
    n = sorted_rows.shape[1]
    out = np.full(sorted_rows.shape[0], math.factorial(n), dtype=np.int64)
    if n < 2:
        return out
    run = np.ones(sorted_rows.shape[0], dtype=np.int64)
    for j in range(1, n):
        same = sorted_rows[:, j] == sorted_rows[:, j - 1]
        run = np.where(same, run + 1, 1)
        out //= np.where(same, run, 1)
    return out


def row_products(probs: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """``prod_j probs[rows[:, j]]`` evaluated left to right."""
    if rows.shape[1] == 0:
        return np.ones(rows.shape[0])
    out = probs[rows[:, 0]].copy()
    for j in range(1, rows.shape[1]):
        out *= probs[rows[:, j]]
    return out


def matrix_row_products(matrix: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """``prod_j matrix[rows[:, j], :]`` evaluated left to right; shape ``(len(rows), cols)``."""
    out = matrix[rows[:, 0]].copy()
    for j in range(1, rows.shape[1]):
        out *= matrix[rows[:, j]]
    return out
