"""Leading-order gate and qubit counts for the indexing circuits.

Counts are the dominant asymptotic term with unit constant, using
``ceil(log2 n)``-bit registers.  They are order-of-magnitude estimates for
comparing circuits and sizes, not compiled gate totals.
"""

from __future__ import annotations

from .errors import ParameterError

CIRCUITS = (
    "combination-bitstring",
    "combination-list",
    "permutation-lehmer",
    "binom-fixed-k",
    "binom-fixed-n",
    "adder",
    "comparator",
)


def clog2(n: int) -> int:
    """``ceil(log2 n)`` for ``n >= 1``, exact on integers."""
    return (n - 1).bit_length()


def _check(n, k):
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    if not 0 <= k <= n:
        raise ParameterError(f"need 0 <= k <= n, got k={k}")


def gate_count(circuit: str, n: int, k: int = 0) -> int:
    """Dominant gate-count term.

    ``binom-fixed-k`` is the ``C(x, m)`` evaluator (``k log n``),
    ``binom-fixed-n`` the ``C(m, x)`` evaluator (``n log n``).
    """
    _check(n, k)
    b = clog2(n)
    if circuit == "combination-bitstring":
        return n * k * b
    if circuit == "combination-list":
        return k * k * b
    if circuit == "permutation-lehmer":
        return n * n * b
    if circuit == "binom-fixed-k":
        return k * b
    if circuit == "binom-fixed-n":
        return n * b
    if circuit in ("adder", "comparator"):
        return b
    raise ParameterError(f"unknown circuit {circuit!r}; choose from {CIRCUITS}")


def qubit_count(circuit: str, n: int, k: int = 0) -> int:
    """Width of the input register holding the object."""
    _check(n, k)
    b = clog2(n)
    if circuit == "combination-bitstring":
        return n
    if circuit == "combination-list":
        return k * b
    if circuit == "permutation-lehmer":
        return n * b
    if circuit in CIRCUITS:
        return b
    raise ParameterError(f"unknown circuit {circuit!r}; choose from {CIRCUITS}")


def compare_representations(n: int, k: int, threshold: float = 1.0) -> dict:
    """Choose between the bitstring and element-list encodings of k-combinations.

    The bitstring wins once ``k >= threshold * n`` (k proportional to n);
    otherwise the list encoding is recommended.
    """
    _check(n, k)
    choice = "bitstring" if k >= threshold * n else "list"
    return {
        "n": n,
        "k": k,
        "recommended": choice,
        "bitstring_gates": gate_count("combination-bitstring", n, k),
        "list_gates": gate_count("combination-list", n, k),
        "bitstring_qubits": qubit_count("combination-bitstring", n, k),
        "list_qubits": qubit_count("combination-list", n, k),
    }


def resource_table(n: int, k: int = 0, circuits=CIRCUITS) -> list[dict]:
    return [
        {"circuit": c, "n": n, "k": k, "gates": gate_count(c, n, k), "qubits": qubit_count(c, n, k)}
        for c in circuits
    ]
