from typing import Tuple


def basis_label(index: int) -> str:
    """
    Computational-basis label of a three-qubit index, qubit 1 most significant:
    0 -> "000", 1 -> "001", ..., 5 -> "101", 7 -> "111".
    """
    if not 0 <= index < 8:
        raise IndexError(f"basis index out of range: {index}")
    return format(index, "03b")


def basis_index(label: str) -> int:
    """Inverse of basis_label; accepts "101" or "|101>"."""
    bits = label.strip("|> ")
    if len(bits) != 3 or set(bits) - {"0", "1"}:
        raise ValueError(f"not a three-qubit basis label: {label!r}")
    return int(bits, 2)


def qubit_bits(index: int) -> Tuple[int, int, int]:
    """Occupation (q1, q2, q3) of a basis index."""
    return (index >> 2) & 1, (index >> 1) & 1, index & 1

