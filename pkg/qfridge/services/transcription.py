# qfridge/services/transcription.py
"""
Hand-transcribed rate equations, kept as a cross-check of the derived W.

The coefficients below are copied term by term from the published form of
the ten coupled equations, including the factors of i that appear on the
g c_I terms and the constant term of the c_R equation (read as the c_R
self-coefficient). compare_transcription() lists every coefficient where
the transcription and the generator-derived W disagree.
"""

from dataclasses import dataclass
from typing import Dict, List, Set

import numpy as np

from ..models.operators import BasisConvention, WMatrix
from ..models.params import RateSet
from .rates import rates

_IX = {name: k for k, name in enumerate(BasisConvention.COORDINATES)}


@dataclass(frozen=True)
class TranscriptionEntry:
    row: str
    col: str
    printed: complex
    derived: float
    match: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "row": self.row,
            "col": self.col,
            "printed_re": self.printed.real,
            "printed_im": self.printed.imag,
            "derived": self.derived,
            "match": self.match,
        }


def transcribed_w(rs: RateSet, alpha: float, g: float) -> np.ndarray:
    """Printed coefficients as a complex 10x10 array over BasisConvention.COORDINATES."""
    u1, u2, u3 = rs.gamma_up
    d1, d2, d3 = rs.gamma_down
    a, a2 = alpha, alpha ** 2
    total = u1 + u2 + u3 + d1 + d2 + d3
    w = np.zeros((10, 10), dtype=complex)

    def put(row: str, **terms: complex) -> None:
        for col, value in terms.items():
            w[_IX[row], _IX[col]] += value

    put("p000", p100=d1, p010=d2, p001=d3, p000=-(u1 + u2 + u3))
    put("p001", p101=d1, p011=d2, p000=u3, p001=-(u1 + u2 + d3))
    put(
        "p100",
        p000=u1, p110=d2, p010=a2 * d3, p101=d3, c_R=2 * a * d3,
        p100=-(d1 + u2 + (a2 + 1) * u3),
    )
    put(
        "p101",
        p000=u2, p001=a2 * u1, p100=a2 * u3, p011=d3, p110=d1, p111=a2 * d2,
        c_I=-2j * g, c_R=-a * total,
        p010=-(u1 + d2 + u3 + a2 * (d1 + u2 + d3)),
    )
    put(
        "p010",
        p000=a2 * u2, p001=u1, p100=u3, p011=a2 * d3, p110=a2 * d1, p111=d2,
        c_I=2j * g, c_R=-a * total,
        p010=-(a2 * (u1 + d2 + u3) + d1 + u2 + d3),
    )
    put(
        "c_R",
        p000=a * u2, p001=a * u1, p100=a * u3, p011=a * d3, p110=a * d1, p111=a * d2,
        p010=-a * total, p101=-a * total,
        c_R=-(a2 + 1) * total,
    )
    put("c_I", p101=1j * g, p010=-1j * g)
    put(
        "p011",
        p111=d1, p001=u2, p101=a2 * u3, p010=u3, c_R=2 * a * u3,
        p011=-(u1 + d2 + (a2 + 1) * d3),
    )
    put("p110", p010=u1, p100=u2, p111=d3, p110=-(d1 + d2 + u3))
    put("p111", p011=u1, p101=u2, p110=u3, p111=-(d1 + d2 + d3))
    return w


def compare_transcription(w: WMatrix, tol: float = 1e-12) -> List[TranscriptionEntry]:
    """
    One entry per coefficient that is nonzero in either form, row-major.

    match is |printed - derived| <= tol * max|W|.
    """
    printed = transcribed_w(rates(w.machine, w.baths), w.alpha, w.machine.g)
    derived = w.as_dict()
    scale = tol * max(np.abs(w.matrix).max(), 1.0)
    names = BasisConvention.COORDINATES
    entries = []
    for r, row in enumerate(names):
        for c, col in enumerate(names):
            p, d = complex(printed[r, c]), derived[row][col]
            if abs(p) <= scale and abs(d) <= scale:
                continue
            entries.append(TranscriptionEntry(row, col, p, d, abs(p - d) <= scale))
    return entries


def mismatched_rows(entries: List[TranscriptionEntry]) -> Set[str]:
    return {e.row for e in entries if not e.match}
