"""Normality of Schubert varieties in affine Grassmannians, decided exactly.

The package splits into small exact-arithmetic layers: integer lattices,
root systems and isogeny lattices, the dominance order with its cover
relations, Levi subdiagram analysis, the rank-1 slice coordinate rings,
and two independent normality deciders (a closed-form classification
oracle and a certificate-producing rule engine).
"""

from __future__ import annotations

__version__ = "0.1.0"
