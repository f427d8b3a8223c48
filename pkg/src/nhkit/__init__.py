"""nhkit: the (2+1)-dimensional extended Newton-Hooke symmetry, end to end.

Subpackages cover the Lie-algebra structure tables and contractions
(`algebra`), the extended group law and space-time action (`group`), the
coadjoint action with its orbit classification (`coadjoint`), classical
oscillator dynamics on the f=0 orbits (`dynamics`), a truncated Hermite
spectral engine (`funcspace`), the full set of induced unitary irreducible
representations (`representations`), phase-space quantization through a
parity-built kernel (`moyal`), and a scenario-driven CLI (`cli`).
"""

__version__ = "0.1.0"

from .group import GroupElement, Variant, Vec2, act_spacetime, compose, inverse
from .coadjoint import DualPoint, OrbitClass, classify, coad, invariants

__all__ = [
    "GroupElement",
    "Variant",
    "Vec2",
    "act_spacetime",
    "compose",
    "inverse",
    "DualPoint",
    "OrbitClass",
    "classify",
    "coad",
    "invariants",
    "__version__",
]
