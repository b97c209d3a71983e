"""Flag complexes, m-location, minimal filling diagrams and isoperimetric checks."""

from .core import (ComplexError, FlagComplex, canonical_cycle, common_neighbors, distance,
                   is_full_cycle, tighten)
from .disc import (InvalidDiscError, NonFlagDiscError, SimplicialDisc, Violation,
                   as_flag_complex, enclosed_area, validate_disc)
from .filling import BudgetExhausted, FillingDiagram, VertexMap, minimal_filling
from .location import check_m_location, enumerate_full_cycles, verify_lemma_3_6
from .bounds import (companion_path, fan_decomposition, min_area_companion_oracle,
                     shortest_path, verify_quadratic_bound)
from .generators import filter_7_located, gen_named, gen_random_disc

__version__ = "0.1.0"
