"""Finite group engine and integral group ring layer for normalizer
property certification.

The package decides NP(H <= G, Z), the statement that every unit of the
integral group ring ZG normalizing a subgroup H acts on H like a group
element, and its quantified form SNP(G, Z) over all subgroups, by a chain
of proof-carrying criteria.  A bundled catalog covers every isomorphism
type of order at most 47.
"""

from .errors import (
    BadClassError,
    BadDegreeError,
    CapExceededError,
    CatalogError,
    CatalogWarning,
    GroupMismatchError,
    InconsistentPresentationError,
    NoFixedPointError,
    NormpropError,
    NotAbelianError,
    NotAUnitError,
    NotNormalError,
    NotNormalizingError,
    SpecParseError,
)
from .groups import (
    FiniteGroup,
    Permutation,
    Subgroup,
    center,
    centralizer,
    class_of,
    closure,
    conjugacy_classes,
    derived_subgroup,
    direct_product,
    element_order,
    from_generators,
    from_table,
    is_normal,
    normalizer,
    parse_cycles,
    quotient,
    subgroup_as_group,
    subgroup_from,
    trivial_subgroup,
    whole_subgroup,
)

__version__ = "0.1.0"
