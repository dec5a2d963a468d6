"""Clifford codes from normal subgroups of finite error groups.

Exact construction and machine verification of quantum codes defined as
homogeneous components of a restricted group representation, with the
reduction to stabilizer (joint eigenspace) form for abelian index groups,
plus an exhaustive code search over small groups.
"""

from .cyclo import CycNum, format_cyc, set_conductor_cap
from .matrices import CycMatrix
from .group import (FiniteGroup, Subgroup, centralizer, cosets,
                    group_invariants, normal_subgroups, subgroup_generate)
from .chartab import (Character, IsotypicComponent, char_predicates,
                      conjugate_character, extract_linear_on_center,
                      inner_product, isotypic_decomposition,
                      projector_from_character, restricted_character)
from .rep import (UnitaryRep, builtin_group, element_label, group_closure,
                  load_group_file, parse_element, rep_from_spec, rep_restrict,
                  subgroup_from_tokens, verify_error_group)
from .clifford import (CliffordCode, CorrectableResult, InertiaResult,
                       ReductionResult, StabilizerForm, codes_for_subgroup,
                       correctable, detects, detects_by_projector, distance,
                       inertia_group, make_clifford_code, stabilizer_code,
                       stabilizer_reduction, theta_and_zw,
                       verify_dimension_identities, verify_lemma_suite)
from .search import CodeRecord, best_codes_report, enumerate_codes, pareto_front
from .errors import (CliffError, ClosureCapError, ConductorCapError,
                     DomainError, EnumerationCapError, NonUnitaryError,
                     SnapFailure, TheoremViolation, UsageError)

__version__ = "0.1.0"
