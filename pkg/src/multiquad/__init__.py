"""Exact arithmetic for multiquadratic number fields.

Radicand-list calculus, quadratic class numbers and fundamental units,
exact field elements, unit groups and unit indices, ramification data,
Kuroda's class number formula, and the classification pipelines for
imaginary n-quadratic fields with class number 1.
"""

import os

from .classify import (
    CandidateSet,
    ClassificationReport,
    candidates_n3,
    classify_n1,
    classify_n2,
    classify_n3,
    classify_n4,
    classify_n5_and_up,
    full_report,
)
from .elements import Element, Field, get_field, is_integral, min_poly, sqrt_in_field
from .errors import DatasetError, InconsistencyError, MultiquadError, PrecisionError
from .kuroda import (
    ClassNumberResult,
    KurodaDecomposition,
    P_product,
    big_kuroda,
    class_number_field,
    decompose,
    h_lower_bound,
    intermediate_fields,
    kuroda_general,
    nu,
    small_kuroda,
)
from .quadratic import (
    FundamentalUnit,
    analytic_class_number,
    class_number,
    discriminant,
    fundamental_unit,
    imaginary_with_class_number,
    mouhib_trivial_2class,
    unit_norm,
)
from .radicands import (
    FieldId,
    canonical_primitive,
    complete_list,
    field_id,
    fields_equal,
    is_primitive,
    parse_radicands,
    to_negative_form,
    to_p_headed,
    to_standard_form,
)
from .ramify import (
    BaseChoice,
    DiscriminantData,
    InertiaData,
    base_choices,
    choose_base_subfield,
    frolich_even_gate,
    inertia_field,
    multiquad_discriminant,
    ramified_primes,
)
from .units import (
    TorsionGroup,
    UnitSystem,
    compute_unit_system,
    dataset_path,
    dump_unit_dataset,
    independence_rank,
    kubota_real_biquadratic_units,
    load_unit_dataset,
    torsion_units,
    unit_index,
    verify_unit,
)

__version__ = "0.1.0"


def default_data_dir() -> str:
    """Directory of the bundled octic unit datasets."""
    return os.path.join(os.path.dirname(__file__), "data", "units")
