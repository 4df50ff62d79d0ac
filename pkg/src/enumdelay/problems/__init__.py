from .dag import DagPaths, dag_paths, layered_dag, reaching
from .dnf import DnfOracle, dnf_enumerate, model_count_lower_bound
from .gf2 import (
    EmptySet, Gf2Basis, Gf2Enumerator, NoSolution, OutOfRange, gf2_basis, gf2_enumerate,
    gf2_jth_solution, gf2_sample_uniform, gf2_sampler,
)
from .gray import GrayCode, gray_code
from .records import (
    Dag, DnfFormula, Gf2System, InstanceError, SetSystem, bits_to_mask, bits_to_set,
    mask_to_bits, set_to_bits,
)
from .union import (
    ClosureSaturation, UnionOracle, UnionReverseSearch, UnionSupergraph, avoiding_union,
    children, closure_saturate, is_union_closure_member, parent, union_extension,
    union_flashlight, union_reverse_search, union_supergraph,
)

__all__ = [
    "avoiding_union", "bits_to_mask", "bits_to_set", "children", "closure_saturate",
    "ClosureSaturation", "Dag", "dag_paths", "DagPaths", "dnf_enumerate", "DnfFormula",
    "DnfOracle", "EmptySet", "gf2_basis", "gf2_enumerate", "gf2_jth_solution",
    "gf2_sample_uniform", "gf2_sampler", "Gf2Basis", "Gf2Enumerator", "Gf2System", "gray_code",
    "GrayCode", "InstanceError", "is_union_closure_member", "layered_dag", "mask_to_bits",
    "model_count_lower_bound", "NoSolution", "OutOfRange", "parent", "reaching", "set_to_bits",
    "SetSystem", "union_extension", "union_flashlight", "union_reverse_search",
    "union_supergraph", "UnionOracle", "UnionReverseSearch", "UnionSupergraph",
]
