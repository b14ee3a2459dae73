"""Synthetic coordinates for molecular graphs.

Chemically informed pairwise distance bounds and a graph-kernel distance
metric stand in for unknown 3D positions; both feed a featurized directed
line graph (distances, angles, basis expansions) for directional
message-passing models.
"""

__version__ = "0.1.0"

from .bounds import (
    AngleBounds,
    BoundsMatrix,
    angle_bounds,
    bond_bounds,
    equilibrium_bond_length,
    estimate_angle,
    molecular_bounds,
    refine_triangle,
    two_hop_bounds,
)
from .featurize import AngleMode, FeaturizeConfig, abf, rbf
from .linegraph import (
    DirectedLineGraph,
    FeaturizedLineGraph,
    attach_payloads,
    build_line_graph,
)
from .molgraph import (
    Atom,
    Bond,
    BondOrder,
    Hybridization,
    MolecularGraph,
    MoleculeError,
    SynCoordWarning,
    infer_hybridization,
    parse_json,
    to_json,
)
from .pprdist import (
    SpprConfig,
    SpprResult,
    angles_from_metric,
    sppr,
    sppr_distance,
    sppr_matrix,
    sppr_series_oracle,
)
from .refnet import RefNetConfig, RefNetOutput, forward
from .smiles import SmilesError, parse_smiles

__all__ = [
    "__version__",
    "Atom",
    "Bond",
    "BondOrder",
    "Hybridization",
    "MolecularGraph",
    "MoleculeError",
    "SynCoordWarning",
    "SmilesError",
    "parse_smiles",
    "parse_json",
    "to_json",
    "infer_hybridization",
    "AngleBounds",
    "BoundsMatrix",
    "equilibrium_bond_length",
    "bond_bounds",
    "estimate_angle",
    "two_hop_bounds",
    "refine_triangle",
    "angle_bounds",
    "molecular_bounds",
    "SpprConfig",
    "SpprResult",
    "sppr",
    "sppr_matrix",
    "sppr_distance",
    "sppr_series_oracle",
    "angles_from_metric",
    "AngleMode",
    "FeaturizeConfig",
    "rbf",
    "abf",
    "DirectedLineGraph",
    "FeaturizedLineGraph",
    "build_line_graph",
    "attach_payloads",
    "RefNetConfig",
    "RefNetOutput",
    "forward",
]
