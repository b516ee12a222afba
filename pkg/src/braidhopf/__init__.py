"""Exact structure-constant verification of finite and degree-capped braided Hopf algebras."""

__version__ = "0.1.0"

from .scalars import Field, Matrix, Scalar, format_scalar, parse_scalar  # noqa: E402
from .hopfcore import FinDimAlgebra, FinDimBialgebra, FinDimCoalgebra, FinDimHopf  # noqa: E402
from .braidedcat import DiagonalObject, YDModule  # noqa: E402
from .braidedhopf import BraidedHopf, build_quasidual, structure_theorem_iso  # noqa: E402
from .gradedengine import GradedBraidedHopf, braided_line, truncated_nichols  # noqa: E402
from .bosonization import bosonize  # noqa: E402
from .zoo import zoo_build, zoo_list  # noqa: E402

__all__ = ["Field", "Matrix", "Scalar", "format_scalar", "parse_scalar", "FinDimAlgebra",
           "FinDimBialgebra", "FinDimCoalgebra", "FinDimHopf", "DiagonalObject", "YDModule",
           "BraidedHopf", "build_quasidual", "structure_theorem_iso", "GradedBraidedHopf",
           "braided_line", "truncated_nichols", "bosonize", "zoo_build", "zoo_list"]
