"""Six-term exact sequences of finitely generated abelian groups, their
homomorphism and extension groups, and coefficient (Bockstein) invariants."""

from .abelian import FGAbelianGroup, GroupHom, cyclic, direct_sum, exists_epimorphism, exists_monomorphism
from .coeff import TotalSixInvariant, hom_lambda, validate
from .homalg import ext1, extension_middles, split_test
from .matrix import IntMatrix, hermite_normal_form, smith_normal_form
from .sixcomplex import SixTermComplex, check_exact, ext1_z6, hom_z6, suspend

__all__ = [
    "FGAbelianGroup", "GroupHom", "IntMatrix", "SixTermComplex", "TotalSixInvariant",
    "check_exact", "cyclic", "direct_sum", "exists_epimorphism", "exists_monomorphism",
    "ext1", "ext1_z6", "extension_middles", "hermite_normal_form", "hom_lambda", "hom_z6",
    "smith_normal_form", "split_test", "suspend", "validate",
]
