# Lowest-cell property checks, registered by id on import.
from lowestcell.implementations.cell_properties import (
    LowerBoundOnDelta,
    InverseOnInvolutions,
    UniqueInvolution,
    LowestCellIsALevel,
    InvolutionCoefficientOne,
    InvolutionsSquareToOne,
    CyclicSymmetry,
    LeftCellMatching,
    OneInvolutionPerLeftCell,
    TensorIdentity,
    BoxDegreeBound,
    QuarterDegreeBound,
    FlatDuality,
    LeftPreorderConsistency,
)
