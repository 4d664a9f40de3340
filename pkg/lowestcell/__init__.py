from lowestcell.gamma import GammaElement, LaurentElement, NEG_INF, POS_INF
from lowestcell.root_data import RootDatum, WeylGroup
from lowestcell.affine_weyl import AffineElement, CellDatum
from lowestcell.hecke import HeckeAlgebra, HeckeElement
from lowestcell.kl_table import KLTable
from lowestcell.cells import LowestCell, AsymptoticData
from lowestcell.cell_property import BaseCellProperty, CellReport, verify_property, verify_properties
from lowestcell.based_ring import BasedRing, J0Element, JRingHomomorphism, RepRingElement
from lowestcell.spectra import ScalarField, Specialization, Spectra, TorusPoint
