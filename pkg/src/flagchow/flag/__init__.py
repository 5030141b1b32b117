"""Concrete flag varieties and quadrics, and checks over them."""
from .catalogue import (BTable, CatalogueEntry, catalogue, catalogue_keys, grothendieck_quotient,
                        so_fibre, so_odd_gp, so_odd_gt, torus_ring, type_I_data)
from .e8 import E8Report, e8_consistency, f4_lift_degrees
from .quadrics import (QuadricResult, QuadricSpec, ZProduct, pfister_max, pfister_min, quadric_degv_table,
                       quadric_embedding_bounds, quadric_formula, quadric_presentation, quadric_qx,
                       split_quadric, vishik_membership, z_product)
from .twisted import AdditiveReport, TwistedResult, psz_additive_check, type_I_twisted
