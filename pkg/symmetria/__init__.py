"""
Symmetry measures of plane convex polygons.
Axiality, central symmetry and folding symmetry engines, the shape families
and constructions built on them, and exact checks of the related bounds.
"""

__version__ = '0.1.0'
