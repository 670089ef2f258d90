"""Yamada polynomials of abstract graphs and spatial graph diagrams."""

from .ring import A, ONE, ZERO, LaurentPoly, RationalFunction, eval_complex, mirror, parse_poly, rf_reduce, sigma
from .graph import MultiGraph, family, parse_graph, serialize_graph
from .hpoly import h_closed, h_definition, h_delcon, h_poly, h_two_vertex_join
from .chainpoly import chain_definition, chain_recursive, compose_h_via_chain, flow_poly, replacement_data
from .diagram import SpatialDiagram, infinity_minus, infinity_plus, mirror_diagram, parse_diagram, serialize_diagram
from .yamada import FamilySpec, build_replaced_diagram, r_replace, r_state_sum, r_uniform
from .config import Config

__version__ = "0.1.0"
