"""Catalog of algebraic solutions stored as canonical fixtures."""

from .branching import BranchPattern, BranchingError, branching
from .cascade import (CascadeResult, check_all_cascades, check_cascade, check_hyperelliptic_form,
                      complement_forms_check)
from .entries import (CatalogEntry, CatalogError, catalog_ids, entry_from_source, entry_from_text,
                      entry_to_text, load_catalog, load_entry, write_fixtures)
from .roundtrip import hitchin_round_trip
from .verification import degree_check, type39_chain, verify_catalog, verify_entry

__all__ = ["CatalogEntry", "CatalogError", "catalog_ids", "entry_from_source", "entry_from_text",
           "entry_to_text", "load_catalog", "load_entry", "write_fixtures", "BranchPattern",
           "BranchingError", "branching", "CascadeResult", "check_cascade", "check_all_cascades",
           "check_hyperelliptic_form", "complement_forms_check", "hitchin_round_trip", "verify_entry",
           "verify_catalog", "type39_chain", "degree_check"]
