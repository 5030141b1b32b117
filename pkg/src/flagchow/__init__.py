"""Chow rings of twisted flag varieties and their motivic invariants."""
