"""Exact computations with modules over F4[Q8] and F4[G24]: endotriviality,
Ext and Massey products, Morava-stabilizer coactions and Hecke operators."""

__version__ = "0.1.0"
