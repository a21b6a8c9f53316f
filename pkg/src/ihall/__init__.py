"""Exact-arithmetic verification engine for braid-group symmetries on
quasi-split iquantum groups, their iHall-algebra models over finite fields,
reflection functors, and the supporting quantum binomial identities."""

__version__ = "0.1.0"
