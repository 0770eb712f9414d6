"""Exact computations around character-table sparsity for finite groups of Lie type.

Modules:

* ``ff``, ``poly``: finite fields and monic polynomials over them.
* ``families``: the families L, U and O of characteristic polynomials.
* ``grouparith``: classical group orders, centralizers, Zsigmondy primes.
* ``combinat``: partitions, unipotent counts, symbols, growth probes.
* ``cyclo``: cyclotomic integers.
* ``chartab``: character tables and the sparsity statistic.
* ``bruteforce``: exhaustive small matrix groups used as an oracle.
* ``cli``: the ``charsparse`` command.
"""

__version__ = "0.1.0"
