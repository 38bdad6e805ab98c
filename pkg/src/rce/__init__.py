"""Semantics workbench for a call-by-value language with higher-order
references, locally declared exceptions and first-class continuations.

The package provides:

- ``syntax``/``parser``/``typecheck``: abstract and concrete syntax for the
  language and its fragments, with a bidirectional typechecker.
- ``machine``: small-step operational semantics with evaluation-context
  decomposition and a fueled driver.
- ``translations``: the exception-passing and CPS source-to-source passes
  with differential soundness checks.
- ``arena``: arenas, exception arenas, families and the type denotations.
- ``plays``: justified/control sequences, bracketing and locality
  predicates, restriction, the K map and the factorization maps.
- ``strategy``: strategies as next-move oracles, composition, the hat and
  tilde lifts, built-in effect strategies and compositional denotation.
- ``cli``: the command-line driver.
"""

__version__ = "0.1.0"
