"""Exact models of diagonalizable group representation categories.

Core pieces: finitely generated abelian character groups, exact linear
algebra over Q and F_p, parenthesization trees with their bit codec, the
canonical weight-multiset model and its 27-axiom fragment checker, and the
Laurent-polynomial machinery for stabilizer polynomials and defining degrees
of closed subgroups of GL_n.
"""

__version__ = "0.1.0"
