"""Exact computations around the Fano scheme of lines of a quartic sixfold:
Bott cohomology on Grassmannians, Koszul pages, Griffiths residues, the
explicit 4-form and its GL(7)-orbit, and Pfaffian pencils."""

__version__ = "0.1.0"
