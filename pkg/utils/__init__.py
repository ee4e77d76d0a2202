# Utils module: exact polynomials, the expression parser and tensor calculus
