"""Symbolic check of the p = -1 solution family phi = a cos(theta - t0) + b.

Substitutes the family into

    phi^(-p) (phi'' - phi'^2/(2 phi) + (phi - 1/phi)/2) = gamma

at p = -1 and solves for the constraint between a, b and gamma. Also checks
that the integrand of

    int (phi'' - phi'^2/phi)(phi'' - phi'^2/(2 phi) + (phi - 1/phi)/2) dtheta

integrates to zero on the family. Run with `python3 p_minus_one_family.py`.
"""

import sympy as sp

theta, t0 = sp.symbols("theta theta0", real=True)
a, b, gamma = sp.symbols("a b gamma", positive=True)

phi = a * sp.cos(theta - t0) + b
d1 = sp.diff(phi, theta)
d2 = sp.diff(phi, theta, 2)
bracket = d2 - d1**2 / (2 * phi) + (phi - 1 / phi) / 2

lhs = sp.simplify(phi * bracket)  # phi^(-p) with p = -1
print("phi * bracket =", lhs)
assert sp.simplify(sp.diff(lhs, theta)) == 0, "left side is not constant"

gamma_expr = sp.simplify(lhs)
print("gamma =", gamma_expr)
b_solution = sp.solve(sp.Eq(gamma_expr, gamma), b)
print("b =", b_solution)
assert sp.simplify(b_solution[0] - sp.sqrt(1 + 2 * gamma + a**2)) == 0
print("constraint: b = sqrt(1 + 2 gamma + a^2), i.e. b^2 - a^2 = 1 + 2 gamma")

hk = (d2 - d1**2 / phi) * bracket
hk_value = sp.simplify(sp.integrate(hk.subs(t0, 0).subs(b, sp.Rational(5, 2)).subs(a, sp.Rational(3, 2)), (theta, 0, 2 * sp.pi)))
print("HK integral at a=3/2, b=5/2:", hk_value)
assert hk_value == 0
print("gamma at a=3/2, b=5/2:", gamma_expr.subs({a: sp.Rational(3, 2), b: sp.Rational(5, 2)}))
