"""Tour of the convex function catalog and its conjugate pairs.

Every member is a separable Legendre-type function on an open box: it
stores its value, gradient, and diagonal Hessian, and its convex conjugate
is again a catalog member.  The gradient maps the open domain bijectively
onto the conjugate's domain, with the conjugate gradient as the inverse.
"""

import numpy as np

from bregfar import CustomScalar, energy, p_power, separable_custom, shannon


def banner(text):
    print()
    print(text)
    print("-" * len(text))


rng = np.random.default_rng(2024)

banner("The catalog at a glance")
for f in (energy(2), shannon(2), p_power(1.5, 2), p_power(4, 2)):
    x = np.array([1.0, 0.5])
    print(f"{f.describe()['kind']:>8}  f(1,0.5) = {f.value(x):.6f}   "
          f"grad = {np.round(f.gradient(x), 6)}")

banner("Conjugates come in closed form")
f = shannon(1)
g = f.conjugate()
x = np.array([np.e])
print("negative entropy at e:   ", f.value(x))
print("its conjugate is sum-exp; g(1) =", g.value(np.array([1.0])))
print("double conjugate is the original object again:",
      g.conjugate() is f)

banner("Gradient round trips")
for f in (energy(3), shannon(3), p_power(4, 3)):
    if f.kind == "shannon":
        x = rng.uniform(0.1, 3.0, 3)
    else:
        x = rng.uniform(-2.0, 2.0, 3)
    back = f.conjugate_gradient(f.gradient(x))
    print(f"{f.describe()['kind']:>8}  |grad_inv(grad(x)) - x| = "
          f"{np.linalg.norm(back - x):.2e}")

banner("Fenchel-Young holds with equality along the gradient graph")
f = p_power(1.5, 2)
x = np.array([0.7, -1.2])
s = f.gradient(x)
gap = f.value(x) + f.conjugate_value(s) - float(s @ x)
print("f(x) + f*(s) - <s,x> =", f"{gap:.2e}", "(s = grad f(x))")

banner("Custom scalar members fall back to a safeguarded numeric inverse")
# an entropy-like member supplied programmatically, without a closed-form
# conjugate: t ln t - t on (0, inf)
phi = CustomScalar(
    value_fn=lambda t: np.where(t > 0, t * np.log(np.maximum(t, 1e-300)) - t,
                                np.where(t == 0, 0.0, np.inf)),
    deriv_fn=np.log,
    second_deriv_fn=lambda t: 1.0 / t,
    lower=0.0,
    seed=1.0,
    name="xlogx",
)
custom = separable_custom(phi, 1)
x = np.array([1.7])
s = custom.gradient(x)
print("numeric inverse recovers x:", custom.conjugate_gradient(s),
      "(expected", x, ")")
print("conjugate value matches exp(s):",
      f"{custom.conjugate_value(s):.9f} vs {float(np.exp(s)):.9f}")
