"""Independent high-precision oracle for the frozen golden values used in the
C++ test suites. Uses mpmath tanh-sinh quadrature on the real segments with
the explicit real integrands; shares no code with the library."""
import mpmath as mp

mp.mp.dps = 40

def V0(x):
    return mp.mpf("0.05") * x**4 - mp.mpf("0.5") * x**2

def roots(E):
    d = mp.sqrt(25 + 20 * E)
    return -mp.sqrt(5 + d), -mp.sqrt(5 - d), mp.sqrt(5 - d), mp.sqrt(5 + d)

def actions(E, W=lambda x: x):
    al, bl, br, ar = roots(E)
    I = mp.quad(lambda x: mp.sqrt(E - V0(x)), [al, bl])
    J = mp.quad(lambda x: mp.sqrt(V0(x) - E), [bl, br])
    dIdE = mp.quad(lambda x: 1 / mp.sqrt(E - V0(x)), [al, bl]) / 2
    # i * dI/deps = i/(2i) * int (E-V)^(-1/2) W = 1/2 int (E-V)^(-1/2) W
    idIde = mp.quad(lambda x: W(x) / mp.sqrt(E - V0(x)), [al, bl]) / 2
    dJdE = -mp.quad(lambda x: 1 / mp.sqrt(V0(x) - E), [bl, br]) / 2
    return dict(I=I, J=J, dIdE=dIdE, idIde=idIde, dJdE=dJdE)

if __name__ == "__main__":
    E = mp.mpf(-1)
    print("roots(-1)", [mp.nstr(r, 17) for r in roots(E)])
    a = actions(E)
    for k, v in a.items():
        print(k, mp.nstr(v, 17))
    print("gamma_slope(-1)", mp.nstr(a["idIde"] / a["dIdE"], 17))
    print("a7(W=x)", mp.nstr(2 * a["idIde"], 17))
    print("a7(W=x^3)", mp.nstr(2 * actions(E, lambda x: x**3)["idIde"], 17))
    print("a7(W=1)", mp.nstr(2 * actions(E, lambda x: 1)["idIde"], 17))
    for e in ["-0.5", "-0.25", "-0.1", "-0.95", "-1.05", "-1.1", "-0.9"]:
        aa = actions(mp.mpf(e))
        print("E", e, "I", mp.nstr(aa["I"], 17), "J", mp.nstr(aa["J"], 17),
              "dIdE", mp.nstr(aa["dIdE"], 17), "idIde", mp.nstr(aa["idIde"], 17))
