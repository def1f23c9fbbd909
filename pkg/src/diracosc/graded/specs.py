"""Built-in algebra presentations and auxiliary relation sets.

Presentations (``builtin_specs``) carry a generator basis with degrees and are
checked for closure.  Relation sets (``relation_sets``) are bare identity
lists over registry operators (``closure=None``) used for the interleave,
Hamiltonian and witness relations.

Where a printed table entry disagrees with direct computation, ``rhs`` holds
the verified form and ``printed`` the table form; ``literal=True`` in
``verify_algebra`` checks the printed one.
"""

from typing import Dict, List

from .schema import SIGNS, AlgebraSpec, RelationSchema as R

S1 = (("x", SIGNS),)
S2 = (("x", SIGNS), ("y", SIGNS))
S3 = (("e", SIGNS), ("z", SIGNS), ("x", SIGNS))
J3 = (("j", (1, 2, 3)),)
JK3 = (("j", (1, 2, 3)), ("k", (1, 2, 3)))
J2 = (("j", (1, 2)),)

SQ1 = "sqrt(2*m*omega)"
SQ2 = "sqrt(4*m*omega)"


# ------------------------------------------------------------------- 1 + 1

def bfa11() -> AlgebraSpec:
    gens = (("Id", "0"), ("b-", "0"), ("b+", "0"), ("s-", "1"), ("s+", "1"))
    rels = (
        R("[b-,b+]", "(comm b- b+)", (("1", "Id"),)),
        R("{s-,s+}", "(acomm s- s+)", (("1", "Id"),)),
        R("{s,s}", "(acomm s{x:s} s{x:s})", (), S1),
        R("[b,s]", "(comm b{x:s} s{y:s})", (), S2),
    )
    return AlgebraSpec("bfa(1|1)", 1, 1, gens, rels, "span",
                       description="boson-fermion Lie superalgebra of the 1D ladders")


def pso32() -> AlgebraSpec:
    gens = (("Hsch", "00"), ("Sc", "00"), ("b-^2", "00"), ("b+^2", "00"),
            ("b-s-", "01"), ("b+s+", "01"), ("b-s+", "01"), ("b+s-", "01"),
            ("b-", "10"), ("b+", "10"), ("s-", "11"), ("s+", "11"))
    rels = (
        R("{b-,b+}", "(acomm b- b+)", (("2/omega", "Hsch"),), printed=(("2", "Hsch"),),
          flags=("corrected",), note="printed form assumes omega = 1"),
        R("[s-,s+]", "(comm s- s+)", (("-2", "Sc"),)),
        R("{b,s}", "(acomm b{x:s} s{y:s})", (("2", "b{x:s}s{y:s}"),), S2, flags=("expanded",)),
        R("[Hsch,Sc]", "(comm Hsch Sc)"),
        R("[Hsch,b]", "(comm Hsch b{x:s})", (("x*omega", "b{x:s}"),), S1),
        R("[Hsch,s]", "(comm Hsch s{x:s})", (), S1),
        R("[Sc,b]", "(comm Sc b{x:s})", (), S1),
        R("[Sc,s]", "(comm Sc s{x:s})", (("x", "s{x:s}"),), S1),
        R("[bs,b]", "(comm b{e:s}s{z:s} b{x:s})", (("(x-e)/2", "s{z:s}"),), S3),
        R("{bs,s}", "(acomm b{e:s}s{z:s} s{x:s})", (("Abs(x-z)/2", "b{e:s}"),), S3),
    )
    products = (("b-^2", "b-", "b-"), ("b+^2", "b+", "b+")) + tuple(
        (f"b{x}s{y}", f"b{x}", f"s{y}") for x in "-+" for y in "-+")
    return AlgebraSpec("pso(3|2)", 1, 2, gens, rels, "span", products=products,
                       description="Z2xZ2-graded colour Lie superalgebra of the 1D ladders")


_DEG_1D = (("b-", "10"), ("b+", "10"), ("s-", "11"), ("s+", "11"), ("H0", "01"),
           ("Hsch", "00"), ("Sc", "00"), ("Id", "00"))


def interleave_1d() -> AlgebraSpec:
    rels = (
        R("{H,s}", "(acomm H s{x:s})", ((SQ1, "b{x:s}"),), S1),
        R("[H,b]", "(comm H b{x:s})", ((f"x*{SQ1}", "s{x:s}"),), S1),
    )
    return AlgebraSpec("interleave-1d", 1, 2, (), rels, None, aux=_DEG_1D,
                       description="ladder relations with the full Hamiltonian")


def hamiltonian_1d() -> AlgebraSpec:
    rels = (
        R("[H^2,b]", "(comm H^2 b{x:s})", (("2*x*m*omega", "b{x:s}"),), S1),
        R("[H^2,s]", "(comm H^2 s{x:s})", (("2*x*m*omega", "s{x:s}"),), S1),
        R("H^2", "H^2", (("2*m", "Hsch"), ("2*m*omega", "Sc"), ("m**2", "Id")),
          printed=(("2*m", "Hsch"), ("-2*m*omega", "Sc"), ("m**2", "Id")), flags=("corrected",),
          note="printed sign of the Sc term is reversed"),
        R("H", "H", ((SQ1, "b+s-"), (SQ1, "b-s+"), ("-2*m", "Sc"))),
        R("H0", "H0", ((SQ1, "b+s-"), (SQ1, "b-s+"))),
        R("{H0,H0}", "(acomm H0 H0)", (("4*m", "Hsch"), ("4*m*omega", "Sc"))),
        R("{H0,H0}=2H0^2", "(acomm H0 H0)", (("2", "(mul H0 H0)"),)),
        R("[H0,b]", "(comm H0 b{x:s})", ((f"x*{SQ1}", "s{x:s}"),), S1),
        R("{H0,s}", "(acomm H0 s{x:s})", ((SQ1, "b{x:s}"),), S1),
        R("[Hsch,H0]", "(comm Hsch H0)", ((f"omega*{SQ1}", "b+s-"), (f"-omega*{SQ1}", "b-s+")),
          printed=((SQ1, "b+s-"), (f"-{SQ1}", "b-s+")), flags=("corrected",),
          note="printed form assumes omega = 1"),
        R("[Sc,H0]", "(comm Sc H0)", ((f"-{SQ1}", "b+s-"), (SQ1, "b-s+"))),
    )
    return AlgebraSpec("hamiltonian-1d", 1, 2, (), rels, None, aux=_DEG_1D,
                       description="H, H^2 and the shifted Hamiltonian H0 in 1D")


# ------------------------------------------------------------------- 1 + 2

def bfa21() -> AlgebraSpec:
    gens = (("Id", "0"), ("a1-", "0"), ("a1+", "0"), ("c1-", "0"), ("c1+", "0"),
            ("s1-", "1"), ("s1+", "1"))
    rels = (
        R("{s1-,s1+}", "(acomm s1- s1+)", (("1", "Id"),)),
        R("[a1-,a1+]", "(comm a1- a1+)", (("1", "Id"),)),
        R("[c1-,c1+]", "(comm c1- c1+)", (("1", "Id"),)),
        R("{s1,s1}", "(acomm s1{x:s} s1{x:s})", (), S1),
        R("[a1,c1]", "(comm a1{x:s} c1{y:s})", (), S2),
        R("[a1,s1]", "(comm a1{x:s} s1{y:s})", (), S2),
        R("[c1,s1]", "(comm c1{x:s} s1{y:s})", (), S2),
    )
    return AlgebraSpec("bfa(2|1)", 2, 1, gens, rels, "span",
                       description="boson-fermion Lie superalgebra of the j=1 chiral ladders")


def pso34(tag: str) -> AlgebraSpec:
    """pso+(3|4) for ``tag='p'`` and pso-(3|4) for ``tag='m'``."""
    if tag not in ("p", "m"):
        raise ValueError(f"tag must be 'p' or 'm', got {tag!r}")

    def t(s):
        return s.replace("@", tag)

    gens = [(t("H_@"), "00"), (t("CLS_@"), "00"), (t("Sc_@"), "00")]
    gens += [(t(f"{f}{x}^2_@"), "00") for f in "ac" for x in "-+"]
    gens += [(t(f"a{x}c{y}_@"), "00") for x, y in (("-", "-"), ("+", "+"), ("-", "+"), ("+", "-"))]
    gens += [(t(f"{f}{x}s{y}_@"), "01") for f in "ac"
             for x, y in (("-", "-"), ("+", "+"), ("-", "+"), ("+", "-"))]
    gens += [(t(f"{f}{x}_@"), "10") for f in "ac" for x in "-+"]
    gens += [(t(f"s{x}_@"), "11") for x in "-+"]

    rels = [
        R("[H,C]", t("(comm H_@ CLS_@)")),
        R("[H,Sc]", t("(comm H_@ Sc_@)")),
        R("[C,Sc]", t("(comm CLS_@ Sc_@)")),
        R("[H,a]", t("(comm H_@ a{x:s}_@)"), (("x*omega", t("a{x:s}_@")),), S1),
        R("[C,a]", t("(comm CLS_@ a{x:s}_@)"), (("x", t("a{x:s}_@")),), S1),
        R("[H,c]", t("(comm H_@ c{x:s}_@)"), (("x*omega", t("c{x:s}_@")),), S1),
        R("[C,c]", t("(comm CLS_@ c{x:s}_@)"), (("-x", t("c{x:s}_@")),), S1),
        R("[C,s]", t("(comm CLS_@ s{x:s}_@)"), (), S1),
        R("[Sc,s]", t("(comm Sc_@ s{x:s}_@)"), (("x", t("s{x:s}_@")),), S1),
        R("[Sc,a]", t("(comm Sc_@ a{x:s}_@)"), (), S1),
        R("[Sc,c]", t("(comm Sc_@ c{x:s}_@)"), (), S1),
        R("[H,s]", t("(comm H_@ s{x:s}_@)"), (), S1),
        R("{a-,a+}", t("(acomm a-_@ a+_@)"), (("1/omega", t("H_@")), ("1", t("CLS_@")))),
        R("{c-,c+}", t("(acomm c-_@ c+_@)"), (("1/omega", t("H_@")), ("-1", t("CLS_@")))),
        R("[s-,s+]", t("(comm s-_@ s+_@)"), (("-2", t("Sc_@")),)),
        R("{a,c}", t("(acomm a{x:s}_@ c{y:s}_@)"), (("2", t("a{x:s}c{y:s}_@")),), S2, flags=("expanded",)),
        R("{a,s}", t("(acomm a{x:s}_@ s{y:s}_@)"), (("2", t("a{x:s}s{y:s}_@")),), S2, flags=("expanded",)),
        R("{c,s}", t("(acomm c{x:s}_@ s{y:s}_@)"), (("2", t("c{x:s}s{y:s}_@")),), S2, flags=("expanded",)),
        R("[as,a]", t("(comm a{e:s}s{z:s}_@ a{x:s}_@)"), (("(x-e)/2", t("s{z:s}_@")),), S3),
        R("{as,s}", t("(acomm a{e:s}s{z:s}_@ s{x:s}_@)"), (("Abs(x-z)/2", t("a{e:s}_@")),), S3),
        R("[cs,c]", t("(comm c{e:s}s{z:s}_@ c{x:s}_@)"), (("(x-e)/2", t("s{z:s}_@")),), S3),
        R("{cs,s}", t("(acomm c{e:s}s{z:s}_@ s{x:s}_@)"), (("Abs(x-z)/2", t("c{e:s}_@")),), S3),
        R("[as,c]", t("(comm a{e:s}s{z:s}_@ c{x:s}_@)"), (), S3),
        R("[cs,a]", t("(comm c{e:s}s{z:s}_@ a{x:s}_@)"), (), S3),
    ]
    products = [(t(f"{f}{x}^2_@"), t(f"{f}{x}_@"), t(f"{f}{x}_@")) for f in "ac" for x in "-+"]
    products += [(t(f"a{x}c{y}_@"), t(f"a{x}_@"), t(f"c{y}_@")) for x in "-+" for y in "-+"]
    products += [(t(f"{f}{x}s{y}_@"), t(f"{f}{x}_@"), t(f"s{y}_@")) for f in "ac" for x in "-+" for y in "-+"]
    name = "pso+(3|4)" if tag == "p" else "pso-(3|4)"
    return AlgebraSpec(name, 2, 2, tuple(gens), tuple(rels), "span", products=tuple(products),
                       description=f"chiral half of the 2D ladder algebra (P_{tag} projected)")


def identities_2d() -> AlgebraSpec:
    rels = [
        R("[H,a]", "(comm H a{j}{x:s})", ((f"x*{SQ2}", "s{j}{x:s}"),), J2 + S1),
        R("{H,s}", "(acomm H s{j}{x:s})", ((SQ2, "a{j}{x:s}"),), J2 + S1),
        R("[H^2,a]", "(comm H^2 a{j}{x:s})", (("4*x*m*omega", "a{j}{x:s}"),), J2 + S1),
        R("[N,a]", "(comm N a{j}{x:s})", (("x", "a{j}{x:s}"),), J2 + S1),
        R("[CLS,a]", "(comm CLS a{j}{x:s})", (("x", "a{j}{x:s}"),), J2 + S1),
        R("[H,c]", "(comm H c{j}{x:s})", (), J2 + S1),
        R("[N,c]", "(comm N c{j}{x:s})", (("x", "c{j}{x:s}"),), J2 + S1),
        R("[CLS,c]", "(comm CLS c{j}{x:s})", (("-x", "c{j}{x:s}"),), J2 + S1),
        R("[H,N]", "(comm H N)"),
        R("[H,CLS]", "(comm H CLS)"),
        R("[H,J]", "(comm H J)"),
        R("{s-,s+}", "(acomm s{j}- s{j}+)", (("1", "Id"),), J2),
        R("[a-,a+]", "(comm a{j}- a{j}+)", (("1", "Id"),), J2),
        R("[c-,c+]", "(comm c{j}- c{j}+)", (("1", "Id"),), J2),
        R("[s+,s-]", "(comm s{j}+ s{j}-)", (("-1", "beta"),), J2),
        R("{a+,a-}", "(acomm a{j}+ a{j}-)", (("1", "N"), ("1", "CLS"), ("1", "beta"), ("1/2", "Id")), J2),
        R("{c+,c-}", "(acomm c{j}+ c{j}-)", (("1", "N"), ("-1", "CLS"), ("1/2", "Id")), J2),
        R("N(a,c,s)", "N", (("1/2", "(mul a{k}+ a{k}-)"), ("1/2", "(mul c{k}+ c{k}-)"),
                            ("1/2", "(mul s{k}+ s{k}-)"))),
        R("N(b,s)", "N", (("1", "(mul b{k}+ b{k}-)"), ("1/2", "(mul s{k}+ s{k}-)"))),
        R("Hsch", "Hsch", (("omega", "N"), ("omega/2", "beta"), ("omega/2", "Id")),
          printed=(("1", "N"), ("1/2", "beta"), ("1/2", "Id")), flags=("corrected",),
          note="printed form assumes omega = 1"),
        R("H^2(N,CLS)", "H^2", (("2*m*omega", "N"), ("2*m*omega", "CLS"), ("m*omega+m**2", "Id"))),
        R("H^2(Hsch)", "H^2", (("2*m", "Hsch"), ("2*m*omega", "CLS"), ("2*m*omega", "Sc"), ("m**2", "Id"))),
        R("H^2(j)", "H^2", (("2*m*omega", "(acomm a{j}- a{j}+)"), ("-2*m*omega", "(comm s{j}- s{j}+)"),
                            ("m**2", "Id")), J2),
        R("H(j)", "H", ((SQ2, "(mul a{j}+ s{j}-)"), (SQ2, "(mul a{j}- s{j}+)"), ("-2*m", "Sc")), J2),
        R("(betaS0)^2", "(mul betaS0 betaS0)", (("1/4", "Id"),)),
    ]
    for tag in ("p", "m"):
        for f in "sac":
            rels.append(R(f"{f}_{tag}=P{f}", f"{f}{{x:s}}_{tag}",
                          (("1", f"(mul {f}{{x:s}}_{tag} P_{tag})"),), S1))
    return AlgebraSpec("identities-2d", 2, 2, (), tuple(rels), None, cyclic=2,
                       description="2D ladder, number-operator and Hamiltonian identities")


def witnesses_2d() -> AlgebraSpec:
    rels = (
        R("{s1-,s2+}", "(acomm s1- s2+)", (("2*I", "betaS0"),), printed=(("-2", "betaS0"),),
          flags=("corrected",), note="direct computation gives 2i*beta*S0"),
        R("[a1-,a2+]", "(comm a1- a2+)", (("2*I", "betaS0"),), printed=(("-2", "betaS0"),),
          flags=("corrected",), note="direct computation gives 2i*beta*S0"),
        R("[c1-,c2+]", "(comm c1- c2+)", (("-2*I", "betaS0"),), printed=(("2", "betaS0"),),
          flags=("corrected",), note="direct computation gives -2i*beta*S0"),
        R("{s1-,s2+}=[a1-,a2+]", "(acomm s1- s2+)", (("1", "(comm a1- a2+)"),)),
        R("[a1-,a2+]=-[c1-,c2+]", "(comm a1- a2+)", (("-1", "(comm c1- c2+)"),)),
    )
    return AlgebraSpec("witnesses-2d", 2, 2, (), rels, None,
                       description="cross-index brackets showing the 2D ladders are not canonical")


# ------------------------------------------------------------------- 1 + 3

_OSP_SL_RELS = (
    R("[N,B]", "(comm N B{x:s}s)", (("x", "B{x:s}s"),), S1),
    R("[N,B^2]", "(comm N B{x:s}s^2)", (("2*x", "B{x:s}s^2"),), S1),
    R("[N,S]", "(comm N S{x:s}s)", (("x", "S{x:s}s"),), S1),
    R("[Sc,S]", "(comm Sc S{x:s}s)", (("x", "S{x:s}s"),), S1),
    R("[B^2,B]", "(comm B{-x:s}s^2 B{x:s}s)", (("2*x", "B{-x:s}s"),), S1),
    R("{S-,S+}", "(acomm S-s S+s)", (("1", "Id"),)),
    R("[B-^2,B+^2]", "(comm B-s^2 B+s^2)", (("4", "N"), ("-4", "Sc"), ("4", "Id"))),
    R("[B-^2,B+^2]=2{B-,B+}", "(comm B-s^2 B+s^2)", (("2", "(acomm B-s B+s)"),)),
    R("{B-,B+}", "(acomm B-s B+s)", (("2", "N"), ("-2", "Sc"), ("2", "Id")), flags=("derived",)),
    R("{B,B}", "(acomm B{x:s}s B{x:s}s)", (("2", "B{x:s}s^2"),), S1, flags=("implicit",),
      note="omitted from the printed list of nonzero brackets"),
)

_OSP_SL_DERIVED = (
    R("[N-Sc,B]", "(comm N-Sc B{x:s}s)", (("x", "B{x:s}s"),), S1, flags=("derived",)),
    R("[N-Sc,B^2]", "(comm N-Sc B{x:s}s^2)", (("2*x", "B{x:s}s^2"),), S1, flags=("derived",)),
    R("[N-Sc,S]", "(comm N-Sc S{x:s}s)", (), S1, flags=("derived",)),
)

_OSP_SL_GENS = (("N-Sc", "00"), ("Id", "00"), ("B-s^2", "00"), ("B+s^2", "00"),
                ("B-s", "01"), ("B+s", "01"), ("S-s", "10"), ("S+s", "10"))

_OSP_PRODUCTS = (("B-s^2", "B-s", "B-s"), ("B+s^2", "B+s", "B+s"))


def osp_sl() -> AlgebraSpec:
    return AlgebraSpec("osp01(1|2)+sl10(1|1)", 3, 2, _OSP_SL_GENS, _OSP_SL_RELS + _OSP_SL_DERIVED,
                       "zero", aux=(("N", "00"), ("Sc", "00")), products=_OSP_PRODUCTS,
                       description="colour Lie superalgebra of the spin-projected 3D ladders")


def osp_gl_a11() -> AlgebraSpec:
    gens = _OSP_SL_GENS + (("Sc", "00"), ("CLS", "11"))
    split = (("H^2", (("2*m*omega", "N+Id"), ("m**2", "Id"), ("2*m*omega", "CLS"))),)
    ladders = ("B{x:s}s", "S{x:s}s")
    extra = []
    for lab, tag in zip(ladders, ("B", "S")):
        extra.append(R(f"<<H^2,{tag}>>", f"(br H^2 {lab})", (("2*x*m*omega", lab),), S1,
                       printed=(("2*x*m", lab),), flags=("corrected",),
                       note="printed coefficient omits omega"))
        extra.append(R(f"braid:{tag}", f"(br H^2 {lab})",
                       (("1", f"(mul H^2 {lab})"), ("-1", f"(mul {lab} H^2_under)")), S1))
        extra.append(R(f"{{CLS,{tag}}}", f"(acomm CLS {lab})", (), S1))
    extra.append(R("H^2", "H^2", (("2*m*omega", "N"), ("2*m*omega", "CLS"),
                                  ("2*m*omega+m**2", "Id"))))
    return AlgebraSpec("osp01(1|2)+gl10(1|1)+a11", 3, 2, gens,
                       _OSP_SL_RELS + _OSP_SL_DERIVED + tuple(extra), "zero",
                       aux=(("N", "00"), ("N+Id", "00")), splits=split, products=_OSP_PRODUCTS,
                       description="enlarged algebra containing H^2 as an inhomogeneous element")


def osp_plus_sl2() -> AlgebraSpec:
    gens = (("N+Id", "0"), ("Sc", "0"), ("S-s", "0"), ("S+s", "0"), ("B-s^2", "0"), ("B+s^2", "0"),
            ("B-s", "1"), ("B+s", "1"))
    rels = (
        R("[N+Id,B]", "(comm N+Id B{x:s}s)", (("x", "B{x:s}s"),), S1),
        R("[N+Id,B^2]", "(comm N+Id B{x:s}s^2)", (("2*x", "B{x:s}s^2"),), S1),
        R("[N+Id,S]", "(comm N+Id S{x:s}s)", (("x", "S{x:s}s"),), S1),
        R("[Sc,S]", "(comm Sc S{x:s}s)", (("x", "S{x:s}s"),), S1),
        R("[S-,S+]", "(comm S-s S+s)", (("-2", "Sc"),)),
        R("[B^2,B]", "(comm B{-x:s}s^2 B{x:s}s)", (("2*x", "B{-x:s}s"),), S1),
        R("{B-,B+}", "(acomm B-s B+s)", (("2", "N+Id"), ("-2", "Sc"))),
        R("{B,B}", "(acomm B{x:s}s B{x:s}s)", (("2", "B{x:s}s^2"),), S1),
        R("[B-^2,B+^2]", "(comm B-s^2 B+s^2)", (("4", "N+Id"), ("-4", "Sc"))),
    )
    return AlgebraSpec("osp(1|2)+sl(2)", 3, 1, gens, rels, "span", products=(),
                       description="Z2-graded Lie superalgebra realising the parafermion/paraboson 3D ladders")


def identities_3d() -> AlgebraSpec:
    rels = [
        R("H^2", "H^2", (("2*m*omega", "N"), ("2*m*omega", "CLS"), ("2*m*omega+m**2", "Id"))),
        R("H", "H", ((SQ1, "(mul B+s S-s)"), (SQ1, "(mul B-s S+s)"), ("-2*m", "Sc"))),
        R("T^2", "(mul T{x:s} T{x:s})", (("1", "B{x:s}s^2"),), S1),
        R("{S+,T+}", "(acomm S+s T+)", (("1", "B+s^2"),)),
        R("S^2", "S^2", (("3/4", "Id"),)),
        R("[H^2,L^2]", "(comm H^2 L^2)"),
        R("[H^2,beta]", "(comm H^2 beta)"),
        R("{S-,S+}", "(acomm S-s S+s)", (("1", "Id"),)),
        R("{S,S}", "(acomm S{x:s}s S{x:s}s)", (), S1),
        R("[S,B]", "(comm S{x:s}s B{y:s}s)", (), S2),
        R("[N,S]", "(comm N S{x:s}s)", (("x", "S{x:s}s"),), S1),
        R("[N,B]", "(comm N B{x:s}s)", (("x", "B{x:s}s"),), S1),
        R("[beta,B]", "(comm beta B{x:s}s)", (), S1),
        R("{beta,S}", "(acomm beta S{x:s}s)", (), S1),
        R("[L^2,S]", "(comm L^2 S{x:s}s)", (), S1),
        R("[L^2,B+^2]", "(comm L^2 B+s^2)"),
        R("N=sum", "N", (("1", "N_{k}"), ("1", "beta"), ("-1", "Id"))),
        R("H=sum", "H", (("1", "H_{k}"), ("m", "beta"))),
        R("B=sum", "B{x:s}s", (("1", "B{x:s}s_{k}"),), S1),
        R("HxH", "HxH_{j}", (("I*eps(j,k,l)**2", "(mul (mul b{k}+ b{l}-) S{j})"),), J3),
        R("H^2_under", "H^2_under", (("2*m*omega", "N"), ("-2*m*omega", "CLS"),
                                     ("2*m*omega+m**2", "Id"))),
    ]
    for op in ("N", "CLS", "J^2", "J1", "J2", "J3"):
        rels.append(R(f"[H,{op}]", f"(comm H {op})"))
    scalars = ("N", "CLS", "S^2", "J^2", "L^2", "beta")
    for i, a in enumerate(scalars):
        for b in scalars[i + 1:]:
            rels.append(R(f"[{a},{b}]", f"(comm {a} {b})"))
    for lab in ("B{x:s}s", "S{x:s}s"):
        rels.append(R(f"[J^2,{lab[0]}]", f"(comm J^2 {lab})", (), S1))
        rels.append(R(f"{{CLS,{lab[0]}}}", f"(acomm CLS {lab})", (), S1))
    rels.append(R("[J,B+]", "(comm J{j} B+s)", (), J3))
    rels.append(R("[J,S+]", "(comm J{j} S+s)", (), J3))
    return AlgebraSpec("identities-3d", 3, 2, (), tuple(rels), None, cyclic=3,
                       description="3D operator identities: H, H^2, T, commutants, recomposition")


# ------------------------------------------------------------- Z2^3-graded algebra

_Z3_DEG = {1: "001", 2: "010", 3: "100"}
_B_DEG = {1: "110", 2: "101", 3: "011"}

EPS_SUM = "eps(j,k,l)"
EPS2_SUM = "eps(j,k,l)**2"


def _z2cubed_relations():
    ne = "j != k"
    rels = [
        R("{S-,S+}", "(acomm S-s S+s)", (("1", "Id"),)),
        R("[B-_j,B+_j]", "(comm B-s_{j} B+s_{j})", (("1", "Id"),), J3),
        R("[N_j,H_k]", "(comm N_{j} H_{k})", (("delta(j,k)-1", "betaH_{k}"),), JK3),
        R("[N_j,betaH_k]", "(comm N_{j} betaH_{k})", (("delta(j,k)-1", "H_{k}"),), JK3),
        R("[N_j,S]", "(comm N_{j} S{x:s}s)", (("x", "S{x:s}s"),), J3 + S1),
        R("[N_j,B_k]", "(comm N_{j} B{x:s}s_{k})", (("x*delta(j,k)", "B{x:s}s_{k}"),), JK3 + S1),
        R("[N_j,HxH_k]", "(comm N_{j} HxH_{k})", ((EPS_SUM, "LS_{k}"),), JK3,
          printed=(("1-delta(j,k)", "LS_{k}"),), flags=("corrected",),
          note="sign follows the cyclic order of (j,k)"),
        R("[N_j,LS_k]", "(comm N_{j} LS_{k})", ((EPS_SUM, "HxH_{k}"),), JK3,
          printed=(("1-delta(j,k)", "HxH_{k}"),), flags=("corrected",),
          note="sign follows the cyclic order of (j,k)"),
        R("{H_j,S}", "(acomm H_{j} S{x:s}s)", ((SQ1, "B{x:s}s_{j}"),), J3 + S1),
        R("{betaH_j,S}", "(acomm betaH_{j} S{x:s}s)", ((f"x*{SQ1}", "B{x:s}s_{j}"),), J3 + S1),
        R("[H_j,B_j]", "(comm H_{j} B{x:s}s_{j})", ((f"x*{SQ1}", "S{x:s}s"),), J3 + S1),
        R("[betaH_j,B_j]", "(comm betaH_{j} B{x:s}s_{j})", ((f"-{SQ1}", "S{x:s}s"),), J3 + S1),
        R("{H_j,H_j}", "(acomm H_{j} H_{j})", (("4*m*omega", "N_{j}"),), J3),
        R("{betaH_j,betaH_j}", "(acomm betaH_{j} betaH_{j})", (("-4*m*omega", "N_{j}"),), J3,
          printed=(("4*m*omega", "N_{j}"),), flags=("corrected",),
          note="betaH_j is anti-Hermitian so its square is negative"),
        R("[LS_j,HxH_j]", "(comm LS_{j} HxH_{j})", (("1/2", "N_{j+1}"), ("-1/2", "N_{j+2}")), J3),
        R("[H_j,H_k]", "(comm H_{j} H_{k})", ((f"4*m*omega*{EPS_SUM}", "HxH_{l}"),), JK3, ne),
        R("[betaH_j,betaH_k]", "(comm betaH_{j} betaH_{k})", ((f"-4*m*omega*{EPS_SUM}", "HxH_{l}"),), JK3, ne),
        R("[H_j,betaH_k]", "(comm H_{j} betaH_{k})", ((f"4*m*omega*{EPS2_SUM}", "LS_{l}"),), JK3, ne,
          printed=((f"4*m*omega*{EPS_SUM}", "LS_{l}"),), flags=("corrected",),
          note="coefficient is independent of the order of (j,k)"),
        R("{H_j,HxH_k}", "(acomm H_{j} HxH_{k})", ((f"{EPS_SUM}/2", "betaH_{l}"),), JK3, ne),
        R("{betaH_j,LS_k}", "(acomm betaH_{j} LS_{k})", ((f"-{EPS2_SUM}/2", "betaH_{l}"),), JK3, ne,
          printed=((f"-{EPS_SUM}/2", "betaH_{l}"),), flags=("corrected",),
          note="coefficient is independent of the order of (j,k)"),
        R("{H_j,LS_k}", "(acomm H_{j} LS_{k})", ((f"-{EPS2_SUM}/2", "H_{l}"),), JK3, ne,
          printed=((f"-{EPS_SUM}/2", "H_{l}"),), flags=("corrected",),
          note="coefficient is independent of the order of (j,k)"),
        R("{betaH_j,HxH_k}", "(acomm betaH_{j} HxH_{k})", ((f"{EPS_SUM}/2", "H_{l}"),), JK3, ne),
        R("{HxH_j,B-_k}", "(acomm HxH_{j} B-s_{k})", ((f"{EPS_SUM}/2", "B-s_{l}"),), JK3, ne),
        R("{LS_j,B-_k}", "(acomm LS_{j} B-s_{k})", ((f"-{EPS2_SUM}/2", "B-s_{l}"),), JK3, ne,
          printed=((f"-{EPS_SUM}/2", "B-s_{l}"),), flags=("corrected",),
          note="coefficient is independent of the order of (j,k)"),
        R("{HxH_j,B+_k}", "(acomm HxH_{j} B+s_{k})", ((f"-{EPS_SUM}/2", "B+s_{l}"),), JK3, ne),
        R("{LS_j,B+_k}", "(acomm LS_{j} B+s_{k})", ((f"-{EPS2_SUM}/2", "B+s_{l}"),), JK3, ne,
          printed=((f"-{EPS_SUM}/2", "B+s_{l}"),), flags=("corrected",),
          note="coefficient is independent of the order of (j,k)"),
        R("{LS_j,HxH_k}", "(acomm LS_{j} HxH_{k})", ((f"{EPS2_SUM}/2", "HxH_{l}"),), JK3, ne,
          printed=((f"{EPS_SUM}/2", "HxH_{l}"),), flags=("corrected",),
          note="coefficient is independent of the order of (j,k)"),
        R("{LS_j,LS_k}", "(acomm LS_{j} LS_{k})", ((f"-{EPS2_SUM}/2", "LS_{l}"),), JK3, ne,
          printed=((f"-{EPS_SUM}/2", "LS_{l}"),), flags=("corrected",),
          note="coefficient is independent of the order of (j,k)"),
        R("{HxH_j,HxH_k}", "(acomm HxH_{j} HxH_{k})", ((f"-{EPS2_SUM}/2", "LS_{l}"),), JK3, ne,
          printed=((f"-{EPS_SUM}/2", "LS_{l}"),), flags=("corrected",),
          note="coefficient is independent of the order of (j,k)"),
        R("{beta,beta}", "(acomm beta beta)", (("2", "Id"),), flags=("implicit",),
          note="omitted from the printed list of nonzero brackets"),
    ]
    return tuple(rels)


def _z2cubed_generators():
    gens = [("Id", "000")] + [(f"N_{j}", "000") for j in (1, 2, 3)]
    gens += [("beta", "111"), ("S-s", "111"), ("S+s", "111")]
    for j in (1, 2, 3):
        gens += [(f"H_{j}", _Z3_DEG[j]), (f"betaH_{j}", _Z3_DEG[j])]
    for j in (1, 2, 3):
        gens += [(f"B-s_{j}", _B_DEG[j]), (f"B+s_{j}", _B_DEG[j]),
                 (f"HxH_{j}", _B_DEG[j]), (f"LS_{j}", _B_DEG[j])]
    return tuple(gens)


def z2cubed() -> AlgebraSpec:
    return AlgebraSpec("z2cubed", 3, 3, _z2cubed_generators(), _z2cubed_relations(), "zero",
                       cyclic=3, description="Z2^3-graded colour algebra of the 3D Hamiltonian components")


def hamiltonian_z2cubed() -> AlgebraSpec:
    splits = (
        ("H", (("1", "H_1"), ("1", "H_2"), ("1", "H_3"), ("m", "beta"))),
        ("B-s", (("1", "B-s_1"), ("1", "B-s_2"), ("1", "B-s_3"))),
        ("B+s", (("1", "B+s_1"), ("1", "B+s_2"), ("1", "B+s_3"))),
    )
    rels = (
        R("<<H,B->>", "(br H B-s)", ((f"-3*{SQ1}", "S-s"),)),
        R("<<H,B+>>", "(br H B+s)", ((f"3*{SQ1}", "S+s"),), printed=((f"3*{SQ1}", "S-s"),),
          flags=("corrected",), note="printed right-hand side has the lowering operator"),
        R("<<H,S>>", "(br H S{x:s}s)", ((SQ1, "B{x:s}s"),), S1),
    )
    return AlgebraSpec("hamiltonian-z2cubed", 3, 3, (), rels, None,
                       aux=_z2cubed_generators(), splits=splits, cyclic=3,
                       description="brackets of the inhomogeneous H split into homogeneous parts")


# ---------------------------------------------------------------- registry

def builtin_specs() -> List[AlgebraSpec]:
    """All algebra presentations with a generator basis."""
    return [bfa11(), pso32(), bfa21(), pso34("p"), pso34("m"), osp_sl(), osp_gl_a11(),
            z2cubed(), osp_plus_sl2()]


def relation_sets() -> List[AlgebraSpec]:
    """Identity lists that have no generator basis of their own."""
    return [interleave_1d(), hamiltonian_1d(), identities_2d(), witnesses_2d(),
            identities_3d(), hamiltonian_z2cubed()]


def all_specs() -> Dict[str, AlgebraSpec]:
    return {s.name: s for s in builtin_specs() + relation_sets()}


def get_spec(name: str) -> AlgebraSpec:
    specs = all_specs()
    if name not in specs:
        raise KeyError(f"unknown algebra {name!r}; choose from {sorted(specs)}")
    return specs[name]


def specs_for_dim(dim: int, include_sets=True) -> List[AlgebraSpec]:
    pool = builtin_specs() + (relation_sets() if include_sets else [])
    return [s for s in pool if s.dim == dim]
