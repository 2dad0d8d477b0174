#!/usr/bin/env python3
"""Smoke test for the regnum_py extension module.

Build the extension first:

    cargo build --release -p regnum-py

then run this script with any Python 3. It locates the compiled library
under target/, imports it, and drives a representative slice of the API:
exact solves with certificate re-verification, the coloring machinery, and
both reduction pipelines.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[1]


def load_module():
    candidates = []
    for profile in ("release", "debug"):
        for name in ("libregnum_py.so", "regnum_py.so", "libregnum_py.dylib"):
            candidates.append(ROOT / "target" / profile / name)
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("extension not found; run: cargo build --release -p regnum-py")
    stage = pathlib.Path(tempfile.mkdtemp(prefix="regnum_py_"))
    shutil.copy(built, stage / "regnum_py.so")
    sys.path.insert(0, str(stage))
    import regnum_py

    return regnum_py


def check(label, condition):
    status = "ok" if condition else "FAIL"
    print(f"  {label}: {status}")
    if not condition:
        sys.exit(1)


def main():
    rn = load_module()

    print("graph model")
    star = rn.star(4)
    check("star(4) shape", star.vertex_count() == 5 and star.edge_count() == 4)
    check("degree set", star.degree_set() == [1, 4])
    round_tripped = rn.Graph.from_edge_list(star.to_edge_list())
    check("edge-list round trip", round_tripped.edges() == star.edges())

    print("exact solvers")
    value, parts, regs, _, method = rn.reg_exact(star)
    check("reg(star(4)) = 4", value == 4)
    check("certificate verifies", rn.verify_partition(star, parts) == regs)
    oracle = rn.reg_bruteforce(star)
    check("oracle agrees", oracle[0] == value)
    check("reg_at_most(star, 2) refuted", rn.reg_at_most(star, 2) is None)

    b2 = rn.zebra(2)
    check("zebra(2) degree set", b2.degree_set() == [0, 1, 2, 3])
    check("reg(zebra(2)) = 2", rn.reg_exact(b2)[0] == 2)

    print("coloring")
    petersen = rn.petersen()
    chi, colors = rn.chi_prime(petersen)
    check("chi'(Petersen) = 4", chi == 4 and len(set(colors)) == 4)
    sigma, _, fourth = rn.sigma_cubic(petersen)
    check("sigma(Petersen) = 2", sigma == 2 and len(fourth) == 2)
    check("sigma(K4) = 0", rn.sigma_cubic(rn.complete(4))[0] == 0)
    vizing = rn.vizing_coloring(petersen)
    check("constructive coloring fits Δ+1", len(set(vizing)) <= 4)

    print("pendant transform")
    u, v = petersen.edges()[0]
    transformed = rn.cubic_pendant_transform(petersen, u, v)
    check("reg = Δ+1 counterexample", rn.reg_exact(transformed)[0] == 4)
    check("Δ stays 3", transformed.max_degree() == 3)

    print("formula pipeline")
    pair = rn.Formula(2, [[0, 1], [0, 1], [0, 1]])
    check("cubic23", pair.is_cubic23())
    model = rn.nae_solve(pair)
    check("satisfiable", model is not None and pair.nae_eval(model))
    gadget, provenance = rn.gadget_formula(pair)
    check("gadget degrees", gadget.degree_set() == [3, 6])
    check("provenance names variables", '"variable(0)"' in provenance)
    cert = rn.decide_reg2_bivalent(gadget)
    check("reg = 2 via balance search", cert is not None)
    check("certificate verifies 3-regular", rn.verify_partition(gadget, cert) == [3, 3])
    forward = rn.partition_from_assignment(pair, model)
    check("model-built certificate verifies", rn.verify_partition(gadget, forward) == [3, 3])
    recovered = rn.assignment_from_partition(pair, forward)
    check("model round-trips through the certificate", recovered == model)

    triangle = rn.Formula(3, [[0, 1, 2]])
    normalized, _trace = rn.normalize_to_cubic23(triangle)
    check("normalization reaches cubic23", normalized.is_cubic23())
    check("equisatisfiable", rn.nae_solve(normalized) is not None)

    print("three-partition pipeline")
    grouping = rn.solve_3p(3, [1, 1, 1])
    check("YES instance", grouping == [(0, 1, 2)])
    check("NO instance", rn.solve_3p(13, [4, 4, 4, 4, 4, 6]) is None)
    check("blob decision agrees", not rn.blob_decide_3p(13, [4, 4, 4, 4, 4, 6]))
    hub_gadget, _ = rn.gadget_three_partition(3, [1, 1, 1])
    check("hub gadget shape", hub_gadget.vertex_count() == 36 and hub_gadget.is_bipartite())
    check("hub gadget is regular here", rn.reg_exact(hub_gadget)[0] == 1)
    numeric_cert = rn.partition_from_3p_solution(3, [1, 1, 1], grouping)
    check("grouping certificate verifies", rn.verify_partition(hub_gadget, numeric_cert) == [6])

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
