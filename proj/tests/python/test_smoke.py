"""Smoke tests for the Python bindings.

Runnable directly (python tests/python/test_smoke.py) with the extension
module on PYTHONPATH, or collected by pytest against an installed wheel.
"""

import cmath
import json
import random

try:
    import vilenkin as vk
except ImportError:
    import _core as vk


def test_tree_roundtrip():
    tree = vk.build_tree(3, 2, "debruijn-path")
    assert tree.height() == 10
    assert tree.node_count == 10
    report = vk.validate_tree(tree)
    assert report.valid and report.height == 10

    back = vk.tree_from_json(tree.to_json())
    assert back == tree
    assert "digraph" in tree.to_dot()

    windows = vk.allowed_windows(tree)
    assert len(windows) == 9
    assert vk.tree_from_support(windows, 3, 2) == tree


def test_enumeration():
    assert len(vk.enumerate_trees(2, 1)) == 1
    assert len(vk.enumerate_trees(3, 1)) == 3


def test_pipeline_exact_checks():
    tree = vk.build_tree(3, 2, "greedy-branch", seed=7)
    bundle = vk.derive(tree)
    assert len(bundle.support) == 9
    assert bundle.support.M == tree.height() - 4

    assert vk.check_mask(bundle.mask).all_pass()
    assert vk.is_elementary(bundle.support).all_pass()

    ortho = vk.verify_shift_orthonormality(bundle.phi, depth=2)
    assert ortho.all_pass() and ortho.max_deviation() == 0.0

    refine = vk.verify_refinement(bundle.phi, bundle.mask, bundle.beta)
    assert refine.all_pass() and refine.max_deviation() == 0.0

    assert abs(bundle.beta.sum_norm2() - 3) < 1e-15


def test_wavelets_and_transform():
    tree = vk.build_tree(3, 1, "min-height")
    bundle = vk.derive(tree)
    bank = vk.build_bank(bundle.mask, bundle.beta, bundle.phi)
    rep = vk.verify_wavelets(bank, bundle.phi, bundle.support, bundle.mask, depth=2)
    assert rep.all_pass() and rep.max_deviation() == 0.0

    # psi_1 of the Haar bank is the character ladder on G_1 cosets of G_0.
    psi1 = bank.psi(1)
    w = cmath.exp(2j * cmath.pi / 3)
    for x1 in range(3):
        for x0 in range(3):
            want = 0 if x1 else w**x0
            assert abs(psi1[3 * x1 + x0] - want) < 1e-12

    # Projection of a random signal is idempotent and splits the energy.
    rng = random.Random(99)
    p, R, S = 3, 2, bundle.support.M + 1
    f = vk.Signal(p, R, S, [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(p ** (R + S))])
    c = vk.analyze(f, bundle.phi, bank, bundle.beta, levels=1)
    proj = vk.synthesize(c, bundle.phi, bank, bundle.beta)
    c2 = vk.analyze(proj, bundle.phi, bank, bundle.beta, levels=1)
    proj2 = vk.synthesize(c2, bundle.phi, bank, bundle.beta)
    dev = max(abs(a - b) for a, b in zip(proj.samples, proj2.samples))
    assert dev < 1e-10
    assert abs(c.energy() - c2.energy()) < 1e-10
    assert vk.energy_report(f, c, bundle.phi, bank, bundle.beta).all_pass()

    # The projection itself reconstructs perfectly.
    dev_span = max(abs(a - b) for a, b in zip(proj.samples, proj2.samples))
    assert dev_span < 1e-10


def test_negative_control():
    star = vk.tree_from_support([[0, 0], [0, 1], [0, 2]], 3, 1)
    mask = vk.mask_from_tree(star)
    assert vk.check_mask(mask).all_pass()

    # 0 -> {1, 2} plus 2 -> 1 duplicates the window "1".
    tree_json = json.loads(star.to_json())
    tree_json["nodes"].append({"id": 9, "label": 1, "parent": 2})
    broken = vk.tree_from_json(json.dumps(tree_json))
    assert not vk.validate_tree(broken).valid
    bad_mask = vk.mask_from_tree(broken)
    assert not vk.check_mask(bad_mask).all_pass()


def main():
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"{name}: ok")
    print("python smoke: all ok")


if __name__ == "__main__":
    main()
