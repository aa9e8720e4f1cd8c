#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "fixtures.hpp"
#include "vilenkin/errors.hpp"
#include "vilenkin/refinable.hpp"

using namespace vilenkin;

namespace {

// The worked p=3, N=2 support, words (beta_{-2}, ..) with trailing zeros trimmed;
// derived by hand-walking the windows of the fixture.
std::vector<CharCoset> worked_support_words() {
    return {
        CharCoset(2, {}),        CharCoset(2, {2}),          CharCoset(2, {0, 2}),
        CharCoset(2, {1, 2}),    CharCoset(2, {2, 2}),       CharCoset(2, {1, 0, 2}),
        CharCoset(2, {0, 1, 2}), CharCoset(2, {1, 1, 0, 2}), CharCoset(2, {2, 1, 0, 2}),
    };
}

}  // namespace

TEST_CASE("worked p=3 N=2 support: the nine frozen words, M = 2") {
    Mask m = mask_from_tree(fixtures::worked_tree_3_2());
    ElementarySet e = support_set(m);
    CHECK(e.M() == 2);
    CHECK(e.size() == 9);
    for (const auto& c : worked_support_words()) CHECK(e.contains(c));
    CHECK(is_elementary(e).all_pass());
}

TEST_CASE("Haar support: the three cosets of G_{-1}^perp in G_0^perp") {
    ElementarySet e = support_set(mask_from_tree(fixtures::haar_tree(3)));
    CHECK(e.M() == 0);
    CHECK(e.size() == 3);
    CHECK(e.contains(CharCoset(1, {})));
    CHECK(e.contains(CharCoset(1, {1})));
    CHECK(e.contains(CharCoset(1, {2})));
}

TEST_CASE("delta mask has no elementary support") {
    Mask delta(3, 1);
    delta.set(0, RootScalar::one(3));
    CHECK_THROWS_AS(support_set(delta), MaskError);
    // The walk itself admits only the trivial coset.
    CHECK(support_set(delta, false).size() == 1);
}

TEST_CASE("cyclic mask supports are detected") {
    // 0 -> 1 -> 0 over p=3, N=1: the windows admit the loop 0 -> 1 -> 0, so
    // the support never closes.
    std::vector<TreeNode> nodes = {{0, 0, -1, {}}, {1, 1, 0, {}}, {2, 0, 1, {}}};
    Mask m = mask_from_tree(PTree(3, 1, nodes, 0));
    CHECK_THROWS_AS(support_set(m, false), MaskError);
}

TEST_CASE("brute-force support agrees with the walk") {
    Mask worked = mask_from_tree(fixtures::worked_tree_3_2());
    ElementarySet brute = support_set_bruteforce(worked, 2);
    CHECK(brute == support_set(worked));
    // Nothing sits in the outer shell.
    for (const auto& c : brute.cosets()) CHECK(c.top_index() < 2);

    ElementarySet haar = support_set_bruteforce(mask_from_tree(fixtures::haar_tree(3)), 1);
    CHECK(haar.size() == 3);

    for (auto [p, N] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
        for (const auto& t : enumerate_nvalid(p, N, 30)) {
            Mask m = mask_from_tree(t);
            ElementarySet walked = support_set(m);
            ElementarySet brute2 = support_set_bruteforce(m, walked.M());  // cross-checks internally
            CHECK(brute2 == walked);
        }
    }
}

TEST_CASE("every brute-force support contains the trivial coset") {
    Mask dup = mask_from_tree(fixtures::duplicated_window_tree());
    ElementarySet e = support_set_bruteforce(dup, 2, /*cross_check=*/true);
    CHECK(e.contains(CharCoset(1, {})));
    // Four cosets with a duplicated prefix: not elementary.
    CHECK(e.size() == 4);
    Report rep = is_elementary(e);
    CHECK(!rep.find("elementary.cardinality")->pass);
    CHECK(!rep.find("elementary.prefix_tiling")->pass);
}

TEST_CASE("elementary checks flag duplicates and missing shells") {
    // Duplicated prefix.
    ElementarySet dup = ElementarySet::from_cosets(
        3, 1, {CharCoset(1, {}), CharCoset(1, {1}), CharCoset(1, {1, 1})});
    CHECK(!is_elementary(dup).find("elementary.prefix_tiling")->pass);

    // Missing shell: all three cosets inside G_0^perp although M = 1.
    ElementarySet gap(3, 1, 1, {CharCoset(1, {}), CharCoset(1, {1}), CharCoset(1, {2})});
    CHECK(!is_elementary(gap).find("elementary.shells")->pass);
    // The tiling-only mode ignores shells.
    CHECK(is_elementary(gap, ElementaryChecks::Tiling).all_pass());
}

TEST_CASE("M equals height minus 2N on every enumerated tree") {
    for (auto [p, N] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
        for (const auto& t : enumerate_nvalid(p, N)) {
            ElementarySet e = support_set(mask_from_tree(t));
            CHECK(e.M() == t.height() - 2 * N);
        }
    }
}

TEST_CASE("support membership is closed under the downward shift") {
    for (const auto& t : enumerate_nvalid(3, 2, 30)) {
        ElementarySet e = support_set(mask_from_tree(t));
        for (const auto& c : e.cosets()) CHECK(e.contains(c.shift_down()));
    }
}

TEST_CASE("phi hat: all ones under default phases, unit modulus always") {
    Mask m = mask_from_tree(fixtures::worked_tree_3_2());
    ElementarySet e = support_set(m);
    PhiTable ph = phi_hat(m, e);
    for (const auto& [coset, v] : ph.hat()) CHECK(v.exactly_equal(RootSum::one(3)));
    CHECK(ph.hat_at(CharCoset::trivial(2)).exactly_equal(RootSum::one(3)));
    // Off the support the extension is zero.
    CHECK(ph.hat_at(CharCoset(2, {1})).is_zero());
}

TEST_CASE("phi hat multiplies the window phases along the walk") {
    PTree star = fixtures::haar_tree(3);
    PhaseTable phases;
    phases.insert_or_assign(Window{0, 1}, RootScalar::root(3, 1));
    phases.insert_or_assign(Window{0, 2}, RootScalar::root(3, 2));
    Mask m = mask_from_tree(star, &phases);
    ElementarySet e = support_set(m);
    PhiTable ph = phi_hat(m, e);
    // The walk of (1) crosses the single phased window (0,1).
    CHECK(ph.hat_at(CharCoset(1, {1})).exactly_equal(RootSum::root(3, 1)));
    CHECK(ph.hat_at(CharCoset(1, {2})).exactly_equal(RootSum::root(3, 2)));
    CHECK(ph.hat_at(CharCoset::trivial(1)).exactly_equal(RootSum::one(3)));
}

TEST_CASE("Haar phi is the indicator of G_0") {
    Mask m = mask_from_tree(fixtures::haar_tree(3));
    PhiTable ph = phi_hat(m, support_set(m));
    phi_values(ph);
    REQUIRE(ph.values().size() == 3);
    CHECK(ph.values()[0].exactly_equal(RootSum::one(3)));  // x_{-1} = 0
    CHECK(ph.values()[1].is_zero());
    CHECK(ph.values()[2].is_zero());

    GroupParams P(3);
    CHECK(ph.value_of(GroupElement::basis(P, -2)).is_zero());  // outside G_{-1}
    CHECK(ph.value_of(GroupElement::basis(P, 5)).exactly_equal(RootSum::one(3)));
}

TEST_CASE("worked p=3 N=2 phi: 81 samples, unit norm, exact Fourier round trip") {
    Mask m = mask_from_tree(fixtures::worked_tree_3_2());
    PhiTable ph = phi_hat(m, support_set(m));
    phi_values(ph);
    CHECK(ph.values().size() == 81);
    CHECK(ph.norm2().exactly_equal(RootSum::one(3)));

    auto hat2 = hat_from_values(ph);
    for (const auto& [coset, v] : hat2) CHECK(v.exactly_equal(ph.hat_at(coset)));
}

TEST_CASE("shift orthonormality holds exactly for the fixtures") {
    for (PTree t : {fixtures::worked_tree_3_2(), fixtures::haar_tree(3)}) {
        Mask m = mask_from_tree(t);
        PhiTable ph = phi_hat(m, support_set(m));
        phi_values(ph);
        Report rep = verify_shift_orthonormality(ph, 3);
        CHECK(rep.all_pass());
        CHECK(rep.max_deviation() == 0.0);
    }
}

TEST_CASE("a duplicated window breaks both orthonormality routes") {
    Mask m = mask_from_tree(fixtures::duplicated_window_tree());
    ElementarySet e = support_set_bruteforce(m, 2);
    PhiTable ph = phi_hat(m, e);
    phi_values(ph);
    Report rep = verify_shift_orthonormality(ph, 2);
    CHECK(!rep.find("orthonormality.fourier_rows")->pass);
    CHECK(!rep.find("orthonormality.gram_identity")->pass);
}

TEST_CASE("refinement identities hold exactly for the fixtures") {
    for (PTree t : {fixtures::worked_tree_3_2(), fixtures::haar_tree(3), fixtures::haar_tree(2)}) {
        Mask m = mask_from_tree(t);
        PhiTable ph = phi_hat(m, support_set(m));
        phi_values(ph);
        CoefficientTable beta = solve_coefficients(m);
        Report rep = verify_refinement(ph, m, beta);
        CHECK(rep.all_pass());
        CHECK(rep.max_deviation() == 0.0);
    }
}

TEST_CASE("a perturbed coefficient breaks the time-side refinement") {
    Mask m = mask_from_tree(fixtures::haar_tree(3));
    PhiTable ph = phi_hat(m, support_set(m));
    phi_values(ph);
    CoefficientTable beta = solve_coefficients(m);
    beta.set(0, beta.at(0) + RootSum::one(3));
    Report rep = verify_refinement(ph, m, beta);
    CHECK(!rep.find("refinement.time_domain")->pass);
    // The Fourier-side identities do not involve beta and still pass.
    CHECK(rep.find("refinement.fourier_factorization")->pass);
}

TEST_CASE("fourier rows match the gram verdict on every enumerated tree") {
    for (auto [p, N] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}}) {
        for (const auto& t : enumerate_nvalid(p, N)) {
            Mask m = mask_from_tree(t);
            PhiTable ph = phi_hat(m, support_set(m));
            phi_values(ph);
            Report rep = verify_shift_orthonormality(ph, 2);
            CHECK(rep.all_pass());
        }
    }
}
