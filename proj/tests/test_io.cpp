#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "fixtures.hpp"
#include "vilenkin/errors.hpp"
#include "vilenkin/io.hpp"

using namespace vilenkin;

TEST_CASE("tree json round trip, canonical and deterministic") {
    PTree t = fixtures::worked_tree_3_2();
    json j = tree_to_json(t);
    CHECK(j["nodes"].size() == 10);
    CHECK(j["nodes"][0]["parent"].is_null());
    PTree back = tree_from_json(j);
    CHECK(back == t);
    CHECK(tree_to_json(back).dump() == j.dump());

    for (const auto& tr : enumerate_nvalid(3, 2, 10)) CHECK(tree_from_json(tree_to_json(tr)) == tr);
}

TEST_CASE("dot export lists one edge per non-root node") {
    std::string dot = tree_to_dot(fixtures::worked_tree_3_2());
    std::size_t edges = 0, pos = 0;
    while ((pos = dot.find("->", pos)) != std::string::npos) {
        ++edges;
        pos += 2;
    }
    CHECK(edges == 9);
    CHECK(dot.rfind("digraph", 0) == 0);
}

TEST_CASE("mask json keeps exactness through the round trip") {
    Mask m = mask_from_tree(fixtures::worked_tree_3_2());
    Mask back = mask_from_json(mask_to_json(m));
    CHECK(back.exact());
    for (std::size_t k = 0; k < m.size(); ++k) CHECK(back.at(k) == m.at(k));
}

TEST_CASE("mask csv has one row per table entry") {
    Mask m = mask_from_tree(fixtures::haar_tree(3));
    std::string csv = mask_to_csv(m);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "alpha_-1,alpha_0,re,im");
    std::size_t rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 9);
}

TEST_CASE("coefficient tables round trip") {
    CoefficientTable beta = solve_coefficients(mask_from_tree(fixtures::haar_tree(3)));
    CoefficientTable back = beta_from_json(beta_to_json(beta), 3, 1);
    for (std::size_t j = 0; j < beta.size(); ++j)
        CHECK(back.at(j).distance(beta.at(j)) == 0.0);
    std::string csv = beta_to_csv(beta);
    CHECK(csv.rfind("a_-1,a_-2,re,im", 0) == 0);
}

TEST_CASE("bundle round trip preserves every table") {
    PTree t = fixtures::worked_tree_3_2();
    Mask m = mask_from_tree(t);
    ElementarySet e = support_set(m);
    PhiTable ph = phi_hat(m, e);
    phi_values(ph);
    MraBundle b{t, m, e, ph, solve_coefficients(m)};
    json j = bundle_to_json(b);
    MraBundle back = bundle_from_json(j);
    CHECK(back.tree.has_value());
    CHECK(*back.tree == t);
    CHECK(back.support == e);
    CHECK(back.phi.values().size() == ph.values().size());
    for (std::size_t i = 0; i < ph.values().size(); ++i)
        CHECK(back.phi.values()[i].distance(ph.values()[i]) < 1e-15);
    // Serialization is deterministic.
    CHECK(bundle_to_json(back).dump() == j.dump());
}

TEST_CASE("csv tables carry the documented column order") {
    Mask m = mask_from_tree(fixtures::worked_tree_3_2());
    ElementarySet e = support_set(m);
    PhiTable ph = phi_hat(m, e);
    phi_values(ph);

    std::string sup = elementary_to_csv(e);
    CHECK(sup.rfind("beta_-2,beta_-1,beta_0,beta_1\n", 0) == 0);
    CHECK(std::count(sup.begin(), sup.end(), '\n') == 10);  // header + 9 cosets

    std::string hat = phi_hat_to_csv(ph);
    CHECK(hat.rfind("beta_-2,beta_-1,beta_0,beta_1,re,im\n", 0) == 0);

    std::string vals = phi_values_to_csv(ph);
    CHECK(vals.rfind("x_-2,x_-1,x_0,x_1,re,im\n", 0) == 0);
    CHECK(std::count(vals.begin(), vals.end(), '\n') == 82);  // header + 81 samples

    WaveletBank bank = build_bank(m, solve_coefficients(m), ph);
    std::string psi = psi_values_to_csv(bank, 1);
    CHECK(psi.rfind("x_-2,x_-1,x_0,x_1,x_2,re,im\n", 0) == 0);
    CHECK(std::count(psi.begin(), psi.end(), '\n') == 244);
}

TEST_CASE("signal csv round trip") {
    FiniteSignal f;
    f.p = 3;
    f.R = 1;
    f.S = 1;
    f.samples = {{0, 0}, {1.5, -2.25}, {0, 1}, {3, 0}, {0, 0}, {0.125, 0.5}, {0, 0}, {1, 1}, {-1, -1}};
    std::string csv = signal_to_csv(f);
    CHECK(csv.rfind("# p=3 R=1 S=1\ndigits,re,im\n", 0) == 0);
    FiniteSignal back = signal_from_csv(csv);
    CHECK(back.R == 1);
    CHECK(back.S == 1);
    for (std::size_t i = 0; i < f.samples.size(); ++i) CHECK(back.samples[i] == f.samples[i]);

    CHECK_THROWS_AS(signal_from_csv("digits,re,im\n00,1,0\n"), FormatError);
}

TEST_CASE("coefficient bundles round trip") {
    CoefficientBundle c;
    c.p = 3;
    c.R = 2;
    c.S = 1;
    c.levels = 1;
    c.approx = {{1, 0}, {0, 0}, {0.5, -0.5}};
    c.details = {{{{0, 0}, {2, 0}, {0, 0}}, {{0, 1}, {0, 0}, {0, 0}}}};
    CoefficientBundle back = coefficients_from_json(coefficients_to_json(c));
    CHECK(back.approx == c.approx);
    CHECK(back.details == c.details);
}

TEST_CASE("phase tables parse both forms") {
    json j;
    j["windows"] = json::array();
    j["windows"].push_back({{"window", {0, 1}}, {"phase_exp", 2}});
    j["windows"].push_back({{"window", {0, 2}}, {"re", 0.6}, {"im", 0.8}});
    PhaseTable t = phases_from_json(j, 3);
    CHECK(t.at({0, 1}).exponent() == 2);
    CHECK(!t.at({0, 2}).exact());
}

TEST_CASE("reports serialize with named conditions") {
    Report rep;
    rep.add("example.check", true, 0.0);
    rep.add("example.fail", false, 0.25, "details here");
    json j = report_to_json(rep);
    CHECK(j["pass"] == false);
    CHECK(j["checks"].size() == 2);
    CHECK(j["checks"][1]["detail"] == "details here");
    CHECK(j["max_deviation"] == 0.25);
}
