// Acceptance suite: one timed pass/fail line per criterion.  Exits nonzero if
// any criterion fails its check or its time budget.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "vilenkin/errors.hpp"
#include "vilenkin/io.hpp"

using namespace vilenkin;
namespace fs = std::filesystem;
using cplx = std::complex<double>;

namespace {

struct Outcome {
    bool pass = true;
    double deviation = 0.0;
    std::string note;
};

int g_failures = 0;

void criterion(int id, const std::string& desc, double limit_ms,
               const std::function<Outcome()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = fn();
    } catch (const std::exception& e) {
        out.pass = false;
        out.note = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    bool in_time = ms <= limit_ms;
    bool pass = out.pass && in_time;
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %2d: %s (deviation %.3g, %.3f ms / limit %.0f ms)%s%s\n",
                pass ? "PASS" : "FAIL", id, desc.c_str(), out.deviation, ms, limit_ms,
                out.note.empty() ? "" : " — ", out.note.c_str());
    std::fflush(stdout);
}

struct Pipeline {
    Mask mask;
    ElementarySet support;
    PhiTable phi;
    CoefficientTable beta;

    static Pipeline from_tree(const PTree& t) {
        Mask m = mask_from_tree(t);
        ElementarySet e = support_set(m);
        PhiTable ph = phi_hat(m, e);
        phi_values(ph);
        CoefficientTable b = solve_coefficients(m);
        return Pipeline{std::move(m), std::move(e), std::move(ph), std::move(b)};
    }
};

std::vector<PTree> fleet() {
    std::vector<PTree> trees;
    for (auto [p, N] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}})
        for (auto& t : enumerate_nvalid(p, N)) trees.push_back(std::move(t));
    trees.push_back(fixtures::worked_tree_3_2());
    trees.push_back(build_nvalid(3, 2, BuildStrategy::DeBruijnPath));
    for (std::uint64_t seed : {1, 2, 3})
        trees.push_back(build_nvalid(3, 2, BuildStrategy::GreedyBranch, seed));
    return trees;
}

/// Exact Fourier-row sums of |phi-hat|^2: every row must equal 1.
bool row_sums_unit(const Pipeline& pipe) {
    const int p = pipe.mask.p(), N = pipe.mask.N(), M = pipe.support.M();
    std::size_t rows = 1, tails = 1;
    for (int i = 0; i < N; ++i) rows *= static_cast<std::size_t>(p);
    for (int i = 0; i < M; ++i) tails *= static_cast<std::size_t>(p);
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<int> word(static_cast<std::size_t>(N + M), 0);
        std::size_t t = r;
        for (int i = N - 1; i >= 0; --i) {
            word[static_cast<std::size_t>(i)] = static_cast<int>(t % static_cast<std::size_t>(p));
            t /= static_cast<std::size_t>(p);
        }
        RootSum acc = RootSum::zero(p);
        for (std::size_t q = 0; q < tails; ++q) {
            std::size_t u = q;
            for (int i = M - 1; i >= 0; --i) {
                word[static_cast<std::size_t>(N + i)] = static_cast<int>(u % static_cast<std::size_t>(p));
                u /= static_cast<std::size_t>(p);
            }
            acc += pipe.phi.hat_at(CharCoset(N, word)).norm2();
        }
        if (!acc.exactly_equal(RootSum::one(p))) return false;
    }
    return true;
}

FiniteSignal random_in_span(const Pipeline& pipe, int R, int S, std::mt19937_64& rng) {
    const int p = pipe.mask.p();
    GroupParams P(p);
    std::normal_distribution<double> gauss;
    FiniteSignal f;
    f.p = p;
    f.R = R;
    f.S = S;
    f.samples.assign(f.expected_size(), cplx(0, 0));
    std::size_t shifts = 1;
    for (int i = 0; i < R + 1; ++i) shifts *= static_cast<std::size_t>(p);
    std::vector<cplx> coeff(shifts);
    for (auto& c : coeff) c = cplx(gauss(rng), gauss(rng));
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        GroupElement x = GroupElement::from_word(P, -R, f.word_of(i));
        GroupElement ax = x.dilate();
        cplx acc(0, 0);
        for (std::size_t j = 0; j < shifts; ++j) {
            GroupElement h = GroupElement::zero(P);
            std::size_t t = j;
            for (int d = 1; d <= R + 1; ++d) {
                h = h.with_digit(-d, static_cast<int>(t % static_cast<std::size_t>(p)));
                t /= static_cast<std::size_t>(p);
            }
            cplx v = pipe.phi.value_of(ax.sub(h)).to_complex();
            if (v != cplx(0, 0)) acc += coeff[j] * v;
        }
        f.samples[i] = acc;
    }
    return f;
}

/// Random unimodular phases on every window except the all-zero one.
PhaseTable random_phases(const PTree& t, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    PhaseTable phases;
    for (const Window& w : allowed_windows(t)) {
        bool zero = true;
        for (int c : w) zero &= c == 0;
        if (zero) continue;
        phases.insert_or_assign(w, RootScalar::unimodular(t.p(), std::polar(1.0, angle(rng))));
    }
    return phases;
}

Pipeline phased_pipeline(const PTree& t, std::mt19937_64& rng) {
    PhaseTable phases = random_phases(t, rng);
    Mask m = mask_from_tree(t, &phases);
    ElementarySet e = support_set(m);
    PhiTable ph = phi_hat(m, e);
    phi_values(ph);
    CoefficientTable b = solve_coefficients(m);
    return Pipeline{std::move(m), std::move(e), std::move(ph), std::move(b)};
}

int run_cli(const std::string& args) {
    fs::path null = "/dev/null";
    std::string cmd = std::string(VILENKIN_CLI_PATH) + " " + args + " >" + null.string() + " 2>" +
                      null.string();
    return WEXITSTATUS(std::system(cmd.c_str()));
}

}  // namespace

int main() {
    // 1. The worked p=3, N=2 fixture.
    PTree worked = fixtures::worked_tree_3_2();
    criterion(1, "worked p=3 N=2 tree validates: height 6, nine windows", 1.0, [&] {
        Outcome out;
        ValidationReport rep = validate_nvalid(worked);
        out.pass = rep.valid && rep.height == 6 && allowed_windows(worked).size() == 9;
        return out;
    });

    // 2. Support-set oracle equivalence and the frozen worked p=3 N=2 support.
    criterion(2, "window walk equals brute-force intersection; worked p=3 N=2 set is (2,2)-elementary",
              1000.0, [&] {
                  Outcome out;
                  Mask m = mask_from_tree(worked);
                  ElementarySet e = support_set(m);
                  std::vector<CharCoset> frozen = {
                      CharCoset(2, {}),        CharCoset(2, {2}),          CharCoset(2, {0, 2}),
                      CharCoset(2, {1, 2}),    CharCoset(2, {2, 2}),       CharCoset(2, {1, 0, 2}),
                      CharCoset(2, {0, 1, 2}), CharCoset(2, {1, 1, 0, 2}), CharCoset(2, {2, 1, 0, 2}),
                  };
                  out.pass = e.M() == 2 && e.size() == 9;
                  for (const auto& c : frozen) out.pass &= e.contains(c);
                  out.pass &= is_elementary(e).all_pass();
                  out.pass &= support_set_bruteforce(m, 2) == e;
                  for (auto [p, N] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}})
                      for (const auto& t : enumerate_nvalid(p, N)) {
                          Mask mt = mask_from_tree(t);
                          ElementarySet et = support_set(mt);
                          out.pass &= support_set_bruteforce(mt, et.M()) == et;
                      }
                  return out;
              });

    // 3. Orthonormality: exact unit row sums everywhere, exact identity Gram
    //    in root-of-unity mode, <= 1e-10 under arbitrary unimodular phases.
    criterion(3, "unit row sums for every pipeline mask; 27-shift Gram is the identity", 5000.0, [&] {
        Outcome out;
        for (const auto& t : fleet()) out.pass &= row_sums_unit(Pipeline::from_tree(t));
        for (const PTree& t : {worked, fixtures::haar_tree(3)}) {
            Pipeline pipe = Pipeline::from_tree(t);
            Report rep = verify_shift_orthonormality(pipe.phi, 3);
            out.pass &= rep.all_pass();
            out.deviation = std::max(out.deviation, rep.max_deviation());
        }
        out.pass &= out.deviation == 0.0;
        std::mt19937_64 rng(17);
        Report phased = verify_shift_orthonormality(phased_pipeline(worked, rng).phi, 3, 1e-10);
        out.pass &= phased.all_pass();
        return out;
    });

    // 4. Refinement identities, exact.
    criterion(4, "hat factorization on G_{M+1}^perp and shell vanishing, exact", 5000.0, [&] {
        Outcome out;
        for (const PTree& t : {worked, fixtures::haar_tree(3), fixtures::haar_tree(2)}) {
            Pipeline pipe = Pipeline::from_tree(t);
            Report rep = verify_refinement(pipe.phi, pipe.mask, pipe.beta);
            out.pass &= rep.all_pass();
            out.deviation = std::max(out.deviation, rep.max_deviation());
        }
        out.pass &= out.deviation == 0.0;
        return out;
    });

    // 5. Coefficient solve.
    criterion(5, "coefficient round trip exact, sum |beta|^2 = p, Haar closed form", 5000.0, [&] {
        Outcome out;
        for (const auto& t : fleet()) {
            Pipeline pipe = Pipeline::from_tree(t);  // solve_coefficients re-checks the round trip
            out.pass &= pipe.beta.sum_norm2().exactly_equal(
                RootSum::integer(pipe.mask.p(), pipe.mask.p()));
        }
        CoefficientTable haar = solve_coefficients(mask_from_tree(fixtures::haar_tree(3)));
        for (std::size_t j = 0; j < haar.size(); ++j) {
            bool shallow = haar.digits_of(j)[1] == 0;
            out.pass &= shallow ? haar.at(j).exactly_equal(RootSum::one(3)) : haar.at(j).is_zero();
        }
        return out;
    });

    // 6. The orthonormal-basis checks for W_0: exact for root-of-unity
    //    phases, <= 1e-10 in complex mode.
    criterion(6, "wavelet bank orthonormality and support intersections, exact", 30000.0, [&] {
        Outcome out;
        for (const PTree& t : {fixtures::haar_tree(3), worked}) {
            Pipeline pipe = Pipeline::from_tree(t);
            WaveletBank bank = build_bank(pipe.mask, pipe.beta, pipe.phi);
            Report rep = verify_wavelets(bank, pipe.phi, pipe.support, pipe.mask, 2);
            out.pass &= rep.all_pass();
            out.deviation = std::max(out.deviation, rep.max_deviation());
        }
        out.pass &= out.deviation == 0.0;
        std::mt19937_64 rng(19);
        Pipeline phased = phased_pipeline(worked, rng);
        WaveletBank bank = build_bank(phased.mask, phased.beta, phased.phi);
        Report rep = verify_wavelets(bank, phased.phi, phased.support, phased.mask, 2, 1e-10);
        out.pass &= rep.all_pass();
        return out;
    });

    // 7. Tree reconstruction from the window support.
    criterion(7, "tree_from_support inverts allowed_windows on every enumerated tree", 5000.0, [&] {
        Outcome out;
        for (auto [p, N] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}})
            for (const auto& t : enumerate_nvalid(p, N))
                out.pass &= tree_from_support(allowed_windows(t), p, N) == t;
        return out;
    });

    // 8. The N = 1 support bound.
    criterion(8, "1-valid trees over p in {3,5}: M = H - 2 <= p - 2", 5000.0, [&] {
        Outcome out;
        for (int p : {3, 5})
            for (const auto& t : enumerate_nvalid(p, 1)) {
                ElementarySet e = support_set(mask_from_tree(t));
                out.pass &= e.M() == t.height() - 2;
                out.pass &= e.M() <= p - 2;
            }
        return out;
    });

    // 9. Transform: perfect reconstruction, Parseval, idempotent projection.
    criterion(9, "perfect reconstruction of 100 random in-span signals per bank", 60000.0, [&] {
        Outcome out;
        std::mt19937_64 rng(2024);
        for (const PTree& t : {fixtures::haar_tree(2), fixtures::haar_tree(3), worked}) {
            Pipeline pipe = Pipeline::from_tree(t);
            WaveletBank bank = build_bank(pipe.mask, pipe.beta, pipe.phi);
            const int R = pipe.mask.N() + 1, S = pipe.support.M() + 1;
            for (int trial = 0; trial < 100; ++trial) {
                FiniteSignal f = random_in_span(pipe, R, S, rng);
                CoefficientBundle c = analyze(f, pipe.phi, bank, pipe.beta, 1);
                FiniteSignal back = synthesize(c, pipe.phi, bank, pipe.beta);
                double dev = 0.0;
                for (std::size_t i = 0; i < f.samples.size(); ++i)
                    dev = std::max(dev, std::abs(f.samples[i] - back.samples[i]));
                out.deviation = std::max(out.deviation, dev);
                out.pass &= dev <= 1e-10;
                out.pass &= std::abs(c.energy() - f.norm2()) <= 1e-9 * std::max(1.0, f.norm2());
            }
            // Idempotent projection of an off-span signal.
            FiniteSignal noise;
            noise.p = pipe.mask.p();
            noise.R = R;
            noise.S = S;
            noise.samples.assign(noise.expected_size(), cplx(0, 0));
            std::normal_distribution<double> gauss;
            for (auto& v : noise.samples) v = cplx(gauss(rng), gauss(rng));
            CoefficientBundle c1 = analyze(noise, pipe.phi, bank, pipe.beta, 1);
            FiniteSignal p1 = synthesize(c1, pipe.phi, bank, pipe.beta);
            CoefficientBundle c2 = analyze(p1, pipe.phi, bank, pipe.beta, 1);
            FiniteSignal p2 = synthesize(c2, pipe.phi, bank, pipe.beta);
            double dev = 0.0;
            for (std::size_t i = 0; i < p1.samples.size(); ++i)
                dev = std::max(dev, std::abs(p1.samples[i] - p2.samples[i]));
            out.pass &= dev <= 1e-10;
            out.deviation = std::max(out.deviation, dev);
        }
        return out;
    });

    // 10. Negative control: one duplicated window must be caught.
    criterion(10, "duplicated-window tree fails row sums, Gram, and exits 2 from the CLI", 30000.0,
              [&] {
                  Outcome out;
                  PTree broken = fixtures::duplicated_window_tree();
                  Mask m = mask_from_tree(broken);
                  out.pass &= !check_mask(m).all_pass();
                  ElementarySet e = support_set_bruteforce(m, 2);
                  PhiTable ph = phi_hat(m, e);
                  phi_values(ph);
                  Report rep = verify_shift_orthonormality(ph, 2);
                  const CheckItem* rows = rep.find("orthonormality.fourier_rows");
                  const CheckItem* gram = rep.find("orthonormality.gram_identity");
                  out.pass &= rows && !rows->pass;
                  out.pass &= gram && !gram->pass;

                  fs::path dir = fs::temp_directory_path() / "vilenkin-acceptance";
                  fs::create_directories(dir);
                  std::ofstream(dir / "broken.json") << tree_to_json(broken).dump(2);
                  int rc_derive = run_cli("mra derive " + (dir / "broken.json").string() + " -o " +
                                          (dir / "broken-bundle.json").string());
                  int rc_verify = run_cli("mra verify " + (dir / "broken-bundle.json").string());
                  out.pass &= rc_derive == 0 && rc_verify == 2;
                  if (rc_verify != 2) out.note = "CLI exit was " + std::to_string(rc_verify);
                  return out;
              });

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "OK" : "FAILED", g_failures);
    return g_failures == 0 ? 0 : 1;
}
