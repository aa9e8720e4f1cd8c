#include "vilenkin/wavelet.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "vilenkin/errors.hpp"

namespace vilenkin {

namespace {

std::size_t ipow(int base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
    return r;
}

std::vector<int> decode_word(std::size_t idx, int len, int p) {
    std::vector<int> w(static_cast<std::size_t>(len), 0);
    for (int i = len - 1; i >= 0; --i) {
        w[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(p));
        idx /= static_cast<std::size_t>(p);
    }
    return w;
}

std::vector<int> h_digits_of_index(std::size_t j, int s, int p) {
    std::vector<int> d(static_cast<std::size_t>(s), 0);  // d[i] = a_{-1-i}
    for (int i = 0; i < s; ++i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(j % static_cast<std::size_t>(p));
        j /= static_cast<std::size_t>(p);
    }
    return d;
}

}  // namespace

CoefficientTable wavelet_coefficients(const CoefficientTable& beta, int l) {
    const int p = beta.p();
    if (l < 0 || l >= p) throw std::invalid_argument("wavelet_coefficients: l must lie in [0, p)");
    if (l == 0) return beta;
    CoefficientTable out(p, beta.N());
    for (std::size_t j = 0; j < beta.size(); ++j) {
        int a_minus1 = beta.digits_of(j)[0];
        out.set(j, beta.at(j) * RootSum::root(p, static_cast<long>(l) * a_minus1));
    }
    return out;
}

void WaveletBank::add_wavelet(CoefficientTable beta_l, std::vector<RootSum> psi_values) {
    beta_l_.push_back(std::move(beta_l));
    psi_.push_back(std::move(psi_values));
}

std::size_t WaveletBank::value_index(const std::vector<int>& word) const {
    std::size_t idx = 0;
    for (int d : word) idx = idx * static_cast<std::size_t>(p_) + static_cast<std::size_t>(d);
    return idx;
}

RootSum WaveletBank::psi_value_of(int l, const GroupElement& x) const {
    if (l < 1 || l >= p_) throw std::invalid_argument("psi_value_of: l must lie in [1, p)");
    if (!x.in_subgroup(-N_)) return RootSum::zero(p_);
    std::vector<int> w(static_cast<std::size_t>(M_ + N_ + 1));
    for (int k = -N_; k <= M_; ++k) w[static_cast<std::size_t>(k + N_)] = x.digit(k);
    return psi_[static_cast<std::size_t>(l - 1)][value_index(w)];
}

RootSum refine_combination(const PhiTable& ph, const CoefficientTable& coeffs,
                           const std::vector<int>& fine_word) {
    const int p = ph.p(), N = ph.N(), M = ph.M();
    RootSum acc = RootSum::zero(p);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs.at(j).is_zero()) continue;
        std::vector<int> hd = coeffs.digits_of(j);
        // (A x - h) lies in G_{-N} iff the digit at -N-1 cancels.
        if (((fine_word[0] - hd[static_cast<std::size_t>(N)]) % p + p) % p != 0) continue;
        std::vector<int> yw(static_cast<std::size_t>(M + N), 0);
        for (int k = -N; k < M; ++k) {
            int xv = fine_word[static_cast<std::size_t>(k + 1 + N)];
            int hk = (k <= -1) ? hd[static_cast<std::size_t>(-1 - k)] : 0;
            yw[static_cast<std::size_t>(k + N)] = ((xv - hk) % p + p) % p;
        }
        acc += coeffs.at(j) * ph.values()[ph.value_index(yw)];
    }
    return acc;
}

WaveletBank build_bank(const Mask& m, const CoefficientTable& beta, const PhiTable& ph) {
    const int p = m.p(), N = m.N(), M = ph.M();
    if (!ph.has_values()) throw std::invalid_argument("build_bank: phi values not filled");
    std::vector<Mask> masks_l = wavelet_shift_masks(m);
    WaveletBank bank(p, N, M);
    const std::size_t fine_size = ipow(p, M + N + 1);
    for (int l = 1; l < p; ++l) {
        CoefficientTable bl = wavelet_coefficients(beta, l);
        // beta^{(l)} must reproduce m_l(chi) = m_0(chi r_0^{-l}) at every index.
        const Mask& ml = masks_l[static_cast<std::size_t>(l - 1)];
        for (std::size_t k = 0; k < ml.size(); ++k) {
            RootSum back = mask_from_coefficients(bl, k);
            RootSum want = RootSum::from_scalar(ml.at(k));
            bool ok = back.exact() && want.exact() ? back.exactly_equal(want)
                                                   : back.distance(want) <= 1e-12;
            if (!ok)
                throw ConsistencyError("build_bank: beta^{(" + std::to_string(l) +
                                       ")} does not reproduce the shifted mask at index " +
                                       std::to_string(k));
        }
        std::vector<RootSum> psi(fine_size, RootSum::zero(p));
        for (std::size_t xi = 0; xi < fine_size; ++xi)
            psi[xi] = refine_combination(ph, bl, decode_word(xi, M + N + 1, p));
        bank.add_wavelet(std::move(bl), std::move(psi));
    }
    return bank;
}

namespace {

/// Samples of f(x - h) over the grid of G_lo at resolution G_{M+1}, where f
/// is phi (kind = 0) or psi_l (kind = l).
std::vector<RootSum> shifted_fine_values(const PhiTable& ph, const WaveletBank* bank, int kind,
                                         const std::vector<int>& h_digits, int lo) {
    const int p = ph.p(), N = ph.N(), M = ph.M();
    const int len = (M + 1) - lo;
    const std::size_t size = ipow(p, len);
    std::vector<RootSum> out(size, RootSum::zero(p));
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::vector<int> x = decode_word(idx, len, p);
        bool in = true;
        for (int k = lo; k < -N && in; ++k) {
            int hk = (k >= -static_cast<int>(h_digits.size()) && k <= -1)
                         ? h_digits[static_cast<std::size_t>(-1 - k)]
                         : 0;
            in = ((x[static_cast<std::size_t>(k - lo)] - hk) % p + p) % p == 0;
        }
        if (!in) continue;
        auto shifted_digit = [&](int k) {
            int hk = (k >= -static_cast<int>(h_digits.size()) && k <= -1)
                         ? h_digits[static_cast<std::size_t>(-1 - k)]
                         : 0;
            return ((x[static_cast<std::size_t>(k - lo)] - hk) % p + p) % p;
        };
        if (kind == 0) {
            std::vector<int> w(static_cast<std::size_t>(M + N), 0);
            for (int k = -N; k < M; ++k) w[static_cast<std::size_t>(k + N)] = shifted_digit(k);
            out[idx] = ph.values()[ph.value_index(w)];
        } else {
            std::vector<int> w(static_cast<std::size_t>(M + N + 1), 0);
            for (int k = -N; k <= M; ++k) w[static_cast<std::size_t>(k + N)] = shifted_digit(k);
            out[idx] = bank->psi_tables()[static_cast<std::size_t>(kind - 1)][bank->value_index(w)];
        }
    }
    return out;
}

}  // namespace

Report verify_wavelets(const WaveletBank& bank, const PhiTable& ph, const ElementarySet& support,
                       const Mask& m, int depth, double tol) {
    Report rep;
    const int p = ph.p(), N = ph.N(), M = ph.M();
    const RootSum one = RootSum::one(p);
    const RootSum zero = RootSum::zero(p);

    // Zero mean of each wavelet.
    double mean_dev = 0.0;
    for (const auto& psi : bank.psi_tables()) {
        RootSum acc = RootSum::zero(p);
        for (const auto& v : psi) acc += v;
        mean_dev = std::max(mean_dev, acc.scaled_by_p_power(-(M + 1)).distance(zero));
    }
    rep.add("wavelet.zero_mean", mean_dev <= tol, mean_dev);

    // Gram of all shifted functions (phi and every psi_l) at G_{M+1}
    // resolution on the enlarged window.
    const std::size_t shifts = ipow(p, depth);
    const int lo = -N - depth;
    std::vector<std::vector<std::vector<RootSum>>> tables(static_cast<std::size_t>(p));
    for (int kind = 0; kind < p; ++kind) {
        tables[static_cast<std::size_t>(kind)].reserve(shifts);
        for (std::size_t j = 0; j < shifts; ++j)
            tables[static_cast<std::size_t>(kind)].push_back(
                shifted_fine_values(ph, &bank, kind, h_digits_of_index(j, depth, p), lo));
    }
    auto inner = [&](const std::vector<RootSum>& a, const std::vector<RootSum>& b) {
        RootSum acc = RootSum::zero(p);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            if (b[i].is_zero()) continue;
            acc += a[i] * b[i].conj();
        }
        return acc.scaled_by_p_power(-(M + 1));
    };

    double phi_psi_dev = 0.0, cross_dev = 0.0, shift_dev = 0.0;
    for (int l = 1; l < p; ++l) {
        for (std::size_t a = 0; a < shifts; ++a)
            for (std::size_t b = 0; b < shifts; ++b) {
                RootSum ip = inner(tables[0][a], tables[static_cast<std::size_t>(l)][b]);
                phi_psi_dev = std::max(phi_psi_dev, ip.distance(zero));
            }
        for (int k = 1; k < l; ++k)
            for (std::size_t a = 0; a < shifts; ++a)
                for (std::size_t b = 0; b < shifts; ++b) {
                    RootSum ip = inner(tables[static_cast<std::size_t>(k)][a],
                                       tables[static_cast<std::size_t>(l)][b]);
                    cross_dev = std::max(cross_dev, ip.distance(zero));
                }
        for (std::size_t a = 0; a < shifts; ++a)
            for (std::size_t b = 0; b < shifts; ++b) {
                RootSum ip = inner(tables[static_cast<std::size_t>(l)][a],
                                   tables[static_cast<std::size_t>(l)][b]);
                shift_dev = std::max(shift_dev, ip.distance(a == b ? one : zero));
            }
    }
    rep.add("wavelet.phi_psi_orthogonality", phi_psi_dev <= tol, phi_psi_dev);
    rep.add("wavelet.cross_orthogonality", cross_dev <= tol, cross_dev);
    rep.add("wavelet.shift_orthonormality", shift_dev <= tol, shift_dev);
    rep.notes.push_back("finite completeness surrogate: " + std::to_string(shifts * static_cast<std::size_t>(p)) +
                        " orthonormal functions span the depth-" + std::to_string(depth) +
                        " truncation of V_1");

    // Support bookkeeping behind (c): E A meet X_0 r_0^l consists of p^N
    // cosets of G_{-N}^perp whose prefixes tile G_0^perp.  The intersection
    // never contains the trivial coset (m_l vanishes there), so the full
    // shell conditions are not part of this check.
    for (int l = 1; l < p; ++l) {
        std::vector<CharCoset> members;
        const int len = M + N + 1;
        const std::size_t total = ipow(p, len);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::vector<int> w = decode_word(idx, len, p);
            // (i) chi A^{-1} lies in E: drop the bottom exponent.
            CharCoset down(N, std::vector<int>(w.begin() + 1, w.end()));
            if (!support.contains(down)) continue;
            // (ii) |m_l(chi)| = 1: the window with alpha_0 shifted by -l.
            std::vector<int> lam(w.begin(), w.begin() + N + 1);
            lam[static_cast<std::size_t>(N)] = ((lam[static_cast<std::size_t>(N)] - l) % p + p) % p;
            if (m.at_word(lam).is_zero()) continue;
            members.emplace_back(N, w);
        }
        ElementarySet inter = ElementarySet::from_cosets(p, N, std::move(members));
        Report sub = is_elementary(inter, ElementaryChecks::Tiling);
        bool ok = sub.all_pass() && inter.M() <= M + 1;
        rep.add("wavelet.intersection_tiling_l" + std::to_string(l), ok, ok ? 0.0 : 1.0,
                ok ? std::to_string(inter.size()) + " cosets"
                   : "intersection is not a tiling family of p^N cosets");
    }
    return rep;
}

}  // namespace vilenkin
