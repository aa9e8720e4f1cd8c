#include "vilenkin/mask.hpp"

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

}  // namespace

Mask::Mask(int p, int N) : p_(p), N_(N) {
    if (N < 1) throw std::invalid_argument("Mask: N must be >= 1");
    lambda_.assign(ipow(p, N + 1), RootScalar::zero(p));
}

std::size_t Mask::index_of(const std::vector<int>& alphas) const {
    if (static_cast<int>(alphas.size()) != N_ + 1)
        throw std::invalid_argument("Mask: word must have N+1 entries");
    std::size_t k = 0;
    for (int i = N_; i >= 0; --i) k = k * static_cast<std::size_t>(p_) + static_cast<std::size_t>(alphas[static_cast<std::size_t>(i)]);
    return k;
}

std::vector<int> Mask::word_of(std::size_t k) const {
    std::vector<int> w(static_cast<std::size_t>(N_ + 1));
    for (int i = 0; i <= N_; ++i) {
        w[static_cast<std::size_t>(i)] = static_cast<int>(k % static_cast<std::size_t>(p_));
        k /= static_cast<std::size_t>(p_);
    }
    return w;
}

RootScalar Mask::value(const Character& chi) const {
    std::vector<int> w(static_cast<std::size_t>(N_ + 1));
    for (int k = -N_; k <= 0; ++k) w[static_cast<std::size_t>(k + N_)] = chi.exponent(k);
    return lambda_[index_of(w)];
}

RootScalar Mask::value_at_shift(const CharCoset& coset, int n) const {
    std::vector<int> w(static_cast<std::size_t>(N_ + 1));
    for (int k = -N_; k <= 0; ++k) {
        int src = k + n;  // exponent index of chi feeding window slot k after n shifts
        w[static_cast<std::size_t>(k + N_)] = (src < -coset.N()) ? 0 : coset.exponent(src);
    }
    return lambda_[index_of(w)];
}

bool Mask::exact() const {
    return std::all_of(lambda_.begin(), lambda_.end(), [](const RootScalar& s) { return s.exact(); });
}

std::vector<std::size_t> Mask::nonzero_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < lambda_.size(); ++k)
        if (!lambda_[k].is_zero()) idx.push_back(k);
    return idx;
}

Mask mask_from_tree(const PTree& tree, const PhaseTable* phases) {
    const int p = tree.p(), N = tree.N();
    Mask m(p, N);
    std::set<Window> wins = collect_windows(tree);
    if (phases) {
        for (const auto& [w, ph] : *phases) {
            if (!wins.count(w)) throw std::invalid_argument("mask_from_tree: phase assigned to a window not in the tree");
            if (ph.is_zero()) throw std::invalid_argument("mask_from_tree: phases must be unimodular");
        }
        Window zero(static_cast<std::size_t>(N + 1), 0);
        auto it = phases->find(zero);
        if (it != phases->end() && !(it->second == RootScalar::one(p)))
            throw std::invalid_argument("mask_from_tree: the all-zero window must keep phase 1");
    }
    for (const Window& w : wins) {
        // Window (w_0 -> ... -> w_N) root-side first lands at the exponent
        // word alpha_{-N} = w_N, ..., alpha_0 = w_0.
        std::vector<int> alphas(w.rbegin(), w.rend());
        RootScalar phase = RootScalar::one(p);
        if (phases) {
            auto it = phases->find(w);
            if (it != phases->end()) phase = it->second;
        }
        m.set(m.index_of(alphas), phase);
    }
    return m;
}

Report check_mask(const Mask& m) {
    Report rep;
    const int p = m.p(), N = m.N();

    const RootScalar& zero_word = m.at(0);
    bool t3 = !zero_word.is_zero() && zero_word == RootScalar::one(p);
    rep.add("mask.zero_word_unit", t3, t3 ? 0.0 : 1.0,
            t3 ? "" : "lambda at the all-zero word must equal 1");

    bool unimodular = true;
    double dev = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const RootScalar& v = m.at(k);
        if (v.is_zero()) continue;
        double d = std::abs(std::abs(v.to_complex()) - 1.0);
        dev = std::max(dev, d);
        if (d > 1e-12) unimodular = false;
    }
    rep.add("mask.unimodular_entries", unimodular, unimodular ? 0.0 : dev);

    bool rows_ok = true;
    std::string bad_rows;
    const std::size_t row_count = m.size() / static_cast<std::size_t>(p);
    for (std::size_t r = 0; r < row_count; ++r) {
        int nonzero = 0;
        for (int a0 = 0; a0 < p; ++a0)
            if (!m.at(r + static_cast<std::size_t>(a0) * row_count).is_zero()) ++nonzero;
        if (nonzero != 1) {
            rows_ok = false;
            std::vector<int> row(static_cast<std::size_t>(N));
            std::size_t t = r;
            for (int i = 0; i < N; ++i) {
                row[static_cast<std::size_t>(i)] = static_cast<int>(t % static_cast<std::size_t>(p));
                t /= static_cast<std::size_t>(p);
            }
            std::string s = "(";
            for (int i = 0; i < N; ++i) s += std::to_string(row[static_cast<std::size_t>(i)]) + (i + 1 < N ? "," : ")");
            bad_rows += s + "=" + std::to_string(nonzero) + " ";
        }
    }
    rep.add("mask.row_condition", rows_ok, rows_ok ? 0.0 : 1.0,
            rows_ok ? "" : "rows with nonzero count != 1: " + bad_rows);
    return rep;
}

CoefficientTable::CoefficientTable(int p, int N) : p_(p), N_(N) {
    beta_.assign(ipow(p, N + 1), RootSum::zero(p));
}

std::vector<int> CoefficientTable::digits_of(std::size_t j) const {
    std::vector<int> d(static_cast<std::size_t>(N_ + 1));
    for (int i = 0; i <= N_; ++i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(j % static_cast<std::size_t>(p_));
        j /= static_cast<std::size_t>(p_);
    }
    return d;  // d[i] = a_{-1-i}
}

GroupElement CoefficientTable::shift(const GroupParams& params, std::size_t j) const {
    std::vector<int> d = digits_of(j);
    GroupElement h = GroupElement::zero(params);
    for (int i = 0; i <= N_; ++i) h = h.with_digit(-1 - i, d[static_cast<std::size_t>(i)]);
    return h;
}

RootSum CoefficientTable::sum_norm2() const {
    RootSum acc = RootSum::zero(p_);
    for (const auto& b : beta_) acc += b.norm2();
    return acc;
}

namespace {

/// Exponent of (chi_k, A^{-1} h_j): the digit dot product pairing
/// alpha_{-N+i} with a_{-N+i-1}.
long pairing_exponent(int p, int N, std::size_t k, std::size_t j) {
    long e = 0;
    std::size_t kk = k, jj = j;
    std::vector<int> alpha(static_cast<std::size_t>(N + 1)), a(static_cast<std::size_t>(N + 1));
    for (int i = 0; i <= N; ++i) {
        alpha[static_cast<std::size_t>(i)] = static_cast<int>(kk % static_cast<std::size_t>(p));
        a[static_cast<std::size_t>(i)] = static_cast<int>(jj % static_cast<std::size_t>(p));
        kk /= static_cast<std::size_t>(p);
        jj /= static_cast<std::size_t>(p);
    }
    // alpha[i] sits at exponent index -N+i; a[t] is the digit at index -1-t.
    // A^{-1} h has digit a[t] at index -t, so slots pair as i <-> N-i.
    for (int i = 0; i <= N; ++i) e += static_cast<long>(alpha[static_cast<std::size_t>(i)]) * a[static_cast<std::size_t>(N - i)];
    return e;
}

}  // namespace

RootSum mask_from_coefficients(const CoefficientTable& beta, std::size_t k) {
    const int p = beta.p(), N = beta.N();
    RootSum acc = RootSum::zero(p);
    for (std::size_t j = 0; j < beta.size(); ++j) {
        if (beta.at(j).is_zero()) continue;
        long e = pairing_exponent(p, N, k, j);
        acc += beta.at(j) * RootSum::root(p, -e);  // conj of the pairing
    }
    return acc.scaled_by_p_power(-1);
}

CoefficientTable solve_coefficients(const Mask& m) {
    const int p = m.p(), N = m.N();
    CoefficientTable beta(p, N);
    // TODO: replace the direct p^{2(N+1)} character sum with a radix-p
    // butterfly if N ever grows past desk scale.
    for (std::size_t j = 0; j < beta.size(); ++j) {
        RootSum acc = RootSum::zero(p);
        for (std::size_t k = 0; k < m.size(); ++k) {
            const RootScalar& mk = m.at(k);
            if (mk.is_zero()) continue;
            long e = pairing_exponent(p, N, k, j);
            acc += RootSum::from_scalar(mk) * RootSum::root(p, e);
        }
        beta.set(j, acc.scaled_by_p_power(-N));
    }
    // Round trip: the inversion must reproduce the mask identically.
    for (std::size_t k = 0; k < m.size(); ++k) {
        RootSum back = mask_from_coefficients(beta, k);
        double d = back.distance(RootSum::from_scalar(m.at(k)));
        bool ok = m.exact() ? back.exactly_equal(RootSum::from_scalar(m.at(k))) : d <= 1e-12;
        if (!ok)
            throw ConsistencyError("solve_coefficients: round trip failed at index " +
                                   std::to_string(k) + " (deviation " + std::to_string(d) + ")");
    }
    return beta;
}

std::vector<Mask> wavelet_shift_masks(const Mask& m) {
    const int p = m.p(), N = m.N();
    const std::size_t row_count = m.size() / static_cast<std::size_t>(p);
    std::vector<Mask> out;
    for (int l = 1; l < p; ++l) {
        Mask ml(p, N);
        for (std::size_t r = 0; r < row_count; ++r)
            for (int a0 = 0; a0 < p; ++a0) {
                int src = ((a0 - l) % p + p) % p;
                ml.set(r + static_cast<std::size_t>(a0) * row_count,
                       m.at(r + static_cast<std::size_t>(src) * row_count));
            }
        out.push_back(ml);
    }
    // Shifted supports must be pairwise disjoint (one nonzero per row).
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            for (std::size_t k = 0; k < m.size(); ++k)
                if (!out[i].at(k).is_zero() && !out[j].at(k).is_zero())
                    throw MaskError("wavelet_shift_masks: supports of m_" + std::to_string(i + 1) +
                                    " and m_" + std::to_string(j + 1) + " overlap");
    return out;
}

}  // namespace vilenkin
