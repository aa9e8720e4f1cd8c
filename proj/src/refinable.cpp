#include "vilenkin/refinable.hpp"

#include <algorithm>
#include <functional>
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

/// Digit words over a contiguous index range, first digit most significant.
struct Grid {
    int p, lo, len;
    std::size_t size() const { return ipow(p, len); }
    std::size_t encode(const std::vector<int>& w) const {
        std::size_t idx = 0;
        for (int d : w) idx = idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(d);
        return idx;
    }
    std::vector<int> decode(std::size_t idx) const {
        std::vector<int> w(static_cast<std::size_t>(len), 0);
        for (int i = len - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(p));
            idx /= static_cast<std::size_t>(p);
        }
        return w;
    }
};

}  // namespace

ElementarySet::ElementarySet(int p, int N, int M, std::vector<CharCoset> cosets)
    : p_(p), N_(N), M_(M), cosets_(std::move(cosets)) {
    std::sort(cosets_.begin(), cosets_.end());
    cosets_.erase(std::unique(cosets_.begin(), cosets_.end()), cosets_.end());
}

ElementarySet ElementarySet::from_cosets(int p, int N, std::vector<CharCoset> cosets) {
    int M = 0;
    for (const auto& c : cosets) M = std::max(M, c.top_index() + 1);
    return ElementarySet(p, N, M, std::move(cosets));
}

bool ElementarySet::contains(const CharCoset& c) const {
    return std::binary_search(cosets_.begin(), cosets_.end(), c);
}

ElementarySet support_set(const Mask& m, bool require_elementary) {
    const int p = m.p(), N = m.N();
    const int cap = static_cast<int>(ipow(p, N + 1)) + 2 * N + 2;
    std::vector<CharCoset> members;
    // Walk letters run root-side to leaf-side; the coset word is the reverse.
    std::vector<int> state(static_cast<std::size_t>(N), 0);
    std::vector<int> letters;
    std::function<void()> rec = [&]() {
        std::vector<int> word(letters.rbegin(), letters.rend());
        members.emplace_back(N, word);
        if (static_cast<int>(letters.size()) > cap)
            throw MaskError("support_set: window walk does not terminate (mask support is cyclic)");
        for (int c = 0; c < p; ++c) {
            if (letters.empty() && c == 0) continue;  // zero extension above the root
            std::vector<int> lam(static_cast<std::size_t>(N + 1));
            lam[0] = c;
            for (int i = 0; i < N; ++i) lam[static_cast<std::size_t>(1 + i)] = state[static_cast<std::size_t>(N - 1 - i)];
            if (m.at_word(lam).is_zero()) continue;
            std::vector<int> save = state;
            state.erase(state.begin());
            state.push_back(c);
            letters.push_back(c);
            rec();
            letters.pop_back();
            state = save;
        }
    };
    rec();
    ElementarySet e = ElementarySet::from_cosets(p, N, std::move(members));
    if (require_elementary) {
        Report rep = is_elementary(e);
        if (!rep.all_pass()) {
            std::string why;
            for (const auto& c : rep.items)
                if (!c.pass) why += c.name + " ";
            throw MaskError("support_set: walk result is not elementary (failed: " + why + ")");
        }
    }
    return e;
}

ElementarySet support_set_bruteforce(const Mask& m, int M, bool cross_check) {
    if (M < 0) throw std::invalid_argument("support_set_bruteforce: M must be >= 0");
    const int p = m.p(), N = m.N();
    Grid grid{p, -N, M + N + 1};
    std::vector<CharCoset> members;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        CharCoset coset(N, grid.decode(idx));
        bool in = true;
        for (int n = 0; n <= M + 1 && in; ++n) in = !m.value_at_shift(coset, n).is_zero();
        if (in) members.push_back(coset);
    }
    ElementarySet brute = ElementarySet::from_cosets(p, N, std::move(members));

    if (cross_check) {
        ElementarySet walked = support_set(m, false);
        std::vector<CharCoset> truncated;
        for (const auto& c : walked.cosets())
            if (c.top_index() <= M) truncated.push_back(c);
        ElementarySet expect = ElementarySet::from_cosets(p, N, std::move(truncated));
        if (M >= walked.M()) {
            if (!(brute == expect))
                throw ConsistencyError("support_set_bruteforce: disagreement with the window walk");
        } else {
            for (const auto& c : expect.cosets())
                if (!brute.contains(c))
                    throw ConsistencyError("support_set_bruteforce: missing a walked coset");
        }
    }
    return brute;
}

Report is_elementary(const ElementarySet& e, ElementaryChecks mode) {
    Report rep;
    const int p = e.p(), N = e.N(), M = e.M();
    const std::size_t want = ipow(p, N);

    bool card = e.size() == want;
    rep.add("elementary.cardinality", card, card ? 0.0 : 1.0,
            card ? "" : std::to_string(e.size()) + " cosets, expected " + std::to_string(want));

    std::set<std::vector<int>> prefixes;
    for (const auto& c : e.cosets()) {
        std::vector<int> prefix;
        for (int k = -N; k <= -1; ++k) prefix.push_back(c.exponent(k));
        prefixes.insert(prefix);
    }
    bool tiling = prefixes.size() == e.size() && card;
    rep.add("elementary.prefix_tiling", tiling, tiling ? 0.0 : 1.0,
            tiling ? "" : "coset prefixes on indices -N..-1 do not tile G_0^perp");

    if (mode == ElementaryChecks::Full) {
        bool trivial = e.contains(CharCoset::trivial(N));
        rep.add("elementary.trivial_member", trivial, trivial ? 0.0 : 1.0);

        std::string missing;
        bool shells = true;
        for (int l = 0; l <= M + N - 1; ++l) {
            bool hit = false;
            for (const auto& c : e.cosets()) hit |= (c.top_index() == -N + l);
            if (!hit) {
                shells = false;
                missing += std::to_string(l) + " ";
            }
        }
        rep.add("elementary.shells", shells, shells ? 0.0 : 1.0,
                shells ? "" : "no coset in shell level(s): " + missing);
    }
    return rep;
}

RootSum PhiTable::hat_at(const CharCoset& c) const {
    auto it = hat_.find(c);
    return it == hat_.end() ? RootSum::zero(p_) : it->second;
}

std::size_t PhiTable::value_index(const std::vector<int>& word) const {
    Grid grid{p_, -N_, M_ + N_};
    return grid.encode(word);
}

std::vector<int> PhiTable::value_word(std::size_t idx) const {
    Grid grid{p_, -N_, M_ + N_};
    return grid.decode(idx);
}

RootSum PhiTable::value_of(const GroupElement& x) const {
    if (!x.in_subgroup(-N_)) return RootSum::zero(p_);
    std::vector<int> w(static_cast<std::size_t>(M_ + N_));
    for (int k = -N_; k < M_; ++k) w[static_cast<std::size_t>(k + N_)] = x.digit(k);
    return values_[value_index(w)];
}

RootSum PhiTable::norm2() const {
    RootSum acc = RootSum::zero(p_);
    for (const auto& v : values_) acc += v.norm2();
    return acc.scaled_by_p_power(-M_);
}

PhiTable phi_hat(const Mask& m, const ElementarySet& support) {
    PhiTable ph(support.p(), support.N(), support.M());
    for (const auto& zeta : support.cosets()) {
        RootSum prod = RootSum::one(m.p());
        for (int n = 0; n <= support.M() + support.N(); ++n) {
            RootScalar f = m.value_at_shift(zeta, n);
            if (f.is_zero())
                throw ConsistencyError("phi_hat: a support coset hits a mask zero");
            prod = prod * RootSum::from_scalar(f);
        }
        ph.set_hat(zeta, prod);
    }
    return ph;
}

void phi_values(PhiTable& ph) {
    const int p = ph.p(), N = ph.N(), M = ph.M();
    Grid grid{p, -N, M + N};
    if (grid.size() > (std::size_t{1} << 24))
        throw ResourceError("phi_values: value grid of p^" + std::to_string(M + N) +
                            " points is beyond desk scale");
    std::vector<RootSum> vals(grid.size(), RootSum::zero(p));
    for (const auto& [zeta, hv] : ph.hat()) {
        RootSum weight = hv.scaled_by_p_power(-N);
        for (std::size_t idx = 0; idx < grid.size(); ++idx) {
            std::vector<int> x = grid.decode(idx);
            long e = 0;
            for (int k = -N; k < M; ++k)
                e += static_cast<long>(zeta.exponent(k)) * x[static_cast<std::size_t>(k + N)];
            vals[idx] += weight * RootSum::root(p, e);
        }
    }
    ph.set_values(std::move(vals));
}

std::map<CharCoset, RootSum> hat_from_values(const PhiTable& ph) {
    const int p = ph.p(), N = ph.N(), M = ph.M();
    Grid cgrid{p, -N, M + N};
    Grid xgrid{p, -N, M + N};
    std::map<CharCoset, RootSum> out;
    for (std::size_t ci = 0; ci < cgrid.size(); ++ci) {
        std::vector<int> zw = cgrid.decode(ci);
        RootSum acc = RootSum::zero(p);
        for (std::size_t xi = 0; xi < xgrid.size(); ++xi) {
            std::vector<int> x = xgrid.decode(xi);
            long e = 0;
            for (int i = 0; i < M + N; ++i) e += static_cast<long>(zw[static_cast<std::size_t>(i)]) * x[static_cast<std::size_t>(i)];
            acc += ph.values()[xi] * RootSum::root(p, -e);
        }
        out.emplace(CharCoset(N, zw), acc.scaled_by_p_power(-M));
    }
    return out;
}

namespace {

/// Samples of phi(x - h) on the grid of G_lo at resolution G_res, as a flat
/// array; h is given by its digits on indices -1..-s.
std::vector<RootSum> shifted_values(const PhiTable& ph, const std::vector<int>& h_digits, int lo,
                                    int res) {
    const int p = ph.p(), N = ph.N(), M = ph.M();
    Grid grid{p, lo, res - lo};
    std::vector<RootSum> out(grid.size(), RootSum::zero(p));
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        std::vector<int> x = grid.decode(idx);
        // y = x - h digit-wise; zero outside G_{-N}, constant above G_M.
        bool in = true;
        for (int k = lo; k < -N && in; ++k) {
            int hk = (k >= -static_cast<int>(h_digits.size()) && k <= -1)
                         ? h_digits[static_cast<std::size_t>(-1 - k)]
                         : 0;
            in = ((x[static_cast<std::size_t>(k - lo)] - hk) % p + p) % p == 0;
        }
        if (!in) continue;
        std::vector<int> w(static_cast<std::size_t>(M + N), 0);
        for (int k = -N; k < M; ++k) {
            int xv = (k < res) ? x[static_cast<std::size_t>(k - lo)] : 0;
            int hk = (k >= -static_cast<int>(h_digits.size()) && k <= -1)
                         ? h_digits[static_cast<std::size_t>(-1 - k)]
                         : 0;
            w[static_cast<std::size_t>(k + N)] = ((xv - hk) % p + p) % p;
        }
        out[idx] = ph.values()[ph.value_index(w)];
    }
    return out;
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

Report verify_shift_orthonormality(const PhiTable& ph, int depth, double tol) {
    Report rep;
    const int p = ph.p(), N = ph.N(), M = ph.M();

    // Fourier route: row sums of |phi-hat|^2 over the tail exponents.
    Grid prefix{p, -N, N};
    Grid tail{p, 0, M};
    double row_dev = 0.0;
    bool rows_ok = true;
    const RootSum one = RootSum::one(p);
    for (std::size_t ri = 0; ri < prefix.size(); ++ri) {
        std::vector<int> xi = prefix.decode(ri);
        RootSum acc = RootSum::zero(p);
        for (std::size_t ti = 0; ti < tail.size(); ++ti) {
            std::vector<int> eta = tail.decode(ti);
            std::vector<int> word = xi;
            word.insert(word.end(), eta.begin(), eta.end());
            acc += ph.hat_at(CharCoset(N, word)).norm2();
        }
        double d = acc.distance(one);
        row_dev = std::max(row_dev, d);
        rows_ok &= d <= tol;
    }
    rep.add("orthonormality.fourier_rows", rows_ok, row_dev,
            rows_ok ? "" : "a squared row sum differs from 1");

    // Time route: Gram matrix of the shifts on the enlarged window.
    const std::size_t shifts = ipow(p, depth);
    std::vector<std::vector<RootSum>> tables;
    tables.reserve(shifts);
    for (std::size_t j = 0; j < shifts; ++j)
        tables.push_back(shifted_values(ph, h_digits_of_index(j, depth, p), -N - depth, M));
    double gram_dev = 0.0;
    bool gram_ok = true;
    const RootSum zero = RootSum::zero(p);
    for (std::size_t a = 0; a < shifts; ++a)
        for (std::size_t b = 0; b < shifts; ++b) {
            RootSum acc = RootSum::zero(p);
            for (std::size_t i = 0; i < tables[a].size(); ++i) {
                const RootSum& x = tables[a][i];
                if (x.is_zero()) continue;
                const RootSum& y = tables[b][i];
                if (y.is_zero()) continue;
                acc += x * y.conj();
            }
            acc = acc.scaled_by_p_power(-M);
            double d = acc.distance(a == b ? one : zero);
            gram_dev = std::max(gram_dev, d);
            gram_ok &= d <= tol;
        }
    rep.add("orthonormality.gram_identity", gram_ok, gram_dev,
            gram_ok ? "" : "the shift Gram matrix is not the identity");

    if (rows_ok != gram_ok)
        rep.add("orthonormality.route_agreement", false, 1.0,
                "Fourier row sums and time-side Gram disagree");
    return rep;
}

Report verify_refinement(const PhiTable& ph, const Mask& m, const CoefficientTable& beta,
                         double tol) {
    Report rep;
    const int p = ph.p(), N = ph.N(), M = ph.M();

    // (a) hat factorization on every coset of G_{-N}^perp inside G_{M+1}^perp.
    Grid cgrid{p, -N, M + N + 1};
    double fac_dev = 0.0;
    for (std::size_t ci = 0; ci < cgrid.size(); ++ci) {
        CharCoset chi(N, cgrid.decode(ci));
        RootSum lhs = (chi.top_index() < M) ? ph.hat_at(chi) : RootSum::zero(p);
        CharCoset down = chi.shift_down();
        RootSum rhs = RootSum::from_scalar(m.value_at_shift(chi, 0)) *
                      ((down.top_index() < M) ? ph.hat_at(down) : RootSum::zero(p));
        fac_dev = std::max(fac_dev, lhs.distance(rhs));
    }
    rep.add("refinement.fourier_factorization", fac_dev <= tol, fac_dev);

    // (b) the mask product vanishes on the outer shell G_{M+1}^perp \ G_M^perp.
    double shell_dev = 0.0;
    for (std::size_t ci = 0; ci < cgrid.size(); ++ci) {
        CharCoset chi(N, cgrid.decode(ci));
        if (chi.top_index() != M) continue;
        RootSum prod = RootSum::one(p);
        for (int n = 0; n <= M + N; ++n) prod = prod * RootSum::from_scalar(m.value_at_shift(chi, n));
        shell_dev = std::max(shell_dev, prod.distance(RootSum::zero(p)));
    }
    rep.add("refinement.shell_vanishing", shell_dev <= tol, shell_dev);

    // (c) time side on the G_{M+1}-resolution grid of G_{-N}.
    Grid fine{p, -N, M + N + 1};
    double time_dev = 0.0;
    for (std::size_t xi = 0; xi < fine.size(); ++xi) {
        std::vector<int> x = fine.decode(xi);
        std::vector<int> w(x.begin(), x.end() - 1);
        RootSum lhs = ph.values()[ph.value_index(w)];
        RootSum rhs = RootSum::zero(p);
        for (std::size_t j = 0; j < beta.size(); ++j) {
            if (beta.at(j).is_zero()) continue;
            std::vector<int> hd = beta.digits_of(j);  // digits a_{-1}..a_{-N-1}
            // A x has digit x_{k+1} at index k; h_j contributes on -1..-N-1.
            if (((x[0] - hd[static_cast<std::size_t>(N)]) % p + p) % p != 0) continue;
            std::vector<int> yw(static_cast<std::size_t>(M + N), 0);
            for (int k = -N; k < M; ++k) {
                int xv = x[static_cast<std::size_t>(k + 1 + N)];
                int hk = (k <= -1) ? hd[static_cast<std::size_t>(-1 - k)] : 0;
                yw[static_cast<std::size_t>(k + N)] = ((xv - hk) % p + p) % p;
            }
            rhs += beta.at(j) * ph.values()[ph.value_index(yw)];
        }
        time_dev = std::max(time_dev, lhs.distance(rhs));
    }
    rep.add("refinement.time_domain", time_dev <= tol, time_dev);
    return rep;
}

}  // namespace vilenkin
