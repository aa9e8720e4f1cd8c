#include "vilenkin/transform.hpp"

#include <cmath>
#include <stdexcept>

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

using cplx = std::complex<double>;

/// Complex samples of phi(x - h) (kind 0) or psi_kind(x - h) on the signal
/// grid; h runs over H_0^{(s)} digit words.
std::vector<cplx> shifted_table(const PhiTable& ph, const WaveletBank& bank, int kind,
                                const std::vector<int>& h_digits, int R, int S) {
    const int p = ph.p(), N = ph.N(), M = ph.M();
    const int len = R + S;
    std::vector<cplx> out(ipow(p, len), cplx(0.0, 0.0));
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        std::vector<int> x = decode_word(idx, len, p);
        auto shifted_digit = [&](int k) {
            int xv = x[static_cast<std::size_t>(k + R)];
            int hk = (k >= -static_cast<int>(h_digits.size()) && k <= -1)
                         ? h_digits[static_cast<std::size_t>(-1 - k)]
                         : 0;
            return ((xv - hk) % p + p) % p;
        };
        bool in = true;
        for (int k = -R; k < -N && in; ++k) in = shifted_digit(k) == 0;
        if (!in) continue;
        if (kind == 0) {
            std::vector<int> w(static_cast<std::size_t>(M + N), 0);
            for (int k = -N; k < M; ++k) w[static_cast<std::size_t>(k + N)] = shifted_digit(k);
            out[idx] = ph.values()[ph.value_index(w)].to_complex();
        } else {
            std::vector<int> w(static_cast<std::size_t>(M + N + 1), 0);
            for (int k = -N; k <= M; ++k) w[static_cast<std::size_t>(k + N)] = shifted_digit(k);
            out[idx] =
                bank.psi_tables()[static_cast<std::size_t>(kind - 1)][bank.value_index(w)].to_complex();
        }
    }
    return out;
}

std::vector<int> h_digits_of_index(std::size_t j, int s, int p) {
    std::vector<int> d(static_cast<std::size_t>(s), 0);
    for (int i = 0; i < s; ++i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(j % static_cast<std::size_t>(p));
        j /= static_cast<std::size_t>(p);
    }
    return d;
}

/// Index of A g + h_j in H_0^{(s+1)} for g in H_0^{(s)}: the digit of h at -1
/// stays, deeper digits add mod p.
std::size_t dilated_shift_index(std::size_t g, int s, std::size_t j, int N, int p) {
    std::vector<int> gd = h_digits_of_index(g, s, p);       // a_{-1-t}, t < s
    std::vector<int> jd = h_digits_of_index(j, N + 1, p);   // digits of h_j
    std::vector<int> ud(static_cast<std::size_t>(s + 1), 0);
    ud[0] = jd[0];
    for (int t = 1; t <= s; ++t) {
        int add = (t < static_cast<int>(jd.size())) ? jd[static_cast<std::size_t>(t)] : 0;
        ud[static_cast<std::size_t>(t)] = (gd[static_cast<std::size_t>(t - 1)] + add) % p;
    }
    std::size_t u = 0;
    for (int t = s; t >= 0; --t) u = u * static_cast<std::size_t>(p) + static_cast<std::size_t>(ud[static_cast<std::size_t>(t)]);
    return u;
}

void check_windows(const FiniteSignal& f, const PhiTable& ph, int levels) {
    if (f.p != ph.p()) throw std::invalid_argument("transform: mismatched p");
    if (levels < 1) throw std::invalid_argument("transform: levels must be >= 1");
    if (f.R < ph.N() + levels)
        throw std::invalid_argument("transform: need R >= N + levels");
    if (f.S < ph.M() + 1) throw std::invalid_argument("transform: need S >= M + 1");
    if (f.samples.size() != f.expected_size())
        throw std::invalid_argument("transform: sample count does not match the window");
}

}  // namespace

std::size_t FiniteSignal::expected_size() const { return ipow(p, R + S); }

std::size_t FiniteSignal::index_of(const std::vector<int>& word) const {
    std::size_t idx = 0;
    for (int d : word) idx = idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(d);
    return idx;
}

std::vector<int> FiniteSignal::word_of(std::size_t idx) const { return decode_word(idx, R + S, p); }

double FiniteSignal::norm2() const {
    double acc = 0.0;
    for (const auto& v : samples) acc += std::norm(v);
    return acc * std::pow(static_cast<double>(p), -S);
}

double CoefficientBundle::energy() const {
    double acc = 0.0;
    for (const auto& v : approx) acc += std::norm(v);
    for (const auto& level : details)
        for (const auto& table : level)
            for (const auto& v : table) acc += std::norm(v);
    return acc;
}

CoefficientBundle analyze(const FiniteSignal& f, const PhiTable& ph, const WaveletBank& bank,
                          const CoefficientTable& beta, int levels) {
    check_windows(f, ph, levels);
    const int p = f.p, R = f.R, S = f.S, N = ph.N();
    const double mu = std::pow(static_cast<double>(p), -S);
    const double inv_sqrt_p = 1.0 / std::sqrt(static_cast<double>(p));

    CoefficientBundle out;
    out.p = p;
    out.R = R;
    out.S = S;
    out.levels = levels;

    // Level 0 by direct inner products.
    const std::size_t shifts0 = ipow(p, R);
    std::vector<cplx> approx(shifts0, cplx(0.0, 0.0));
    std::vector<std::vector<cplx>> details0(static_cast<std::size_t>(p - 1),
                                            std::vector<cplx>(shifts0, cplx(0.0, 0.0)));
    for (std::size_t g = 0; g < shifts0; ++g) {
        std::vector<int> hd = h_digits_of_index(g, R, p);
        for (int kind = 0; kind < p; ++kind) {
            std::vector<cplx> table = shifted_table(ph, bank, kind, hd, R, S);
            cplx acc(0.0, 0.0);
            for (std::size_t i = 0; i < table.size(); ++i) acc += f.samples[i] * std::conj(table[i]);
            acc *= mu;
            if (kind == 0)
                approx[g] = acc;
            else
                details0[static_cast<std::size_t>(kind - 1)][g] = acc;
        }
    }
    out.details.push_back(std::move(details0));

    // Deeper levels by the coefficient recursion.
    for (int d = 1; d < levels; ++d) {
        const int s = R - d;
        const std::size_t shifts = ipow(p, s);
        std::vector<cplx> next(shifts, cplx(0.0, 0.0));
        std::vector<std::vector<cplx>> det(static_cast<std::size_t>(p - 1),
                                           std::vector<cplx>(shifts, cplx(0.0, 0.0)));
        for (std::size_t g = 0; g < shifts; ++g) {
            cplx acc(0.0, 0.0);
            std::vector<cplx> dacc(static_cast<std::size_t>(p - 1), cplx(0.0, 0.0));
            for (std::size_t j = 0; j < beta.size(); ++j) {
                std::size_t u = dilated_shift_index(g, s, j, N, p);
                acc += std::conj(beta.at(j).to_complex()) * approx[u];
                for (int l = 1; l < p; ++l)
                    dacc[static_cast<std::size_t>(l - 1)] +=
                        std::conj(bank.coefficient_tables()[static_cast<std::size_t>(l - 1)]
                                      .at(j)
                                      .to_complex()) *
                        approx[u];
            }
            next[g] = inv_sqrt_p * acc;
            for (int l = 1; l < p; ++l)
                det[static_cast<std::size_t>(l - 1)][g] =
                    inv_sqrt_p * dacc[static_cast<std::size_t>(l - 1)];
        }
        out.details.push_back(std::move(det));
        approx = std::move(next);
    }
    out.approx = std::move(approx);
    return out;
}

FiniteSignal synthesize(const CoefficientBundle& coeffs, const PhiTable& ph,
                        const WaveletBank& bank, const CoefficientTable& beta) {
    const int p = coeffs.p, R = coeffs.R, S = coeffs.S, N = ph.N();
    const double inv_sqrt_p = 1.0 / std::sqrt(static_cast<double>(p));

    // Climb back to level 0.
    std::vector<cplx> approx = coeffs.approx;
    for (int d = coeffs.levels - 1; d >= 1; --d) {
        const int s = R - d;
        const std::size_t shifts = ipow(p, s);
        std::vector<cplx> up(ipow(p, s + 1), cplx(0.0, 0.0));
        for (std::size_t g = 0; g < shifts; ++g) {
            for (std::size_t j = 0; j < beta.size(); ++j) {
                std::size_t u = dilated_shift_index(g, s, j, N, p);
                cplx v = beta.at(j).to_complex() * approx[g];
                for (int l = 1; l < p; ++l)
                    v += bank.coefficient_tables()[static_cast<std::size_t>(l - 1)].at(j).to_complex() *
                         coeffs.details[static_cast<std::size_t>(d)][static_cast<std::size_t>(l - 1)][g];
                up[u] += inv_sqrt_p * v;
            }
        }
        approx = std::move(up);
    }

    FiniteSignal f;
    f.p = p;
    f.R = R;
    f.S = S;
    f.samples.assign(ipow(p, R + S), cplx(0.0, 0.0));
    const std::size_t shifts0 = ipow(p, R);
    for (std::size_t g = 0; g < shifts0; ++g) {
        std::vector<int> hd = h_digits_of_index(g, R, p);
        for (int kind = 0; kind < p; ++kind) {
            cplx c = (kind == 0) ? approx[g]
                                 : coeffs.details[0][static_cast<std::size_t>(kind - 1)][g];
            if (c == cplx(0.0, 0.0)) continue;
            std::vector<cplx> table = shifted_table(ph, bank, kind, hd, R, S);
            for (std::size_t i = 0; i < table.size(); ++i) f.samples[i] += c * table[i];
        }
    }
    return f;
}

Report energy_report(const FiniteSignal& f, const CoefficientBundle& coeffs, const PhiTable& ph,
                     const WaveletBank& bank, const CoefficientTable& beta, double tol) {
    Report rep;
    const double total = f.norm2();
    const double coef = coeffs.energy();
    FiniteSignal back = synthesize(coeffs, ph, bank, beta);
    double resid = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) resid += std::norm(f.samples[i] - back.samples[i]);
    resid *= std::pow(static_cast<double>(f.p), -f.S);

    double pythagoras = std::abs(total - coef - resid);
    rep.add("transform.energy_split", pythagoras <= tol, pythagoras,
            "signal " + std::to_string(total) + " = coefficients " + std::to_string(coef) +
                " + residual " + std::to_string(resid));
    rep.notes.push_back("completeness is finite-level: coefficients span the truncated V_1 only");
    return rep;
}

}  // namespace vilenkin
